#pragma once

#include "fairhms/types.hpp"

namespace fairhms {

/// One linear piece f(x) = a + b*x of an upper envelope, valid on [lo, hi].
struct EnvelopePiece {
    double lo = 0.0, hi = 0.0;
    double a = 0.0, b = 0.0;
    int owner = -1;
};

/// Upper envelope of the 2D score lines f_lambda(p) = p[2] + (p[1]-p[2])*lambda
/// over lambda in [0,1]. Convex piecewise-linear; adjacent pieces agree at
/// their shared breakpoint.
struct Envelope {
    std::vector<EnvelopePiece> pieces;

    double value_at(double x) const;
    int piece_at(double x) const;
};

Envelope upper_envelope(const Dataset& ds);
Envelope upper_envelope(const Dataset& ds, const std::vector<int>& subset);

/// lambda-range on which point p scores at least tau times the envelope.
/// A linear function minus a convex one is concave, so the region is a
/// single (possibly empty) closed interval.
struct TauInterval {
    int point = -1;
    double lo = 0.0, hi = 0.0;
    bool empty = true;
};

TauInterval interval_for(int p, double tau, const Envelope& env, const Dataset& ds);

}  // namespace fairhms
