#include "fairhms/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fairhms {

namespace {

struct Line {
    double a, b;
    int owner;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double Envelope::value_at(double x) const {
    const EnvelopePiece& p = pieces[piece_at(x)];
    return p.a + p.b * x;
}

int Envelope::piece_at(double x) const {
    // First piece whose right end reaches x.
    int lo = 0, hi = static_cast<int>(pieces.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (pieces[mid].hi < x)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

static Envelope build_envelope(std::vector<Line> lines) {
    if (lines.empty()) throw std::invalid_argument("envelope: no lines");
    // Sort by slope; among equal slopes only the highest intercept matters
    // (ties keep the smallest owner).
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
        if (x.b != y.b) return x.b < y.b;
        if (x.a != y.a) return x.a > y.a;
        return x.owner < y.owner;
    });
    std::vector<Line> dedup;
    for (const Line& l : lines)
        if (dedup.empty() || dedup.back().b != l.b) dedup.push_back(l);

    // Convex-hull sweep: hull[i] is on top starting at from[i].
    std::vector<Line> hull;
    std::vector<double> from;
    for (const Line& l : dedup) {
        double x = -kInf;
        while (!hull.empty()) {
            const Line& t = hull.back();
            x = (t.a - l.a) / (l.b - t.b);
            if (x <= from.back()) {
                hull.pop_back();
                from.pop_back();
            } else {
                break;
            }
        }
        from.push_back(hull.empty() ? -kInf : x);
        hull.push_back(l);
    }

    Envelope env;
    for (size_t i = 0; i < hull.size(); ++i) {
        const double lo = std::max(from[i], 0.0);
        const double hi = std::min(i + 1 < hull.size() ? from[i + 1] : kInf, 1.0);
        if (lo < hi) env.pieces.push_back({lo, hi, hull[i].a, hull[i].b, hull[i].owner});
    }
    if (env.pieces.empty()) throw std::logic_error("envelope: empty after clipping");
    env.pieces.front().lo = 0.0;
    env.pieces.back().hi = 1.0;
    return env;
}

Envelope upper_envelope(const Dataset& ds) {
    std::vector<Line> lines;
    lines.reserve(ds.size());
    for (int i = 0; i < ds.size(); ++i) {
        const auto& c = ds.point(i).coords;
        lines.push_back({c[1], c[0] - c[1], i});
    }
    return build_envelope(std::move(lines));
}

Envelope upper_envelope(const Dataset& ds, const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("envelope: empty subset");
    std::vector<Line> lines;
    lines.reserve(subset.size());
    for (int i : subset) {
        const auto& c = ds.point(i).coords;
        lines.push_back({c[1], c[0] - c[1], i});
    }
    return build_envelope(std::move(lines));
}

TauInterval interval_for(int p, double tau, const Envelope& env, const Dataset& ds) {
    if (!(tau > 0.0 && tau <= 1.0))
        throw std::invalid_argument("interval_for: tau must lie in (0,1]");
    const auto& c = ds.point(p).coords;
    const double pa = c[1], pb = c[0] - c[1];

    // f_p(x) - tau*env(x) is concave piecewise-linear, so the nonnegative
    // region found piece by piece merges into one interval.
    double lo = kInf, hi = -kInf;
    for (const EnvelopePiece& piece : env.pieces) {
        const double g0 = pa - tau * piece.a;
        const double g1 = pb - tau * piece.b;
        double l = piece.lo, r = piece.hi;
        if (std::fabs(g1) < 1e-15) {
            if (g0 < 0.0) continue;
        } else {
            const double root = -g0 / g1;
            if (g1 > 0.0)
                l = std::max(l, root);
            else
                r = std::min(r, root);
            if (l > r) continue;
        }
        lo = std::min(lo, l);
        hi = std::max(hi, r);
    }
    TauInterval out;
    out.point = p;
    if (lo <= hi) {
        out.lo = std::clamp(lo, 0.0, 1.0);
        out.hi = std::clamp(hi, 0.0, 1.0);
        out.empty = false;
    }
    return out;
}

}  // namespace fairhms
