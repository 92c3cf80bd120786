#pragma once

#include <cstdint>

#include "fairhms/types.hpp"

namespace fairhms {

enum class Norm { l1, l2 };

/// Nonnegative utility vector, unit under the chosen norm. Happiness ratios
/// are invariant to positive rescaling of the vector, so the two norms are
/// interchangeable for evaluation; l1 is the natural parameterization in 2D
/// and l2 matches vectors sampled on the unit sphere.
struct UtilityVector {
    std::vector<double> weights;
    Norm norm = Norm::l2;
};

/// Rescales nonnegative weights to unit norm. Throws if any weight is
/// negative or all weights are zero.
UtilityVector make_utility(std::vector<double> weights, Norm norm);

/// The 2D l1 utility (lambda, 1-lambda).
UtilityVector utility_2d(double lambda);

/// Finite sample of the nonnegative unit sphere used to approximate the
/// space of all utility vectors.
struct UtilityNet {
    std::vector<UtilityVector> vectors;
    double nominal_delta = 0.0;
    uint64_t seed = 0;

    int size() const { return static_cast<int>(vectors.size()); }
};

/// Inner product of u and p.
double score(const UtilityVector& u, const Point& p);

/// hr(u, S) = max_{p in S} f_u(p) / max_{p in D} f_u(p), in [0,1].
/// Throws on empty S and on an all-zero denominator (degenerate utility).
double hr(const UtilityVector& u, const std::vector<int>& S, const Dataset& ds);

/// min_{u in net} hr(u, S).
double mhr_on_net(const std::vector<int>& S, const Dataset& ds, const UtilityNet& net);

/// Truncated MHR: (1/m) * sum_u min{hr(u,S), tau}, a monotone submodular
/// surrogate for the (non-submodular) minimum.
double mhr_truncated(const std::vector<int>& S, const Dataset& ds, const UtilityNet& net,
                     double tau);

/// mhr_truncated(S + {p}) - mhr_truncated(S); nonnegative by monotonicity.
double marginal_gain(int p, const std::vector<int>& S, const Dataset& ds, const UtilityNet& net,
                     double tau);

/// m vectors uniform on the nonnegative orthant of the unit sphere
/// (absolute values of iid standard normals, l2-normalized); deterministic
/// per seed.
UtilityNet sample_net(int d, int m, uint64_t seed);

/// Sample count m = ceil(8 * delta^{1-d} * ln(1/delta)) for which a random
/// net covers the sphere at angular radius delta with probability >= 1/2.
/// Throws when the count overflows practical limits instead of clamping.
long long net_size_for(double delta, int d);

/// Samples `trials` random directions and checks each has a net vector
/// within angular distance delta (dot product >= cos delta).
bool verify_net_coverage(const UtilityNet& net, double delta, int trials, uint64_t seed);

/// Exact minimum happiness ratio of S over ds in two dimensions: the
/// minimum of hr over u=(1,0), u=(0,1) and every utility equalizing a pair
/// of points in S, which are the only places the minimum can occur.
double mhr_exact_2d(const std::vector<int>& S, const Dataset& ds);

/// Net persistence for experiment replay: m rows of d comma-separated reals.
void save_net_csv(const UtilityNet& net, const std::string& path);
UtilityNet load_net_csv(const std::string& path, Norm norm = Norm::l2);

}  // namespace fairhms
