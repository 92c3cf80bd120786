#include "fairhms/utility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "fairhms/envelope.hpp"
#include "fairhms/rng.hpp"

namespace fairhms {

namespace {

constexpr double kNormTol = 1e-9;

double norm_value(const std::vector<double>& w, Norm norm) {
    double s = 0.0;
    if (norm == Norm::l1) {
        for (double x : w) s += x;
    } else {
        for (double x : w) s += x * x;
        s = std::sqrt(s);
    }
    return s;
}

}  // namespace

UtilityVector make_utility(std::vector<double> weights, Norm norm) {
    if (weights.empty()) throw std::invalid_argument("utility: empty weight vector");
    for (double w : weights)
        if (w < 0.0) throw std::invalid_argument("utility: weights must be nonnegative");
    const double n = norm_value(weights, norm);
    if (n <= 0.0) throw std::invalid_argument("utility: all-zero weight vector");
    if (std::fabs(n - 1.0) > kNormTol)
        for (double& w : weights) w /= n;
    return UtilityVector{std::move(weights), norm};
}

UtilityVector utility_2d(double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("utility: lambda must lie in [0,1]");
    return UtilityVector{{lambda, 1.0 - lambda}, Norm::l1};
}

double score(const UtilityVector& u, const Point& p) {
    if (u.weights.size() != p.coords.size())
        throw std::invalid_argument("score: dimension mismatch");
    double s = 0.0;
    for (size_t i = 0; i < u.weights.size(); ++i) s += u.weights[i] * p.coords[i];
    return s;
}

double hr(const UtilityVector& u, const std::vector<int>& S, const Dataset& ds) {
    if (S.empty()) throw std::invalid_argument("hr: empty subset");
    double best_s = 0.0;
    for (int i : S) best_s = std::max(best_s, score(u, ds.point(i)));
    double best_d = 0.0;
    for (const Point& p : ds.points()) best_d = std::max(best_d, score(u, p));
    if (best_d <= 0.0)
        throw std::runtime_error("hr: degenerate utility, every point scores zero");
    return best_s / best_d;
}

double mhr_on_net(const std::vector<int>& S, const Dataset& ds, const UtilityNet& net) {
    if (net.vectors.empty()) throw std::invalid_argument("mhr_on_net: empty net");
    double worst = 1.0;
    for (const UtilityVector& u : net.vectors) worst = std::min(worst, hr(u, S, ds));
    return worst;
}

double mhr_truncated(const std::vector<int>& S, const Dataset& ds, const UtilityNet& net,
                     double tau) {
    if (net.vectors.empty()) throw std::invalid_argument("mhr_truncated: empty net");
    if (!(tau > 0.0 && tau <= 1.0))
        throw std::invalid_argument("mhr_truncated: tau must lie in (0,1]");
    double sum = 0.0;
    for (const UtilityVector& u : net.vectors) sum += std::min(hr(u, S, ds), tau);
    return sum / net.size();
}

double marginal_gain(int p, const std::vector<int>& S, const Dataset& ds, const UtilityNet& net,
                     double tau) {
    std::vector<int> extended = S;
    extended.push_back(p);
    const double base = S.empty() ? 0.0 : mhr_truncated(S, ds, net, tau);
    return mhr_truncated(extended, ds, net, tau) - base;
}

UtilityNet sample_net(int d, int m, uint64_t seed) {
    if (d < 2) throw std::invalid_argument("sample_net: d must be >= 2");
    if (m < 1) throw std::invalid_argument("sample_net: m must be >= 1");
    Rng rng(seed);
    UtilityNet net;
    net.seed = seed;
    net.vectors.reserve(m);
    while (static_cast<int>(net.vectors.size()) < m) {
        std::vector<double> w(d);
        double norm2 = 0.0;
        for (double& x : w) {
            x = std::fabs(rng.normal());
            norm2 += x * x;
        }
        if (norm2 <= 0.0) continue;
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : w) x *= inv;
        net.vectors.push_back(UtilityVector{std::move(w), Norm::l2});
    }
    return net;
}

long long net_size_for(double delta, int d) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("net_size_for: delta must lie in (0,1)");
    if (d < 2) throw std::invalid_argument("net_size_for: d must be >= 2");
    const double m = 8.0 * std::pow(delta, 1.0 - d) * std::log(1.0 / delta);
    if (!(m < 1e9))
        throw std::runtime_error("net_size_for: required sample count exceeds 1e9 for delta=" +
                                 std::to_string(delta) + ", d=" + std::to_string(d));
    return static_cast<long long>(std::ceil(m));
}

bool verify_net_coverage(const UtilityNet& net, double delta, int trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("verify_net_coverage: trials must be >= 1");
    if (net.vectors.empty()) return false;
    const int d = static_cast<int>(net.vectors.front().weights.size());
    const double threshold = std::cos(delta) - 1e-12;
    Rng rng(seed);
    std::vector<double> u(d);
    for (int t = 0; t < trials; ++t) {
        double norm2 = 0.0;
        for (double& x : u) {
            x = std::fabs(rng.normal());
            norm2 += x * x;
        }
        if (norm2 <= 0.0) {
            --t;
            continue;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : u) x *= inv;
        bool covered = false;
        for (const UtilityVector& v : net.vectors) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += u[i] * v.weights[i];
            if (dot >= threshold) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

double mhr_exact_2d(const std::vector<int>& S, const Dataset& ds) {
    if (ds.dim() != 2) throw std::invalid_argument("mhr_exact_2d: dataset must be 2D");
    if (S.empty()) throw std::invalid_argument("mhr_exact_2d: empty subset");

    const Envelope env_d = upper_envelope(ds);
    const Envelope env_s = upper_envelope(ds, S);

    // The ratio env_s / env_d is piecewise monotone between vertices of
    // either envelope, and an interior minimum can only sit on a vertex of
    // the numerator; candidates from both envelopes plus the endpoints are
    // enough (and then some).
    std::set<double> lambdas{0.0, 1.0};
    for (const EnvelopePiece& p : env_s.pieces) {
        lambdas.insert(p.lo);
        lambdas.insert(p.hi);
    }
    for (const EnvelopePiece& p : env_d.pieces) {
        lambdas.insert(p.lo);
        lambdas.insert(p.hi);
    }

    double worst = 1.0;
    for (double x : lambdas) {
        const double denom = env_d.value_at(x);
        if (denom <= 0.0)
            throw std::runtime_error("mhr_exact_2d: degenerate utility, every point scores zero");
        worst = std::min(worst, env_s.value_at(x) / denom);
    }
    return std::min(worst, 1.0);
}

void save_net_csv(const UtilityNet& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("net: cannot write file '" + path + "'");
    char buf[32];
    for (const UtilityVector& v : net.vectors) {
        for (size_t i = 0; i < v.weights.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", v.weights[i]);
            if (i) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("net: write to '" + path + "' failed");
}

UtilityNet load_net_csv(const std::string& path, Norm norm) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("net: cannot open file '" + path + "'");
    UtilityNet net;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> w;
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            w.push_back(std::stod(line.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        net.vectors.push_back(make_utility(std::move(w), norm));
    }
    if (net.vectors.empty()) throw std::runtime_error("net: file '" + path + "' is empty");
    return net;
}

}  // namespace fairhms
