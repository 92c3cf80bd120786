#pragma once

// Internal score-ratio cache shared by the greedy solvers. Not installed.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "fairhms/types.hpp"
#include "fairhms/utility.hpp"

namespace fairhms::internal {

/// Precomputed ratio[p][u] = f_u(p) / max_{q in D} f_u(q) for every point
/// and net vector. With the singleton index enabled, per-point sorted ratios
/// and prefix sums resolve sum_u min(ratio[p][u], tau) in O(log m) for any
/// tau, which makes the first pick of every greedy round cheap.
class HrCache {
public:
    HrCache(const Dataset& ds, const UtilityNet& net, long long* evals,
            bool singleton_index = false)
        : n_(ds.size()), m_(net.size()) {
        ratio_.resize(static_cast<size_t>(n_) * m_);
        std::vector<double> denom(m_, 0.0);
        for (int p = 0; p < n_; ++p) {
            const auto& c = ds.point(p).coords;
            double* row = ratio_.data() + static_cast<size_t>(p) * m_;
            for (int u = 0; u < m_; ++u) {
                const auto& w = net.vectors[u].weights;
                double s = 0.0;
                for (size_t i = 0; i < w.size(); ++i) s += w[i] * c[i];
                row[u] = s;
                denom[u] = std::max(denom[u], s);
            }
        }
        for (int u = 0; u < m_; ++u)
            if (denom[u] <= 0.0)
                throw std::runtime_error("hr: degenerate utility, every point scores zero");
        for (int p = 0; p < n_; ++p) {
            double* row = ratio_.data() + static_cast<size_t>(p) * m_;
            for (int u = 0; u < m_; ++u) row[u] /= denom[u];
        }
        if (evals) *evals += static_cast<long long>(n_) * m_;

        if (singleton_index) {
            sorted_ = ratio_;
            prefix_.resize(static_cast<size_t>(n_) * (m_ + 1));
            for (int p = 0; p < n_; ++p) {
                auto begin = sorted_.begin() + static_cast<size_t>(p) * m_;
                std::sort(begin, begin + m_);
                double acc = 0.0;
                prefix_[static_cast<size_t>(p) * (m_ + 1)] = 0.0;
                for (int u = 0; u < m_; ++u) {
                    acc += begin[u];
                    prefix_[static_cast<size_t>(p) * (m_ + 1) + u + 1] = acc;
                }
            }
        }
    }

    int n() const { return n_; }
    int m() const { return m_; }

    const double* ratios(int p) const { return ratio_.data() + static_cast<size_t>(p) * m_; }

    /// sum_u min(ratio[p][u], tau); requires the singleton index.
    double singleton_capped_sum(int p, double tau) const {
        const double* s = sorted_.data() + static_cast<size_t>(p) * m_;
        const double* pre = prefix_.data() + static_cast<size_t>(p) * (m_ + 1);
        const int below = static_cast<int>(std::lower_bound(s, s + m_, tau) - s);
        return pre[below] + tau * (m_ - below);
    }

private:
    int n_, m_;
    std::vector<double> ratio_;
    std::vector<double> sorted_;
    std::vector<double> prefix_;
};

}  // namespace fairhms::internal
