#include "fairhms/fairness.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fairhms {

FairnessSpec make_spec(int k, std::vector<int> lower, std::vector<int> upper) {
    if (k < 1) throw std::invalid_argument("fairness: k must be positive");
    if (lower.size() != upper.size() || lower.empty())
        throw std::invalid_argument("fairness: bound vectors empty or of unequal length");
    long long sum_l = 0, sum_h = 0;
    for (size_t c = 0; c < lower.size(); ++c) {
        if (lower[c] < 0)
            throw std::invalid_argument("fairness: lower bound of group " + std::to_string(c) +
                                        " is negative");
        if (lower[c] > upper[c])
            throw std::invalid_argument("fairness: group " + std::to_string(c) +
                                        " has lower bound above upper bound");
        sum_l += lower[c];
        sum_h += upper[c];
    }
    if (sum_l > k || k > sum_h)
        throw std::invalid_argument(
            "fairness: infeasible bounds, need sum(lower) <= k <= sum(upper), got sum(lower)=" +
            std::to_string(sum_l) + " k=" + std::to_string(k) + " sum(upper)=" +
            std::to_string(sum_h));
    return FairnessSpec{k, std::move(lower), std::move(upper)};
}

namespace {

FairnessSpec shared_bounds(const Dataset& ds, int k, double alpha, bool proportional) {
    const int c_count = ds.group_count();
    if (k < c_count)
        throw std::invalid_argument("fairness: k must be at least the number of groups");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("fairness: alpha must lie in (0,1)");
    const double n = static_cast<double>(ds.size());
    std::vector<int> lower(c_count), upper(c_count);
    for (int c = 0; c < c_count; ++c) {
        const double share =
            proportional ? static_cast<double>(ds.group_members(c).size()) / n : 1.0 / c_count;
        const double quota = k * share;
        lower[c] = std::max(1, static_cast<int>(std::floor((1.0 - alpha) * quota)));
        upper[c] = std::min(k - c_count + 1, static_cast<int>(std::ceil((1.0 + alpha) * quota)));
    }
    return make_spec(k, std::move(lower), std::move(upper));
}

}  // namespace

FairnessSpec proportional_bounds(const Dataset& ds, int k, double alpha) {
    return shared_bounds(ds, k, alpha, true);
}

FairnessSpec balanced_bounds(const Dataset& ds, int k, double alpha) {
    return shared_bounds(ds, k, alpha, false);
}

FairnessSpec exact_bounds(const Dataset& ds, const std::vector<int>& quotas) {
    if (static_cast<int>(quotas.size()) != ds.group_count())
        throw std::invalid_argument("fairness: quota count does not match group count");
    const int k = std::accumulate(quotas.begin(), quotas.end(), 0);
    return make_spec(k, quotas, quotas);
}

FairnessSpec unconstrained_bounds(const Dataset& ds, int k) {
    return make_spec(k, std::vector<int>(ds.group_count(), 0),
                     std::vector<int>(ds.group_count(), k));
}

void check_feasible(const Dataset& ds, const FairnessSpec& spec) {
    if (spec.group_count() != ds.group_count())
        throw std::invalid_argument("fairness: spec group count does not match dataset");
    long long reachable = 0;
    for (int c = 0; c < spec.group_count(); ++c) {
        const int avail = static_cast<int>(ds.group_members(c).size());
        if (spec.lower[c] > avail)
            throw std::invalid_argument("fairness: group '" + ds.group_label(c) + "' has only " +
                                        std::to_string(avail) + " points but lower bound " +
                                        std::to_string(spec.lower[c]));
        reachable += std::min(spec.upper[c], avail);
    }
    if (reachable < spec.k)
        throw std::invalid_argument("fairness: at most " + std::to_string(reachable) +
                                    " points selectable under the bounds, need k=" +
                                    std::to_string(spec.k));
}

std::vector<int> group_counts(const std::vector<int>& S, const Dataset& ds) {
    std::vector<int> counts(ds.group_count(), 0);
    for (int i : S) ++counts[ds.point(i).group];
    return counts;
}

bool counts_independent(const std::vector<int>& counts, const FairnessSpec& spec) {
    long long sum_max = 0;
    for (int c = 0; c < spec.group_count(); ++c) {
        if (counts[c] > spec.upper[c]) return false;
        sum_max += std::max(counts[c], spec.lower[c]);
    }
    return sum_max <= spec.k;
}

bool is_independent(const std::vector<int>& S, const Dataset& ds, const FairnessSpec& spec) {
    return counts_independent(group_counts(S, ds), spec);
}

int counts_err(const std::vector<int>& counts, const FairnessSpec& spec) {
    int total = 0;
    for (int c = 0; c < spec.group_count(); ++c)
        total += std::max({counts[c] - spec.upper[c], spec.lower[c] - counts[c], 0});
    return total;
}

int err(const std::vector<int>& S, const Dataset& ds, const FairnessSpec& spec) {
    return counts_err(group_counts(S, ds), spec);
}

}  // namespace fairhms
