#include "fairhms/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "hr_cache.hpp"

namespace fairhms {

namespace {

using internal::HrCache;

// Greedy maximization of min_u max_{p in S} ratio[p][u]; grows S by the
// point with the best resulting minimum, ties to the smallest index.
// can_add decides which points are admissible at each step.
template <typename CanAdd, typename OnAdd>
std::vector<int> greedy_min_ratio(const HrCache& cache, int k, CanAdd can_add, OnAdd on_add) {
    const int n = cache.n(), m = cache.m();
    std::vector<double> best(m, 0.0);
    std::vector<char> chosen(n, 0);
    std::vector<int> out;
    while (static_cast<int>(out.size()) < k) {
        int pick = -1;
        double pick_val = -1.0;
        for (int p = 0; p < n; ++p) {
            if (chosen[p] || !can_add(p)) continue;
            const double* r = cache.ratios(p);
            double worst = 1.0;
            for (int u = 0; u < m; ++u) {
                const double v = r[u] > best[u] ? r[u] : best[u];
                if (v < worst) worst = v;
            }
            if (worst > pick_val + 1e-12) {
                pick = p;
                pick_val = worst;
            }
        }
        if (pick < 0) break;
        chosen[pick] = 1;
        out.push_back(pick);
        const double* r = cache.ratios(pick);
        for (int u = 0; u < m; ++u) best[u] = std::max(best[u], r[u]);
        on_add(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<int> greedy_unfair(const Dataset& ds, int k, const UtilityNet& net) {
    if (k < 1) throw std::invalid_argument("greedy_unfair: k must be positive");
    if (k > ds.size())
        throw std::invalid_argument("greedy_unfair: k exceeds the number of points (" +
                                    std::to_string(ds.size()) + ")");
    long long evals = 0;
    HrCache cache(ds, net, &evals);
    return greedy_min_ratio(
        cache, k, [](int) { return true; }, [](int) {});
}

std::vector<int> f_greedy(const Dataset& ds, const FairnessSpec& spec, const UtilityNet& net) {
    check_feasible(ds, spec);
    long long evals = 0;
    HrCache cache(ds, net, &evals);
    std::vector<int> counts(spec.group_count(), 0);
    long long sum_max = 0;
    for (int l : spec.lower) sum_max += l;
    auto can_add = [&](int p) {
        const int c = ds.point(p).group;
        if (counts[c] >= spec.upper[c]) return false;
        return sum_max + (counts[c] >= spec.lower[c] ? 1 : 0) <= spec.k;
    };
    auto on_add = [&](int p) {
        const int c = ds.point(p).group;
        if (counts[c] >= spec.lower[c]) ++sum_max;
        ++counts[c];
    };
    std::vector<int> out = greedy_min_ratio(cache, spec.k, can_add, on_add);
    if (static_cast<int>(out.size()) != spec.k)
        throw std::logic_error("f_greedy: could not reach size k on a feasible instance");
    return out;
}

std::vector<int> allocate_group_quotas(const Dataset& ds, const FairnessSpec& spec) {
    check_feasible(ds, spec);
    const int c_count = spec.group_count();
    std::vector<int> quota = spec.lower;
    std::vector<int> cap(c_count);
    int assigned = 0;
    for (int c = 0; c < c_count; ++c) {
        cap[c] = std::min(spec.upper[c], static_cast<int>(ds.group_members(c).size()));
        assigned += quota[c];
    }
    while (assigned < spec.k) {
        int pick = -1;
        double pick_gap = -1.0;
        for (int c = 0; c < c_count; ++c) {
            if (quota[c] >= cap[c]) continue;
            const double target =
                static_cast<double>(spec.k) * ds.group_members(c).size() / ds.size();
            const double gap = target - quota[c];
            if (gap > pick_gap + 1e-12) {
                pick = c;
                pick_gap = gap;
            }
        }
        if (pick < 0)
            throw std::logic_error("allocate_group_quotas: no capacity left on a feasible spec");
        ++quota[pick];
        ++assigned;
    }
    return quota;
}

std::vector<int> per_group_adapt(BaselineKind inner, const Dataset& ds, const FairnessSpec& spec,
                                 const UtilityNet& net) {
    const std::vector<int> quota = allocate_group_quotas(ds, spec);
    std::vector<int> out;
    for (int c = 0; c < spec.group_count(); ++c) {
        if (quota[c] == 0) continue;
        std::vector<int> orig;
        const Dataset slice = ds.group_slice(c, orig);
        std::vector<int> local;
        switch (inner) {
            case BaselineKind::GreedyUnfair:
            case BaselineKind::GGreedy:
                local = greedy_unfair(slice, quota[c], net);
                break;
            case BaselineKind::FGreedy: {
                // Degenerates to the unconstrained greedy on one group.
                local = f_greedy(slice, unconstrained_bounds(slice, quota[c]), net);
                break;
            }
        }
        for (int p : local) out.push_back(orig[p]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fairhms
