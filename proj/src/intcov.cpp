#include "fairhms/intcov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fairhms {

namespace {

constexpr double kCoverTol = 1e-9;
constexpr double kDedupTol = 1e-12;

}  // namespace

std::vector<double> build_candidates(const Dataset& ds) {
    if (ds.dim() != 2) throw std::invalid_argument("build_candidates: dataset must be 2D");
    const Envelope env = upper_envelope(ds);
    const int n = ds.size();

    std::vector<double> cand;
    cand.reserve(2 * n + static_cast<size_t>(n) * (n - 1) / 2);

    // Axis utilities. On normalized data the attribute maxima are 1, so
    // these are the coordinates themselves; dividing keeps the values exact
    // hr ratios either way.
    const double max0 = env.value_at(1.0);
    const double max1 = env.value_at(0.0);
    if (max0 <= 0.0 || max1 <= 0.0)
        throw std::runtime_error("build_candidates: degenerate axis utility");
    for (const Point& p : ds.points()) {
        cand.push_back(p.coords[0] / max0);
        cand.push_back(p.coords[1] / max1);
    }

    // Pair-equalizing utilities in the nonnegative quadrant.
    for (int i = 0; i < n; ++i) {
        const auto& pi = ds.point(i).coords;
        const double ai = pi[1], bi = pi[0] - pi[1];
        for (int j = i + 1; j < n; ++j) {
            const auto& pj = ds.point(j).coords;
            const double aj = pj[1], bj = pj[0] - pj[1];
            if (bi == bj) continue;  // parallel score lines never equalize
            const double lambda = (aj - ai) / (bi - bj);
            if (lambda < 0.0 || lambda > 1.0) continue;
            const double value = ai + bi * lambda;
            const double denom = env.value_at(lambda);
            if (denom <= 0.0) continue;
            cand.push_back(std::clamp(value / denom, 0.0, 1.0));
        }
    }

    std::sort(cand.begin(), cand.end());
    std::vector<double> dedup;
    for (double v : cand)
        if (dedup.empty() || v - dedup.back() > kDedupTol) dedup.push_back(v);
    return dedup;
}

namespace {

// Count-vector state space of the cover DP, flattened row-major with
// per-group extents upper[c]+1.
struct StateSpace {
    std::vector<int> extent;
    std::vector<long long> stride;
    long long total = 1;

    explicit StateSpace(const FairnessSpec& spec) {
        const int c_count = spec.group_count();
        extent.resize(c_count);
        stride.resize(c_count);
        for (int c = c_count - 1; c >= 0; --c) {
            extent[c] = spec.upper[c] + 1;
            stride[c] = total;
            total *= extent[c];
        }
    }

    void decode(long long s, std::vector<int>& counts) const {
        for (size_t c = 0; c < extent.size(); ++c) {
            counts[c] = static_cast<int>(s / stride[c]) % extent[c];
        }
    }
};

}  // namespace

std::optional<std::vector<int>> dynprog_cover(const std::vector<TauInterval>& intervals,
                                              const Dataset& ds, const FairnessSpec& spec,
                                              DpStats* stats) {
    const int c_count = spec.group_count();

    // Group the usable intervals, widest right end first so transitions can
    // take the first admissible entry.
    std::vector<std::vector<TauInterval>> by_group(c_count);
    std::vector<std::vector<int>> points_by_group(c_count);
    for (const TauInterval& iv : intervals) {
        const int c = ds.point(iv.point).group;
        points_by_group[c].push_back(iv.point);
        if (!iv.empty) by_group[c].push_back(iv);
    }
    for (auto& g : by_group)
        std::sort(g.begin(), g.end(), [](const TauInterval& x, const TauInterval& y) {
            if (x.hi != y.hi) return x.hi > y.hi;
            return x.point < y.point;
        });
    for (int c = 0; c < c_count; ++c)
        if (static_cast<int>(points_by_group[c].size()) < spec.lower[c]) return std::nullopt;

    const StateSpace space(spec);
    if (space.total > 20'000'000)
        throw std::runtime_error("dynprog_cover: state space too large (" +
                                 std::to_string(space.total) + " states)");

    constexpr double kUnset = -1.0;
    std::vector<double> value(space.total, kUnset);
    std::vector<int> chosen(space.total, -1);
    std::vector<long long> pred(space.total, -1);
    std::vector<char> color(space.total, 0);  // 0 untouched, 1 expanded, 2 done

    value[0] = 0.0;
    color[0] = 2;

    auto chain_of = [&](long long s) {
        std::vector<int> pts;
        while (s > 0 && chosen[s] >= 0) {
            pts.push_back(chosen[s]);
            s = pred[s];
        }
        return pts;
    };

    auto complete = [&](long long s) -> std::vector<int> {
        // Pad the covering chain up to the lower bounds with arbitrary
        // unused points; padding never uncovers anything.
        std::vector<int> pts = chain_of(s);
        std::vector<int> counts(c_count, 0);
        for (int p : pts) ++counts[ds.point(p).group];
        for (int c = 0; c < c_count; ++c) {
            for (int p : points_by_group[c]) {
                if (counts[c] >= spec.lower[c]) break;
                if (std::find(pts.begin(), pts.end(), p) == pts.end()) {
                    pts.push_back(p);
                    ++counts[c];
                }
            }
        }
        std::sort(pts.begin(), pts.end());
        return pts;
    };

    std::vector<long long> stack;
    stack.push_back(space.total - 1);  // IC[h_1, ..., h_C]
    std::vector<int> counts(c_count);

    while (!stack.empty()) {
        const long long s = stack.back();
        if (color[s] == 0) {
            color[s] = 1;
            space.decode(s, counts);
            for (int c = 0; c < c_count; ++c)
                if (counts[c] > 0 && color[s - space.stride[c]] == 0)
                    stack.push_back(s - space.stride[c]);
            continue;
        }
        stack.pop_back();
        if (color[s] == 2) continue;
        color[s] = 2;

        space.decode(s, counts);
        long long sum_max = 0;
        for (int c = 0; c < c_count; ++c) sum_max += std::max(counts[c], spec.lower[c]);
        if (sum_max > spec.k) continue;  // infeasible state, skip evaluation

        if (stats) ++stats->states_evaluated;

        double best_value = kUnset;
        int best_point = -1;
        long long best_pred = -1;
        for (int c = 0; c < c_count; ++c) {
            if (counts[c] == 0) continue;
            const long long ps = s - space.stride[c];
            const double pv = value[ps];
            if (pv == kUnset) continue;
            const std::vector<int> used = chain_of(ps);
            for (const TauInterval& iv : by_group[c]) {
                if (iv.lo > pv + kCoverTol) continue;
                if (std::find(used.begin(), used.end(), iv.point) != used.end()) continue;
                const double v = std::max(pv, iv.hi);
                if (v > best_value) {
                    best_value = v;
                    best_point = iv.point;
                    best_pred = ps;
                }
                break;  // sorted by hi desc: the first admissible entry is best
            }
        }
        if (best_point < 0) continue;
        value[s] = best_value;
        chosen[s] = best_point;
        pred[s] = best_pred;
        if (best_value >= 1.0 - kCoverTol) return complete(s);
    }
    return std::nullopt;
}

IntcovResult intcov(const Dataset& ds, const FairnessSpec& spec) {
    if (ds.dim() != 2) throw std::invalid_argument("intcov: dataset must be 2D");

    // Solve on the per-group skyline; dominated points never improve any
    // happiness ratio. Fail fast when a group's skyline cannot meet its
    // lower bound.
    const std::vector<char> flags = skyline_flags(ds);
    std::vector<int> sky;
    for (int i = 0; i < ds.size(); ++i)
        if (flags[i]) sky.push_back(i);
    const Dataset sds = ds.restrict(sky);
    check_feasible(sds, spec);

    const Envelope env = upper_envelope(sds);
    const std::vector<double> candidates = build_candidates(sds);

    IntcovResult result;
    result.skyline_size = sds.size();

    DpStats stats;
    std::vector<TauInterval> intervals(sds.size());
    std::optional<std::vector<int>> best;

    int lo = 0, hi = static_cast<int>(candidates.size()) - 1;
    while (lo <= hi) {
        const int cur = (lo + hi) / 2;
        const double tau = std::max(candidates[cur], kDedupTol);
        for (int i = 0; i < sds.size(); ++i) intervals[i] = interval_for(i, tau, env, sds);
        ++result.probes;
        auto cover = dynprog_cover(intervals, sds, spec, &stats);
        if (cover) {
            best = std::move(cover);
            result.tau = candidates[cur];
            lo = cur + 1;
        } else {
            hi = cur - 1;
        }
    }
    result.dp_states = stats.states_evaluated;
    if (!best)
        throw std::logic_error("intcov: no candidate admits a cover on a feasible instance");

    // Pad to exactly k; by monotonicity extra points never lower the MHR.
    std::vector<int> sol = *best;
    if (static_cast<int>(sol.size()) < spec.k) {
        std::vector<char> in_sol(sds.size(), 0);
        for (int p : sol) in_sol[p] = 1;
        std::vector<int> counts = group_counts(sol, sds);
        for (int p = 0; p < sds.size() && static_cast<int>(sol.size()) < spec.k; ++p) {
            if (in_sol[p]) continue;
            const int c = sds.point(p).group;
            ++counts[c];
            if (counts_independent(counts, spec)) {
                sol.push_back(p);
                in_sol[p] = 1;
            } else {
                --counts[c];
            }
        }
    }
    std::sort(sol.begin(), sol.end());

    // Map skyline indices back to the caller's dataset.
    result.ids.reserve(sol.size());
    for (int p : sol) result.ids.push_back(sky[p]);
    return result;
}

}  // namespace fairhms
