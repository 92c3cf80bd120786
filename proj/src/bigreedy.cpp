#include "fairhms/bigreedy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <queue>
#include <stdexcept>

#include "fairhms/rng.hpp"
#include "hr_cache.hpp"

namespace fairhms {

namespace {

constexpr double kTol = 1e-9;
constexpr double kTieTol = 1e-12;

using internal::HrCache;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int gamma_cap(int m, double epsilon) {
    return std::max(1, static_cast<int>(std::ceil(std::log2(2.0 * m / epsilon))));
}

// Incremental membership test for the fairness matroid.
struct MatroidState {
    const FairnessSpec& spec;
    std::vector<int> counts;
    long long sum_max;
    int size = 0;

    explicit MatroidState(const FairnessSpec& s) : spec(s), counts(s.group_count(), 0) {
        sum_max = 0;
        for (int l : spec.lower) sum_max += l;
    }
    bool can_add(int c) const {
        if (counts[c] >= spec.upper[c]) return false;
        return sum_max + (counts[c] >= spec.lower[c] ? 1 : 0) <= spec.k;
    }
    void add(int c) {
        if (counts[c] >= spec.lower[c]) ++sum_max;
        ++counts[c];
        ++size;
    }
};

struct RoundResult {
    std::vector<int> picked;
    bool complete = false;  // reached size k
};

// One round of the matroid greedy at cap tau: grow a maximal independent
// set by largest marginal gain of the truncated MHR. Lazy (CELF-style)
// evaluation; stale heap keys are valid upper bounds by submodularity.
// Ties within 1e-12 prefer candidates not yet dominated by a same-group
// pick, then the smallest index.
RoundResult greedy_round(const HrCache& cache, const Dataset& ds, const FairnessSpec& spec,
                         double tau, const std::vector<char>& in_pool, long long& evals) {
    const int n = cache.n(), m = cache.m();
    MatroidState mat(spec);
    std::vector<double> capped(m, 0.0);  // min(best score ratio over picks, tau) per vector
    RoundResult out;

    auto gain_of = [&](int p) {
        const double* r = cache.ratios(p);
        double g = 0.0;
        for (int u = 0; u < m; ++u) {
            const double c = r[u] < tau ? r[u] : tau;
            if (c > capped[u]) g += c - capped[u];
        }
        evals += m;
        return g;
    };

    auto dominated_now = [&](int p) {
        const auto& pc = ds.point(p).coords;
        for (int q : out.picked) {
            if (ds.point(q).group != ds.point(p).group) continue;
            const auto& qc = ds.point(q).coords;
            bool dom = true;
            for (size_t i = 0; i < qc.size(); ++i)
                if (qc[i] < pc[i]) {
                    dom = false;
                    break;
                }
            if (dom) return true;
        }
        return false;
    };

    auto add_pick = [&](int p) {
        const double* r = cache.ratios(p);
        for (int u = 0; u < m; ++u) {
            const double c = r[u] < tau ? r[u] : tau;
            if (c > capped[u]) capped[u] = c;
        }
        mat.add(ds.point(p).group);
        out.picked.push_back(p);
    };

    struct Entry {
        double gain;
        int point;
        int stamp;
    };
    auto worse = [](const Entry& x, const Entry& y) {
        if (x.gain != y.gain) return x.gain < y.gain;
        return x.point > y.point;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    for (int p = 0; p < n; ++p) {
        if (!in_pool[p] || !mat.can_add(ds.point(p).group)) continue;
        // Gain against the empty round set comes straight from the
        // per-point capped-sum index.
        heap.push({cache.singleton_capped_sum(p, tau), p, 0});
    }

    bool zero_mode = false;
    std::vector<Entry> tied;
    while (true) {
        bool any_addable = false;
        for (int c = 0; c < spec.group_count(); ++c)
            if (mat.can_add(c)) {
                any_addable = true;
                break;
            }
        if (!any_addable) break;

        int pick = -1;
        if (!zero_mode) {
            // Settle the top of the heap, then everything tied with it.
            while (!heap.empty()) {
                Entry e = heap.top();
                if (!in_pool[e.point] || !mat.can_add(ds.point(e.point).group)) {
                    heap.pop();
                    continue;
                }
                if (e.stamp != mat.size) {
                    heap.pop();
                    heap.push({gain_of(e.point), e.point, mat.size});
                    continue;
                }
                break;
            }
            if (heap.empty()) break;
            const double top_gain = heap.top().gain;
            if (top_gain <= kTieTol) {
                zero_mode = true;
            } else {
                tied.clear();
                double best_gain = 0.0;
                while (!heap.empty() && heap.top().gain >= top_gain - kTieTol) {
                    Entry e = heap.top();
                    heap.pop();
                    if (!in_pool[e.point] || !mat.can_add(ds.point(e.point).group)) continue;
                    if (e.stamp != mat.size) {
                        e.gain = gain_of(e.point);
                        e.stamp = mat.size;
                        if (e.gain < top_gain - kTieTol) {
                            heap.push(e);
                            continue;
                        }
                    }
                    tied.push_back(e);
                    best_gain = std::max(best_gain, e.gain);
                }
                int chosen = -1;
                bool chosen_dom = true;
                for (const Entry& e : tied) {
                    if (e.gain < best_gain - kTieTol) continue;
                    const bool dom = dominated_now(e.point);
                    if (chosen < 0 || (chosen_dom && !dom) ||
                        (chosen_dom == dom && e.point < chosen)) {
                        chosen = e.point;
                        chosen_dom = dom;
                    }
                }
                for (const Entry& e : tied)
                    if (e.point != chosen) heap.push(e);
                pick = chosen;
            }
        }
        if (zero_mode) {
            // Remaining gains are zero: fill the quota, skipping candidates
            // already dominated by a same-group pick when possible.
            int fallback = -1;
            for (int p = 0; p < n && pick < 0; ++p) {
                if (!in_pool[p] || !mat.can_add(ds.point(p).group)) continue;
                bool used = false;
                for (int q : out.picked)
                    if (q == p) {
                        used = true;
                        break;
                    }
                if (used) continue;
                if (dominated_now(p)) {
                    if (fallback < 0) fallback = p;
                    continue;
                }
                pick = p;
            }
            if (pick < 0) pick = fallback;
        }
        if (pick < 0) break;
        add_pick(pick);
    }
    out.complete = mat.size == spec.k;
    std::sort(out.picked.begin(), out.picked.end());
    return out;
}

struct MrResult {
    std::vector<int> ids;
    int rounds_used = 0;
    bool rounds_complete = true;
};

std::optional<MrResult> mr_greedy_impl(const HrCache& cache, const Dataset& ds,
                                       const FairnessSpec& spec, double tau, int gamma,
                                       double epsilon, long long& evals) {
    const int m = cache.m();
    const double threshold = (1.0 - epsilon / (2.0 * m)) * tau;
    std::vector<char> in_pool(cache.n(), 1);
    std::vector<double> union_capped(m, 0.0);
    double union_sum = 0.0;
    MrResult res;

    for (int round = 1; round <= gamma; ++round) {
        RoundResult r = greedy_round(cache, ds, spec, tau, in_pool, evals);
        if (r.picked.empty()) break;  // pool exhausted for every open group
        res.rounds_used = round;
        res.rounds_complete = res.rounds_complete && r.complete;
        for (int p : r.picked) {
            in_pool[p] = 0;
            res.ids.push_back(p);
            const double* ratios = cache.ratios(p);
            for (int u = 0; u < m; ++u) {
                const double c = ratios[u] < tau ? ratios[u] : tau;
                if (c > union_capped[u]) {
                    union_sum += c - union_capped[u];
                    union_capped[u] = c;
                }
            }
            evals += m;
        }
        if (union_sum / m >= threshold - kTol) {
            std::sort(res.ids.begin(), res.ids.end());
            return res;
        }
    }
    return std::nullopt;
}

// Evaluates solutions uniformly for the final argmax: exact in 2D, on a
// fresh validation net otherwise so the answer is not scored on the same
// sample it was optimized on.
class Evaluator {
public:
    Evaluator(const Dataset& ds, int validation_m, uint64_t seed, long long& evals,
              double& sampling_ms)
        : ds_(ds), evals_(evals) {
        if (ds.dim() == 2) {
            method_ = "exact-2d";
        } else {
            const auto t0 = Clock::now();
            net_ = sample_net(ds.dim(), validation_m, seed);
            sampling_ms += ms_since(t0);
            cache_ = std::make_unique<HrCache>(ds, net_, &evals_);
            method_ = "validation-net:m=" + std::to_string(validation_m) +
                      ";seed=" + std::to_string(seed);
        }
    }

    double operator()(const std::vector<int>& S) {
        if (!cache_) return mhr_exact_2d(S, ds_);
        const int m = cache_->m();
        double worst = 1.0;
        for (int u = 0; u < m; ++u) {
            double best = 0.0;
            for (int p : S) best = std::max(best, cache_->ratios(p)[u]);
            worst = std::min(worst, best);
        }
        evals_ += static_cast<long long>(m) * static_cast<long long>(S.size());
        return worst;
    }

    const std::string& method() const { return method_; }

private:
    const Dataset& ds_;
    long long& evals_;
    UtilityNet net_;
    std::unique_ptr<HrCache> cache_;
    std::string method_;
};

// Greedy rebuild for feasible mode: pick a size-k independent set, first
// from the candidate union, then from the rest of the pool, by marginal
// gain of the average happiness ratio.
std::vector<int> repair_to_size_k(const HrCache& cache, const Dataset& ds,
                                  const FairnessSpec& spec, const std::vector<int>& preferred,
                                  long long& evals) {
    const int n = cache.n(), m = cache.m();
    MatroidState mat(spec);
    std::vector<double> best(m, 0.0);
    std::vector<char> chosen(n, 0);
    std::vector<char> preferred_flag(n, 0);
    for (int p : preferred) preferred_flag[p] = 1;
    std::vector<int> out;

    auto gain_of = [&](int p) {
        const double* r = cache.ratios(p);
        double g = 0.0;
        for (int u = 0; u < m; ++u)
            if (r[u] > best[u]) g += r[u] - best[u];
        evals += m;
        return g;
    };

    for (int phase = 0; phase < 2 && mat.size < spec.k; ++phase) {
        while (mat.size < spec.k) {
            int pick = -1;
            double pick_gain = -1.0;
            for (int p = 0; p < n; ++p) {
                if (chosen[p]) continue;
                if (phase == 0 && !preferred_flag[p]) continue;
                if (!mat.can_add(ds.point(p).group)) continue;
                const double g = gain_of(p);
                if (g > pick_gain + kTieTol) {
                    pick = p;
                    pick_gain = g;
                }
            }
            if (pick < 0) break;
            chosen[pick] = 1;
            out.push_back(pick);
            mat.add(ds.point(pick).group);
            const double* r = cache.ratios(pick);
            for (int u = 0; u < m; ++u) best[u] = std::max(best[u], r[u]);
        }
    }
    if (mat.size != spec.k)
        throw std::logic_error("bigreedy: repair could not reach size k on a feasible instance");
    std::sort(out.begin(), out.end());
    return out;
}

struct BigreedyInternal {
    SolveResult result;
    double selected_tau = 0.0;
};

BigreedyInternal run_bigreedy(const Dataset& ds, const FairnessSpec& spec,
                              const GreedyConfig& cfg, int m, uint64_t net_seed) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw std::invalid_argument("bigreedy: epsilon must lie in (0,1)");
    check_feasible(ds, spec);

    SolveResult res;
    SolveDiagnostics& diag = res.diag;
    diag.net_m = m;
    diag.gamma_cap = gamma_cap(m, cfg.epsilon);

    FairnessSpec run_spec = spec;
    if (cfg.feasible_mode) {
        const int k_eff = effective_k(spec.k, m, cfg.epsilon);
        long long sum_l = 0;
        for (int l : spec.lower) sum_l += l;
        if (k_eff < sum_l)
            throw std::invalid_argument(
                "bigreedy: feasible mode needs k' >= sum of lower bounds, got k'=" +
                std::to_string(k_eff) + " < " + std::to_string(sum_l) +
                "; raise k or epsilon, or lower m");
        run_spec.k = k_eff;
    }

    const auto t_sample = Clock::now();
    const UtilityNet net = sample_net(ds.dim(), m, net_seed);
    diag.net_sampling_ms += ms_since(t_sample);
    HrCache cache(ds, net, &diag.hr_evals, true);

    struct Candidate {
        double tau;
        int rounds_used;
        bool rounds_complete;
        std::vector<int> ids;
    };
    std::vector<Candidate> collected;
    const double shrink = 1.0 - cfg.epsilon / 2.0;
    for (double tau = 1.0; tau >= 1.0 / m - kTol; tau *= shrink) {
        ++diag.taus_attempted;
        auto mr = mr_greedy_impl(cache, ds, run_spec, tau, diag.gamma_cap, cfg.epsilon,
                                 diag.hr_evals);
        if (mr) collected.push_back({tau, mr->rounds_used, mr->rounds_complete, std::move(mr->ids)});
    }

    if (collected.empty()) {
        // Degenerate data: no cap was ever certified. Fall back to a single
        // greedy pass at the smallest cap and flag the report.
        std::vector<char> pool(cache.n(), 1);
        RoundResult r = greedy_round(cache, ds, run_spec, 1.0 / m, pool, diag.hr_evals);
        collected.push_back({1.0 / m, 1, r.complete, std::move(r.picked)});
        diag.flags.push_back("no-cap-satisfied");
    }

    // The same set often reappears across caps; evaluate each set once,
    // at the largest cap that produced it.
    std::map<std::vector<int>, int> first_at;
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(collected.size()); ++i)
        if (first_at.emplace(collected[i].ids, i).second) order.push_back(i);
    diag.solutions_collected = static_cast<int>(collected.size());

    Evaluator evaluate(ds, 4 * m, mix_seed(net_seed, 0xb16e), diag.hr_evals,
                       diag.net_sampling_ms);
    int best_idx = -1;
    double best_val = -1.0;
    for (int i : order) {
        const double v = evaluate(collected[i].ids);
        if (v > best_val) {
            best_val = v;
            best_idx = i;
        }
    }

    const Candidate& sel = collected[best_idx];
    diag.tau = sel.tau;
    diag.rounds_used = sel.rounds_used;
    diag.rounds_complete = sel.rounds_complete;
    res.eval_method = evaluate.method();

    if (cfg.feasible_mode) {
        res.ids = repair_to_size_k(cache, ds, spec, sel.ids, diag.hr_evals);
        res.mhr = evaluate(res.ids);
        diag.flags.push_back("feasible-mode-repair");
    } else {
        res.ids = sel.ids;
        res.mhr = best_val;
    }
    return {std::move(res), sel.tau};
}

}  // namespace

int effective_k(int k, int m, double epsilon) {
    if (k < 1) throw std::invalid_argument("effective_k: k must be positive");
    return std::max(1, k / gamma_cap(m, epsilon));
}

std::optional<std::vector<int>> mr_greedy(double tau, int gamma, const UtilityNet& net,
                                          const Dataset& ds, const FairnessSpec& spec,
                                          double epsilon) {
    if (!(tau > 0.0 && tau <= 1.0))
        throw std::invalid_argument("mr_greedy: tau must lie in (0,1]");
    if (gamma < 1) throw std::invalid_argument("mr_greedy: gamma must be >= 1");
    long long evals = 0;
    HrCache cache(ds, net, &evals, true);
    auto res = mr_greedy_impl(cache, ds, spec, tau, gamma, epsilon, evals);
    if (!res) return std::nullopt;
    return std::move(res->ids);
}

SolveResult bigreedy(const Dataset& ds, const FairnessSpec& spec, const GreedyConfig& cfg) {
    int m = cfg.m;
    if (m <= 0) {
        if (!(cfg.delta > 0.0))
            throw std::invalid_argument("bigreedy: either m or delta must be set");
        const long long derived = net_size_for(cfg.delta, ds.dim());
        if (derived > 10'000'000)
            throw std::invalid_argument("bigreedy: delta implies an impractical net size");
        m = static_cast<int>(derived);
    }
    return run_bigreedy(ds, spec, cfg, m, cfg.seed).result;
}

SolveResult bigreedy_plus(const Dataset& ds, const FairnessSpec& spec,
                          const AdaptiveConfig& cfg) {
    if (cfg.m0 < 1) throw std::invalid_argument("bigreedy_plus: m0 must be >= 1");
    if (cfg.big_m < cfg.m0) throw std::invalid_argument("bigreedy_plus: M must be >= m0");
    if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0))
        throw std::invalid_argument("bigreedy_plus: lambda must lie in (0,1]");

    const int doubling_budget =
        static_cast<int>(std::ceil(std::log2(static_cast<double>(cfg.big_m) / cfg.m0)));

    std::vector<BigreedyInternal> rounds;
    rounds.push_back(run_bigreedy(ds, spec, cfg.base, cfg.m0, cfg.base.seed));

    bool stalled = false;
    int m_i = cfg.m0;
    for (int i = 1; i <= doubling_budget; ++i) {
        m_i *= 2;
        rounds.push_back(run_bigreedy(ds, spec, cfg.base, m_i, mix_seed(cfg.base.seed, i)));
        const double gap = rounds[i - 1].selected_tau - rounds[i].selected_tau;
        if (gap < cfg.lambda) {
            stalled = true;
            break;
        }
    }

    long long evals = 0;
    double sampling_ms = 0.0;
    for (const auto& r : rounds) {
        evals += r.result.diag.hr_evals;
        sampling_ms += r.result.diag.net_sampling_ms;
    }

    // Rounds were judged on nets of different sizes; compare them on one
    // common yardstick.
    Evaluator evaluate(ds, 4 * cfg.big_m, mix_seed(cfg.base.seed, 0xeba1), evals, sampling_ms);
    int best = 0;
    double best_val = -1.0;
    std::vector<double> values(rounds.size());
    for (size_t i = 0; i < rounds.size(); ++i) {
        values[i] = evaluate(rounds[i].result.ids);
        if (values[i] > best_val) {
            best_val = values[i];
            best = static_cast<int>(i);
        }
    }

    SolveResult res = rounds[best].result;
    res.mhr = values[best];
    res.eval_method = evaluate.method();
    res.diag.hr_evals = evals;
    res.diag.net_sampling_ms = sampling_ms;
    res.diag.adaptive_rounds = static_cast<int>(rounds.size());
    res.diag.flags.push_back(stalled ? "adaptive-stalled" : "adaptive-budget-exhausted");
    return res;
}

}  // namespace fairhms
