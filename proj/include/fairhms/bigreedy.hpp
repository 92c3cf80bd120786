#pragma once

#include <optional>
#include <string>

#include "fairhms/fairness.hpp"
#include "fairhms/utility.hpp"

namespace fairhms {

struct GreedyConfig {
    double epsilon = 0.02;
    int m = 0;          // explicit net size; when 0, derived from delta
    double delta = 0.0;
    bool feasible_mode = false;  // solve at k' and repair to an exact size-k set
    uint64_t seed = 1;
};

struct AdaptiveConfig {
    GreedyConfig base;
    int m0 = 0;          // initial net size
    int big_m = 0;       // sampling limit M
    double lambda = 0.04;  // stall threshold on consecutive capped values
};

/// k' = floor(k / ceil(log2(2m/eps))), floored at 1.
int effective_k(int k, int m, double epsilon);

/// Multi-round matroid greedy for one capped value. Runs at most gamma
/// rounds; each round grows a maximal independent set by largest marginal
/// gain of the truncated MHR (ties broken by smallest index). Returns the
/// union of the rounds as soon as mhr_truncated reaches (1 - eps/2m) * tau,
/// nullopt if the threshold is still unmet after gamma rounds.
std::optional<std::vector<int>> mr_greedy(double tau, int gamma, const UtilityNet& net,
                                          const Dataset& ds, const FairnessSpec& spec,
                                          double epsilon);

struct SolveDiagnostics {
    long long hr_evals = 0;   // per-net-vector happiness-ratio evaluations
    int net_m = 0;            // optimization net size (selected round for adaptive)
    int gamma_cap = 0;
    int rounds_used = 0;      // realized rounds of the selected solution
    bool rounds_complete = true;  // every merged round reached size k
    double tau = 0.0;         // capped value of the selected solution
    int taus_attempted = 0;
    int solutions_collected = 0;
    int adaptive_rounds = 0;  // nets tried (bigreedy_plus only)
    double net_sampling_ms = 0.0;
    std::vector<std::string> flags;
};

struct SolveResult {
    std::vector<int> ids;
    double mhr = 0.0;  // under eval_method
    std::string eval_method;
    SolveDiagnostics diag;
};

/// Bicriteria FairHMS solver: samples a utility net, sweeps capped values
/// tau = 1, (1-eps/2), ... down to 1/m, runs the multi-round greedy on each,
/// and returns the collected solution with the best evaluated MHR. With
/// feasible_mode the solve runs at k' and the answer is repaired to an
/// exactly feasible size-k set.
SolveResult bigreedy(const Dataset& ds, const FairnessSpec& spec, const GreedyConfig& cfg);

/// Adaptive net sizing: run bigreedy at m0, keep doubling the sample size
/// until the capped value stalls (gap below lambda) or the doubling budget
/// for limit M is exhausted; return the best round by evaluated MHR.
SolveResult bigreedy_plus(const Dataset& ds, const FairnessSpec& spec,
                          const AdaptiveConfig& cfg);

}  // namespace fairhms
