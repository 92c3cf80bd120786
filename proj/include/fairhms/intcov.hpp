#pragma once

#include <optional>

#include "fairhms/envelope.hpp"
#include "fairhms/fairness.hpp"

namespace fairhms {

/// Every value the optimal MHR can take on a normalized 2D dataset: the
/// happiness ratio of each point at the two axis utilities plus the ratio of
/// each pair at its equalizing utility (when that utility is nonnegative).
/// Deduplicated within 1e-12 and sorted ascending; O(n^2) values.
std::vector<double> build_candidates(const Dataset& ds);

struct DpStats {
    long long states_evaluated = 0;
};

/// Fair interval cover. Finds a set S with l_c <= |S n D_c| <= h_c and
/// |S| <= k whose intervals jointly cover [0,1] (chained with tolerance
/// 1e-9), or nullopt when no such set exists. Intervals must all stem from
/// the same tau; `intervals` holds one entry per usable point (entries with
/// the empty marker participate only as padding for lower bounds).
std::optional<std::vector<int>> dynprog_cover(const std::vector<TauInterval>& intervals,
                                              const Dataset& ds, const FairnessSpec& spec,
                                              DpStats* stats = nullptr);

struct IntcovResult {
    std::vector<int> ids;          // indices into the input dataset, size k
    double tau = 0.0;              // largest candidate with a feasible cover
    long long probes = 0;          // decision problems solved
    long long dp_states = 0;       // total DP states evaluated
    int skyline_size = 0;
};

/// Exact FairHMS in 2D: binary search over the candidate MHR values, each
/// probe solved as a fair interval cover. Input coordinates must be
/// normalized; the solver reduces to the per-group skyline internally.
IntcovResult intcov(const Dataset& ds, const FairnessSpec& spec);

}  // namespace fairhms
