#pragma once

#include "fairhms/types.hpp"

namespace fairhms {

/// Solution size k plus per-group cardinality bounds l_c <= |S n D_c| <= h_c.
/// Doubles as the description of the fairness matroid.
struct FairnessSpec {
    int k = 0;
    std::vector<int> lower;
    std::vector<int> upper;

    int group_count() const { return static_cast<int>(lower.size()); }
};

/// Validates k >= 1, l_c <= h_c for all c and sum(l) <= k <= sum(h);
/// throws std::invalid_argument otherwise. Infeasible specs are a
/// constructor-time error, never silently repaired.
FairnessSpec make_spec(int k, std::vector<int> lower, std::vector<int> upper);

/// Proportional representation: l_c = max(1, floor((1-a) k |D_c|/|D|)),
/// h_c = min(k-C+1, ceil((1+a) k |D_c|/|D|)).
FairnessSpec proportional_bounds(const Dataset& ds, int k, double alpha);

/// Balanced representation: l_c = max(1, floor((1-a) k / C)),
/// h_c = min(k-C+1, ceil((1+a) k / C)).
FairnessSpec balanced_bounds(const Dataset& ds, int k, double alpha);

/// Exact quotas l_c = h_c = quota_c, k = sum of quotas.
FairnessSpec exact_bounds(const Dataset& ds, const std::vector<int>& quotas);

/// No fairness constraint: l_c = 0, h_c = k.
FairnessSpec unconstrained_bounds(const Dataset& ds, int k);

/// Throws unless a size-k set satisfying the bounds exists within ds,
/// i.e. l_c <= |D_c| for all c and sum(l) <= k <= sum(min(h_c, |D_c|)).
void check_feasible(const Dataset& ds, const FairnessSpec& spec);

std::vector<int> group_counts(const std::vector<int>& S, const Dataset& ds);

/// Membership in the fairness matroid:
/// sum_c max(|S n D_c|, l_c) <= k and |S n D_c| <= h_c for all c.
bool counts_independent(const std::vector<int>& counts, const FairnessSpec& spec);
bool is_independent(const std::vector<int>& S, const Dataset& ds, const FairnessSpec& spec);

/// Number of fairness violations:
/// sum_c max{|S n D_c| - h_c, l_c - |S n D_c|, 0}.
int counts_err(const std::vector<int>& counts, const FairnessSpec& spec);
int err(const std::vector<int>& S, const Dataset& ds, const FairnessSpec& spec);

}  // namespace fairhms
