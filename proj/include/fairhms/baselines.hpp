#pragma once

#include "fairhms/fairness.hpp"
#include "fairhms/utility.hpp"

namespace fairhms {

enum class BaselineKind { GreedyUnfair, GGreedy, FGreedy };

/// Plain greedy for HMS: repeatedly add the point that maximizes the net
/// MHR of the partial set. Ignores fairness; used in the violation study.
std::vector<int> greedy_unfair(const Dataset& ds, int k, const UtilityNet& net);

/// Fair matroid greedy: like greedy_unfair but only candidates that keep
/// the set independent are considered, until k items are included.
std::vector<int> f_greedy(const Dataset& ds, const FairnessSpec& spec, const UtilityNet& net);

/// Allocation of k across groups for the per-group adaptation: start at the
/// lower bounds, hand out the remainder by largest remainder of the
/// proportional quota k*|D_c|/|D| subject to the upper bounds and group
/// sizes.
std::vector<int> allocate_group_quotas(const Dataset& ds, const FairnessSpec& spec);

/// "G-" adaptation: run the inner algorithm on each group separately with
/// the allocated per-group solution size and take the union.
std::vector<int> per_group_adapt(BaselineKind inner, const Dataset& ds, const FairnessSpec& spec,
                                 const UtilityNet& net);

}  // namespace fairhms
