#pragma once

#include <cstdint>

#include "fairhms/types.hpp"

namespace fairhms {

/// Synthetic anti-correlated data in [0,1]^d, Borzsonyi style: each point
/// starts on the diagonal at an offset drawn from N(0.5, 0.25^2) truncated to
/// [0,1], then mass is shifted between adjacent coordinates by uniform
/// perturbations, which makes the attributes negatively correlated. Points
/// are sorted by coordinate sum and split into C equal-sized contiguous
/// groups (group 0 holds the smallest sums). Deterministic for a fixed seed.
Dataset generate_anticorrelated(int n, int d, int c_groups, uint64_t seed);

}  // namespace fairhms
