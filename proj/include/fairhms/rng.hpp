#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fairhms {

/// Deterministic random stream. mt19937_64 is fully specified by the
/// standard and doubles are extracted explicitly, so sequences reproduce
/// across platforms and standard-library versions for a fixed seed.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<uint64_t>(hi - lo + 1));
    }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    uint64_t next() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Stable derivation of auxiliary seeds (validation nets, adaptive rounds)
/// from a base seed. SplitMix64 finalizer.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace fairhms
