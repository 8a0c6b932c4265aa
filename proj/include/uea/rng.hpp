#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uea/linalg.hpp"

namespace uea {

/// Deterministic RNG built on mt19937_64 with fixed output mappings, so that
/// identical seeds give identical draws independent of the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t raw() { return engine_(); }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by rejection (unbiased).
    uint64_t below(uint64_t n) {
        if (n == 0) throw ValidationError("Rng::below: n must be positive");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Sample an index from a probability vector by inverse CDF.
    int sample_pmf(const RealVector& p) {
        const double u = uniform();
        double acc = 0.0;
        for (int i = 0; i < p.size(); ++i) {
            acc += p(i);
            if (u < acc) return i;
        }
        return static_cast<int>(p.size()) - 1;
    }

    /// Uniform permutation of {0,...,n-1} by Fisher-Yates.
    std::vector<int> permutation(int n) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i)
            std::swap(perm[static_cast<std::size_t>(i)],
                      perm[static_cast<std::size_t>(below(static_cast<uint64_t>(i) + 1))]);
        return perm;
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 step; used to derive independent stream seeds from a base seed.
inline uint64_t mix_seed(uint64_t base, uint64_t stream) {
    uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace uea
