#pragma once

#include <cstdint>

#include "heavenly/polyfield.hpp"
#include "heavenly/rational.hpp"

namespace heavenly {

// Deterministic 64-bit generator (splitmix64).  Chosen over std::mt19937
// because its output stream is pinned by the algorithm alone, so seeds echoed
// in reports reproduce draws on any platform or standard library.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).  n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(below(std::uint64_t(hi - lo + 1)));
    }

    double unit_double() { return double(next() >> 11) * 0x1.0p-53; }
};

// Random nonzero rational with |numerator| <= num_bound and
// 1 <= denominator <= den_bound.
Rat random_rat(SplitMix64& rng, int num_bound, int den_bound);

// Random polynomial with at most n_terms monomials of total degree <=
// max_degree and small rational coefficients.  May have fewer terms when
// draws collide; never returns terms above the cap.
PolyField random_poly(SplitMix64& rng, int max_degree, int n_terms,
                      int num_bound = 6, int den_bound = 4);

}  // namespace heavenly
