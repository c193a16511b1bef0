#include "heavenly/rng.hpp"

namespace heavenly {

Rat random_rat(SplitMix64& rng, int num_bound, int den_bound) {
    std::int64_t num = 0;
    while (num == 0) num = rng.int_in(-num_bound, num_bound);
    std::int64_t den = rng.int_in(1, den_bound);
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

PolyField random_poly(SplitMix64& rng, int max_degree, int n_terms,
                      int num_bound, int den_bound) {
    PolyField f;
    for (int t = 0; t < n_terms; ++t) {
        // Draw exponents one variable at a time against the remaining budget
        // so low and high degrees both appear.
        int budget = int(rng.below(std::uint64_t(max_degree + 1)));
        Mono m{0, 0, 0, 0};
        for (int i = 0; i < 4 && budget > 0; ++i) {
            int e = int(rng.below(std::uint64_t(budget + 1)));
            m[i] = std::uint8_t(e);
            budget -= e;
        }
        f += PolyField::monomial(m, random_rat(rng, num_bound, den_bound));
    }
    return f;
}

}  // namespace heavenly
