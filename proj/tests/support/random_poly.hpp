#pragma once

#include "oresub/ratfunc.hpp"

#include <random>

namespace oresub::testing {

// Random sparse polynomial over the first nvars variables with small integer
// coefficients and total degree at most max_deg.
inline Poly random_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg, unsigned terms, int coeff_range = 5) {
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<unsigned> degree(0, max_deg);
    std::uniform_int_distribution<std::size_t> which(0, nvars - 1);
    Poly p;
    for (unsigned i = 0; i < terms; ++i) {
        Monomial m;
        unsigned d = degree(rng);
        for (unsigned k = 0; k < d; ++k) m[which(rng)] += 1;
        int c = coeff(rng);
        p += Poly::term(m, Rational(c));
    }
    return p;
}

inline Poly random_nonzero_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg, unsigned terms) {
    Poly p;
    while (p.is_zero()) p = random_poly(rng, nvars, max_deg, terms);
    return p;
}

inline RatFunc random_ratfunc(std::mt19937& rng, std::size_t nvars, unsigned max_deg, unsigned terms) {
    return RatFunc(random_poly(rng, nvars, max_deg, terms), random_nonzero_poly(rng, nvars, max_deg, terms));
}

}  // namespace oresub::testing
