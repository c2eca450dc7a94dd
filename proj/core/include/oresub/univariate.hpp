#pragma once

#include "oresub/ratfunc.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace oresub {

// Dense polynomial in one distinguished variable with coefficients in the
// field of rational functions of the other variables, lowest degree first.
using UPoly = std::vector<RatFunc>;

namespace upoly {

UPoly from_poly(const Poly& p, std::size_t t);
// Requires f's denominator to be free of t.
UPoly from_ratfunc(const RatFunc& f, std::size_t t);
RatFunc to_ratfunc(const UPoly& p, std::size_t t);

int degree(const UPoly& p);  // -1 for zero
void trim(UPoly& p);
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, const RatFunc& c);
UPoly derivative(const UPoly& a);
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& a);
UPoly gcd(const UPoly& a, const UPoly& b, std::size_t t);
// s with s*a = c (mod b), deg s < deg b; requires gcd(a, b) = 1.
UPoly solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c, std::size_t t);

}  // namespace upoly

// gcd of a and b as polynomials in var over Q(other variables): the
// multivariate gcd with its var-free content removed. Monic when the leading
// coefficient in var is a number; otherwise primitive with positive leading
// coefficient.
Poly gcd_poly(const Poly& a, const Poly& b, std::size_t var);

// Content of p with respect to var: gcd of its coefficients in Q[others].
Poly content_in(const Poly& p, std::size_t var);
Poly primitive_in(const Poly& p, std::size_t var);

// Square-free decomposition of a var-primitive polynomial: (factor, multiplicity)
// pairs with pairwise coprime square-free factors of positive var-degree.
std::vector<std::pair<Poly, unsigned>> squarefree(const Poly& p, std::size_t var);

// Distinct roots of p in Q(other variables).
std::vector<RatFunc> rational_roots(const Poly& p, std::size_t var);

// Exact square root of a polynomial, if it is a perfect square.
std::optional<Poly> poly_sqrt(const Poly& p);

enum class FactorKind {
    linear,       // carries its root
    irreducible,  // degree 2 or 3 without roots, hence irreducible
    unverified,   // degree >= 4 remainder that may still split
};

struct Factor {
    Poly poly;  // primitive in Q[all variables], positive leading coefficient
    unsigned multiplicity = 1;
    FactorKind kind = FactorKind::linear;
    std::optional<RatFunc> root;
};

struct Factorization {
    Poly unit;  // free of var
    std::vector<Factor> factors;

    bool splits() const;    // every factor linear
    bool complete() const;  // no unverified factor
};

// p = unit * prod factor^multiplicity. Linear factors come first, sorted
// canonically within each square-free layer.
Factorization factor_univariate(const Poly& p, std::size_t var);

struct PartialFraction {
    Poly factor;
    unsigned order = 1;
    RatFunc numerator;  // polynomial in var of degree below deg(factor)
};

struct PartialFractions {
    RatFunc polynomial_part;
    std::vector<PartialFraction> terms;

    RatFunc recombine() const;
};

PartialFractions partial_fractions(const RatFunc& f, std::size_t var);

// g with dg/dvar = f when such a rational g exists.
std::optional<RatFunc> rational_antiderivative(const RatFunc& f, std::size_t var);

}  // namespace oresub
