#pragma once

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oresub {

using Rational = mpq_class;
using Integer = mpz_class;

// Variables are small indices into a session-wide VarSet. The last slot is
// reserved for auxiliary unknowns introduced by the solvers (characteristic
// roots, indicial exponents), so at most kMaxVars - 1 user variables exist.
inline constexpr std::size_t kMaxVars = 12;
inline constexpr std::size_t kAuxVar = kMaxVars - 1;
using VarMask = std::uint32_t;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};

    std::uint16_t operator[](std::size_t v) const { return exp[v]; }
    std::uint16_t& operator[](std::size_t v) { return exp[v]; }

    static Monomial var(std::size_t v, unsigned power = 1);
    unsigned total_degree() const;
    VarMask support() const;
    bool is_one() const;
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    // Requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    // Pure lexicographic order, variable 0 most significant.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) { return a.exp <=> b.exp; }
};

Monomial min_exponents(const Monomial& a, const Monomial& b);

// Sparse multivariate polynomial with rational coefficients. Terms are kept in
// strictly decreasing lexicographic order with no zero coefficients, so two
// equal polynomials are structurally identical.
class Poly {
public:
    struct Term {
        Monomial mono;
        Rational coeff;
    };

    Poly() = default;
    Poly(long c);  // NOLINT(google-explicit-constructor)
    explicit Poly(const Rational& c);

    static Poly var(std::size_t v);
    static Poly term(const Monomial& m, const Rational& c);
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    Rational constant_value() const;  // requires is_constant()
    Rational constant_term() const;

    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading_term() const { return terms_.front(); }
    const Rational& leading_coeff() const { return terms_.front().coeff; }

    VarMask support() const;
    bool depends_on(std::size_t v) const;
    unsigned degree(std::size_t v) const;
    unsigned low_degree(std::size_t v) const;
    unsigned total_degree() const;
    Monomial monomial_content() const;

    // Coefficients of powers of v: result[i] multiplies v^i.
    std::vector<Poly> coeffs(std::size_t v) const;
    static Poly from_coeffs(const std::vector<Poly>& coeffs, std::size_t v);
    Poly coeff(std::size_t v, unsigned power) const;
    Poly lead_coeff(std::size_t v) const;

    Poly derivative(std::size_t v) const;
    Poly substitute(std::size_t v, const Poly& image) const;
    Poly evaluate(std::size_t v, const Rational& value) const;
    Poly shift(std::size_t v, const Rational& step) const;
    // Simultaneous substitution of images[i] for variable i; variables beyond
    // images.size() are left alone.
    Poly compose(const std::vector<Poly>& images) const;
    Poly rename(std::size_t from, std::size_t to) const;

    // Positive rational c with this / c having coprime integer coefficients
    // and positive leading coefficient (c carries the sign).
    Rational content() const;
    Poly primitive() const;
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly scaled(const Rational& c) const;
    Poly times_monomial(const Monomial& m, const Rational& c) const;
    Poly pow(unsigned e) const;

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

    std::size_t hash() const;

private:
    std::vector<Term> terms_;
};

// Exact multivariate division; empty when b does not divide a.
std::optional<Poly> try_divide(const Poly& a, const Poly& b);
// Division known to be exact; throws InternalInconsistency otherwise.
Poly exact_div(const Poly& a, const Poly& b);

// Greatest common divisor in Q[all variables], normalized to be primitive with
// positive leading coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

// Total order on canonical forms: fewer terms first, then term by term.
bool canonical_less(const Poly& a, const Poly& b);

class VarSet {
public:
    VarSet() = default;
    explicit VarSet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t v) const;
    std::optional<std::size_t> index(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

std::string to_string(const Poly& p, const VarSet& vars);

}  // namespace oresub
