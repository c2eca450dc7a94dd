#pragma once

#include "oresub/poly.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace oresub {

// Element of Q(variables) stored as a reduced fraction. The denominator is
// monic with respect to the lexicographic order, so equal values compare
// structurally equal.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    explicit RatFunc(const Rational& c) : num_(c), den_(1) {}
    explicit RatFunc(Poly p) : num_(std::move(p)), den_(1) {}
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc var(std::size_t v) { return RatFunc(Poly::var(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_one(); }
    Rational constant_value() const;  // requires is_constant()

    VarMask support() const { return num_.support() | den_.support(); }
    bool depends_on(std::size_t v) const { return num_.depends_on(v) || den_.depends_on(v); }

    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(int e) const;

    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RatFunc derivative(std::size_t v) const;
    RatFunc shift(std::size_t v, const Rational& step) const;
    RatFunc substitute(std::size_t v, const RatFunc& image) const;
    RatFunc evaluate(std::size_t v, const Rational& value) const;
    // Simultaneous polynomial substitution, see Poly::compose.
    RatFunc compose(const std::vector<Poly>& images) const;

    std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

private:
    struct Reduced {};
    RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
    static RatFunc make(Poly num, Poly den);

    Poly num_;
    Poly den_;
};

// The text form: integers, names, + - * / ^ with nonnegative integer
// exponents, parentheses. parse(to_string(f)) == f.
RatFunc parse_ratfunc(std::string_view text, const VarSet& vars);
std::string to_string(const RatFunc& f, const VarSet& vars);

// Evaluate a polynomial with RatFunc values substituted for selected variables.
bool canonical_less(const RatFunc& a, const RatFunc& b);

RatFunc substitute_poly(const Poly& p, std::size_t v, const RatFunc& image);

}  // namespace oresub

template <>
struct std::hash<oresub::RatFunc> {
    std::size_t operator()(const oresub::RatFunc& f) const noexcept { return f.hash(); }
};
