#include "oresub/ratfunc.hpp"

#include "oresub/errors.hpp"

#include <cctype>

namespace oresub {

namespace {

// Makes den monic under the lexicographic order and moves the scalar into num.
void normalize_unit(Poly& num, Poly& den) {
    const Rational& lc = den.leading_coeff();
    if (lc == 1) return;
    Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
}

}  // namespace

RatFunc::RatFunc(const Poly& num, const Poly& den) : RatFunc(make(num, den)) {}

RatFunc RatFunc::make(Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) return RatFunc();
    if (den.is_constant()) return RatFunc(num.scaled(1 / den.constant_value()), Poly(1), Reduced{});
    if (!num.is_constant()) {
        Poly g = gcd(num, den);
        if (!g.is_constant()) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
    }
    normalize_unit(num, den);
    return RatFunc(std::move(num), std::move(den), Reduced{});
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw InternalInconsistency("constant_value of a non-constant function");
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc RatFunc::inverse() const {
    if (num_.is_zero()) throw DivisionByZero();
    Poly n = den_, d = num_;
    normalize_unit(n, d);
    return RatFunc(std::move(n), std::move(d), Reduced{});
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    unsigned u = static_cast<unsigned>(e);
    // Powers of a reduced fraction stay reduced.
    return RatFunc(num_.pow(u), den_.pow(u), Reduced{});
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) return *this = make(num_ + o.num_, den_);
    if (den_.is_one()) return *this = RatFunc(num_ * o.den_ + o.num_, o.den_, Reduced{});
    if (o.den_.is_one()) return *this = RatFunc(num_ + o.num_ * den_, den_, Reduced{});
    Poly g = gcd(den_, o.den_);
    if (g.is_constant()) {
        // Coprime denominators: the sum is already reduced.
        Poly n = num_ * o.den_ + o.num_ * den_;
        if (n.is_zero()) return *this = RatFunc();
        Poly d = den_ * o.den_;
        normalize_unit(n, d);
        return *this = RatFunc(std::move(n), std::move(d), Reduced{});
    }
    Poly a = exact_div(den_, g), b = exact_div(o.den_, g);
    Poly n = num_ * b + o.num_ * a;
    if (n.is_zero()) return *this = RatFunc();
    // Only factors of g can cancel.
    Poly h = gcd(n, g);
    if (!h.is_constant()) {
        n = exact_div(n, h);
        g = exact_div(g, h);
    }
    Poly d = a * b * g;
    normalize_unit(n, d);
    return *this = RatFunc(std::move(n), std::move(d), Reduced{});
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) return *this = RatFunc();
    if (o.is_polynomial() && o.num_.is_constant()) {
        num_ = num_.scaled(o.num_.constant_value());
        return *this;
    }
    if (is_polynomial() && num_.is_constant()) {
        Rational c = num_.constant_value();
        *this = o;
        num_ = num_.scaled(c);
        return *this;
    }
    // Cross cancellation keeps operands small.
    Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    if (!d2.is_one() && !n1.is_constant()) {
        Poly g = gcd(n1, d2);
        if (!g.is_constant()) n1 = exact_div(n1, g), d2 = exact_div(d2, g);
    }
    if (!d1.is_one() && !n2.is_constant()) {
        Poly g = gcd(n2, d1);
        if (!g.is_constant()) n2 = exact_div(n2, g), d1 = exact_div(d1, g);
    }
    Poly n = n1 * n2, d = d1 * d2;
    normalize_unit(n, d);
    num_ = std::move(n);
    den_ = std::move(d);
    return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::derivative(std::size_t v) const {
    if (!depends_on(v)) return RatFunc();
    if (den_.is_one()) return RatFunc(num_.derivative(v), Poly(1), Reduced{});
    return make(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RatFunc RatFunc::shift(std::size_t v, const Rational& step) const {
    if (sgn(step) == 0 || !depends_on(v)) return *this;
    Poly n = num_.shift(v, step), d = den_.shift(v, step);
    normalize_unit(n, d);
    return RatFunc(std::move(n), std::move(d), Reduced{});
}

RatFunc substitute_poly(const Poly& p, std::size_t v, const RatFunc& image) {
    if (!p.depends_on(v)) return RatFunc(p);
    auto cs = p.coeffs(v);
    RatFunc acc(cs.back());
    for (std::size_t i = cs.size() - 1; i-- > 0;) {
        acc *= image;
        acc += RatFunc(cs[i]);
    }
    return acc;
}

RatFunc RatFunc::substitute(std::size_t v, const RatFunc& image) const {
    if (!depends_on(v)) return *this;
    if (image.is_polynomial()) return make(num_.substitute(v, image.num_), den_.substitute(v, image.num_));
    return substitute_poly(num_, v, image) / substitute_poly(den_, v, image);
}

RatFunc RatFunc::evaluate(std::size_t v, const Rational& value) const {
    if (!depends_on(v)) return *this;
    return make(num_.evaluate(v, value), den_.evaluate(v, value));
}

RatFunc RatFunc::compose(const std::vector<Poly>& images) const {
    return make(num_.compose(images), den_.compose(images));
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarSet& vars) : text_(text), vars_(vars) {}

    RatFunc run() {
        skip();
        if (pos_ >= text_.size()) fail("empty expression");
        RatFunc r = expr();
        skip();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n')
                ++line, col = 1;
            else
                ++col;
        }
        throw ParseError(msg, line, col);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = unary();
        while (true) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RatFunc power() {
        RatFunc base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            if (pos_ - start > 6) fail("exponent too large");
            int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
            return base.pow(e);
        }
        return base;
    }

    RatFunc primary() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return RatFunc(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto name = text_.substr(start, pos_ - start);
            auto idx = vars_.index(name);
            if (!idx) {
                pos_ = start;
                fail("unknown variable '" + std::string(name) + "'");
            }
            return RatFunc::var(*idx);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    const VarSet& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const VarSet& vars) { return Parser(text, vars).run(); }

std::string to_string(const RatFunc& f, const VarSet& vars) {
    if (f.is_polynomial()) return to_string(f.num(), vars);
    std::string n = to_string(f.num(), vars);
    if (f.num().size() > 1) n = "(" + n + ")";
    std::string d = to_string(f.den(), vars);
    // The divisor needs grouping unless it is a single variable power.
    const Poly& den = f.den();
    VarMask s = den.is_monomial() ? den.leading_term().mono.support() : 0;
    bool single_power = s != 0 && (s & (s - 1)) == 0;
    if (!single_power) d = "(" + d + ")";
    return n + "/" + d;
}

bool canonical_less(const RatFunc& a, const RatFunc& b) {
    if (a.den() == b.den()) return canonical_less(a.num(), b.num());
    return canonical_less(a.den(), b.den());
}

}  // namespace oresub
