#include "oresub/poly.hpp"

#include "oresub/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace oresub {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(std::size_t v, unsigned power) {
    Monomial m;
    m.exp[v] = static_cast<std::uint16_t>(power);
    return m;
}

unsigned Monomial::total_degree() const {
    unsigned d = 0;
    for (auto e : exp) d += e;
    return d;
}

VarMask Monomial::support() const {
    VarMask m = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i]) m |= VarMask{1} << i;
    return m;
}

bool Monomial::is_one() const {
    for (auto e : exp)
        if (e) return false;
    return true;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (exp[i] > other.exp[i]) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned s = unsigned(a.exp[i]) + b.exp[i];
        if (s > std::numeric_limits<std::uint16_t>::max()) throw Error("exponent overflow");
        r.exp[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
    return r;
}

Monomial min_exponents(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = std::min(a.exp[i], b.exp[i]);
    return r;
}

// ---------------------------------------------------------------- helpers

namespace {

using Terms = std::vector<Poly::Term>;

// a + sign*b for two sorted term lists.
Terms merge_terms(const Terms& a, const Terms& b, bool negate_b) {
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto c = a[i].mono <=> b[j].mono;
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back(b[j++]);
            if (negate_b) out.back().coeff = -out.back().coeff;
        } else {
            Rational s = negate_b ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
            if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
        out.push_back(b[j]);
        if (negate_b) out.back().coeff = -out.back().coeff;
    }
    return out;
}

Terms merge_sum_moving(Terms&& a, Terms&& b) {
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto c = a[i].mono <=> b[j].mono;
        if (c > 0) {
            out.push_back(std::move(a[i++]));
        } else if (c < 0) {
            out.push_back(std::move(b[j++]));
        } else {
            a[i].coeff += b[j].coeff;
            if (sgn(a[i].coeff) != 0) out.push_back(std::move(a[i]));
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
    return out;
}

}  // namespace

// ---------------------------------------------------------------- Poly basics

Poly::Poly(long c) {
    if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
}

Poly::Poly(const Rational& c) {
    if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::var(std::size_t v) { return term(Monomial::var(v), Rational(1)); }

Poly Poly::term(const Monomial& m, const Rational& c) {
    Poly p;
    if (sgn(c) != 0) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
    Poly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
        } else if (sgn(t.coeff) != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw InternalInconsistency("constant_value of a non-constant polynomial");
    return terms_[0].coeff;
}

Rational Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Rational(0);
}

VarMask Poly::support() const {
    VarMask m = 0;
    for (const auto& t : terms_) m |= t.mono.support();
    return m;
}

bool Poly::depends_on(std::size_t v) const {
    for (const auto& t : terms_)
        if (t.mono[v]) return true;
    return false;
}

unsigned Poly::degree(std::size_t v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[v]);
    return d;
}

unsigned Poly::low_degree(std::size_t v) const {
    if (terms_.empty()) return 0;
    unsigned d = std::numeric_limits<unsigned>::max();
    for (const auto& t : terms_) d = std::min<unsigned>(d, t.mono[v]);
    return d;
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
    return d;
}

Monomial Poly::monomial_content() const {
    if (terms_.empty()) return {};
    Monomial m = terms_[0].mono;
    for (const auto& t : terms_) m = min_exponents(m, t.mono);
    return m;
}

std::vector<Poly> Poly::coeffs(std::size_t v) const {
    std::vector<Poly> out(degree(v) + 1);
    // Terms stay sorted inside each bucket because removing v preserves order
    // among terms with equal v-exponent.
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        unsigned e = m[v];
        m[v] = 0;
        out[e].terms_.push_back({m, t.coeff});
    }
    return out;
}

Poly Poly::from_coeffs(const std::vector<Poly>& coeffs, std::size_t v) {
    Terms all;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (const auto& t : coeffs[i].terms_) {
            Monomial m = t.mono;
            m[v] = static_cast<std::uint16_t>(m[v] + i);
            all.push_back({m, t.coeff});
        }
    return from_terms(std::move(all));
}

Poly Poly::coeff(std::size_t v, unsigned power) const {
    Poly out;
    for (const auto& t : terms_)
        if (t.mono[v] == power) {
            Monomial m = t.mono;
            m[v] = 0;
            out.terms_.push_back({m, t.coeff});
        }
    return out;
}

Poly Poly::lead_coeff(std::size_t v) const { return coeff(v, degree(v)); }

Poly Poly::derivative(std::size_t v) const {
    Poly out;
    for (const auto& t : terms_) {
        if (!t.mono[v]) continue;
        Monomial m = t.mono;
        Rational c = t.coeff * m[v];
        m[v] -= 1;
        out.terms_.push_back({m, std::move(c)});
    }
    // Decrementing one exponent keeps the relative lex order of surviving terms.
    return out;
}

Poly Poly::substitute(std::size_t v, const Poly& image) const {
    if (!depends_on(v)) return *this;
    auto cs = coeffs(v);
    Poly acc = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) {
        acc *= image;
        acc += cs[i];
    }
    return acc;
}

Poly Poly::evaluate(std::size_t v, const Rational& value) const {
    if (!depends_on(v)) return *this;
    Terms all;
    all.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        unsigned e = m[v];
        m[v] = 0;
        Rational c = t.coeff;
        if (e) {
            mpz_class n, d;
            mpz_pow_ui(n.get_mpz_t(), value.get_num_mpz_t(), e);
            mpz_pow_ui(d.get_mpz_t(), value.get_den_mpz_t(), e);
            c *= Rational(n, d);
        }
        all.push_back({m, std::move(c)});
    }
    return from_terms(std::move(all));
}

Poly Poly::shift(std::size_t v, const Rational& step) const {
    if (sgn(step) == 0) return *this;
    return substitute(v, var(v) + Poly(step));
}

Poly Poly::compose(const std::vector<Poly>& images) const {
    std::size_t nv = std::min(images.size(), kMaxVars);
    std::vector<std::vector<Poly>> powers(nv);
    auto power_of = [&](std::size_t v, unsigned e) -> const Poly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(Poly(1));
        while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
        return cache[e];
    };
    Poly out;
    for (const auto& t : terms_) {
        Monomial rest = t.mono;
        Poly prod = Poly::term(Monomial{}, t.coeff);
        for (std::size_t v = 0; v < nv; ++v) {
            if (!rest[v]) continue;
            prod *= power_of(v, rest[v]);
            rest[v] = 0;
        }
        if (!rest.is_one()) prod = prod.times_monomial(rest, Rational(1));
        out += prod;
    }
    return out;
}

Poly Poly::rename(std::size_t from, std::size_t to) const {
    if (from == to || !depends_on(from)) return *this;
    Terms all;
    all.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        m[to] = static_cast<std::uint16_t>(m[to] + m[from]);
        m[from] = 0;
        all.push_back({m, t.coeff});
    }
    return from_terms(std::move(all));
}

Rational Poly::content() const {
    if (terms_.empty()) return Rational(0);
    mpz_class g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational c(g, l);
    c.canonicalize();
    if (sgn(leading_coeff()) < 0) c = -c;
    return c;
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (c == 1) return *this;
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff /= c;
    return out;
}

Poly Poly::monic() const {
    if (terms_.empty() || leading_coeff() == 1) return *this;
    Rational c = leading_coeff();
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff /= c;
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge_terms(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge_terms(terms_, o.terms_, true);
    return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(const Rational& c) const {
    if (sgn(c) == 0) return Poly();
    Poly out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
    if (sgn(c) == 0) return Poly();
    Poly out;
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono * m, t.coeff * c});
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    const Poly& small = a.size() <= b.size() ? a : b;
    const Poly& large = a.size() <= b.size() ? b : a;
    if (small.size() == 1) return large.times_monomial(small.terms_[0].mono, small.terms_[0].coeff);
    // Each row small[i]*large is sorted; merge rows pairwise.
    std::vector<Terms> rows;
    rows.reserve(small.size());
    for (const auto& t : small.terms_) rows.push_back(large.times_monomial(t.mono, t.coeff).terms_);
    while (rows.size() > 1) {
        std::vector<Terms> next;
        next.reserve((rows.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
            next.push_back(merge_sum_moving(std::move(rows[i]), std::move(rows[i + 1])));
        if (rows.size() % 2) next.push_back(std::move(rows.back()));
        rows = std::move(next);
    }
    Poly out;
    out.terms_ = std::move(rows[0]);
    return out;
}

Poly Poly::pow(unsigned e) const {
    Poly result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

std::size_t Poly::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    for (const auto& t : terms_) {
        for (auto e : t.mono.exp) mix(e);
        mix(mpz_get_ui(t.coeff.get_num_mpz_t()));
        mix(mpz_get_ui(t.coeff.get_den_mpz_t()));
        mix(std::size_t(sgn(t.coeff) + 1));
    }
    return h;
}

// ---------------------------------------------------------------- division

std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(1 / b.constant_value());
    if ((b.support() & ~a.support()) != 0) return std::nullopt;
    for (std::size_t v = 0; v < kMaxVars; ++v)
        if (b.degree(v) > a.degree(v)) return std::nullopt;
    const auto& lt = b.leading_term();
    if (b.is_monomial()) {
        std::vector<Poly::Term> q;
        q.reserve(a.size());
        for (const auto& t : a.terms()) {
            if (!lt.mono.divides(t.mono)) return std::nullopt;
            q.push_back({t.mono / lt.mono, t.coeff / lt.coeff});
        }
        return Poly::from_terms(std::move(q));
    }
    std::vector<Poly::Term> q;
    Poly r = a;
    Rational inv_lc = 1 / lt.coeff;
    while (!r.is_zero()) {
        const auto& rt = r.leading_term();
        if (!lt.mono.divides(rt.mono)) return std::nullopt;
        Monomial m = rt.mono / lt.mono;
        Rational c = rt.coeff * inv_lc;
        r -= b.times_monomial(m, c);
        q.push_back({m, std::move(c)});
    }
    return Poly::from_terms(std::move(q));
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto q = try_divide(a, b);
    if (!q) throw InternalInconsistency("inexact polynomial division");
    return std::move(*q);
}

// ---------------------------------------------------------------- gcd

namespace {

using Dense = std::vector<Poly>;  // coefficients in a main variable, low to high

void trim(Dense& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const Dense& p) { return static_cast<int>(p.size()) - 1; }

// Pseudo-remainder of a by b over the coefficient ring.
Dense prem(Dense a, const Dense& b) {
    int db = deg(b);
    const Poly& lcb = b.back();
    int e = deg(a) - db + 1;
    while (deg(a) >= db && !a.empty()) {
        Poly lca = a.back();
        int s = deg(a) - db;
        for (auto& c : a) c *= lcb;
        for (int i = 0; i <= db; ++i) a[s + i] -= lca * b[i];
        a.pop_back();
        trim(a);
        --e;
    }
    if (e > 0) {
        Poly f = lcb.pow(static_cast<unsigned>(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

constexpr std::uint64_t kPrime = 2147483647ull;

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= kPrime;
    while (e) {
        if (e & 1) r = r * b % kPrime;
        b = b * b % kPrime;
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a) { return mod_pow(a, kPrime - 2); }

std::optional<std::uint64_t> rational_mod(const Rational& q) {
    std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
    std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
    if (d == 0) return std::nullopt;
    return n * mod_inv(d) % kPrime;
}

// Image of p in Z_p[v] after evaluating every other variable at point[].
std::optional<std::vector<std::uint64_t>> modular_image(const Poly& p, std::size_t v,
                                                        const std::array<std::uint64_t, kMaxVars>& point) {
    std::vector<std::uint64_t> out(p.degree(v) + 1, 0);
    for (const auto& t : p.terms()) {
        auto c = rational_mod(t.coeff);
        if (!c) return std::nullopt;
        std::uint64_t val = *c;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (i != v && t.mono[i]) val = val * mod_pow(point[i], t.mono[i]) % kPrime;
        auto& slot = out[t.mono[v]];
        slot = (slot + val) % kPrime;
    }
    return out;
}

int modular_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto trim_mod = [](std::vector<std::uint64_t>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim_mod(a);
    trim_mod(b);
    while (!b.empty()) {
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = a.back() * mod_inv(b.back()) % kPrime;
            std::size_t s = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = (a[s + i] + kPrime - f * b[i] % kPrime) % kPrime;
            trim_mod(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

std::mt19937_64& gcd_rng() {
    thread_local std::mt19937_64 rng(0x5eed1234abcdull);
    return rng;
}

// True when a and b are certainly coprime as polynomials in v over the
// fraction field of the other variables. A false answer is inconclusive.
bool certainly_coprime_in(const Poly& a, const Poly& b, std::size_t v) {
    std::array<std::uint64_t, kMaxVars> point{};
    std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 1);
    for (auto& x : point) x = dist(gcd_rng());
    auto ia = modular_image(a, v, point);
    auto ib = modular_image(b, v, point);
    if (!ia || !ib) return false;
    if (ia->back() == 0 || ib->back() == 0) return false;
    return modular_gcd_degree(std::move(*ia), std::move(*ib)) == 0;
}

Poly gcd_primitive(Poly a, Poly b);

Poly content_in(const Poly& p, std::size_t v) {
    auto cs = p.coeffs(v);
    std::vector<const Poly*> nz;
    for (const auto& c : cs)
        if (!c.is_zero()) nz.push_back(&c);
    std::sort(nz.begin(), nz.end(), [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
    Poly g = nz[0]->primitive();
    for (std::size_t i = 1; i < nz.size() && !g.is_constant(); ++i) g = gcd_primitive(g, nz[i]->primitive());
    return g.is_constant() ? Poly(1) : g;
}

Poly subresultant_gcd(const Poly& a, const Poly& b, std::size_t v) {
    Dense A = a.coeffs(v), B = b.coeffs(v);
    if (deg(A) < deg(B)) std::swap(A, B);
    Poly g(1), h(1);
    while (true) {
        int d = deg(A) - deg(B);
        Dense R = prem(A, B);
        if (R.empty()) break;
        if (deg(R) == 0) return Poly(1);
        Poly div = g * h.pow(static_cast<unsigned>(d));
        for (auto& c : R) c = exact_div(c, div);
        A = std::move(B);
        B = std::move(R);
        g = A.back();
        if (d == 0) {
            // h unchanged
        } else if (d == 1) {
            h = g;
        } else {
            h = exact_div(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
        }
    }
    Poly res = Poly::from_coeffs(B, v);
    return exact_div(res, content_in(res, v)).primitive();
}

// gcd of two primitive integer polynomials with positive leading coefficient.
Poly gcd_primitive(Poly a, Poly b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a == b) return a.primitive();

    Monomial ma = a.monomial_content(), mb = b.monomial_content();
    Monomial common = min_exponents(ma, mb);
    if (!ma.is_one()) a = exact_div(a, Poly::term(ma, 1));
    if (!mb.is_one()) b = exact_div(b, Poly::term(mb, 1));
    Poly mono = Poly::term(common, 1);
    if (a.is_constant() || b.is_constant()) return mono;
    if (a.is_monomial() || b.is_monomial()) return mono;

    // Variables occurring in only one argument can be eliminated through content.
    while (true) {
        VarMask sa = a.support(), sb = b.support();
        if ((sa & sb) == 0) return mono;
        VarMask only = (sa ^ sb);
        if (!only) break;
        std::size_t v = static_cast<std::size_t>(__builtin_ctz(only));
        if (sa & (VarMask{1} << v))
            a = content_in(a, v);
        else
            b = content_in(b, v);
        if (a.is_constant() || b.is_constant()) return mono;
    }

    VarMask shared = a.support();
    std::size_t best = kMaxVars;
    unsigned best_deg = std::numeric_limits<unsigned>::max();
    for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (!(shared & (VarMask{1} << v))) continue;
        unsigned d = std::max(a.degree(v), b.degree(v));
        if (d < best_deg) best_deg = d, best = v;
    }
    std::size_t v = best;

    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly cg = (ca.is_constant() || cb.is_constant()) ? Poly(1) : gcd_primitive(ca, cb);
    Poly pa = ca.is_constant() ? a : exact_div(a, ca);
    Poly pb = cb.is_constant() ? b : exact_div(b, cb);

    Poly pg(1);
    if (!certainly_coprime_in(pa, pb, v)) pg = subresultant_gcd(pa, pb, v);
    return (mono * cg * pg).primitive();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    return gcd_primitive(a.primitive(), b.primitive());
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    Poly g = gcd(a, b);
    return (exact_div(a.primitive(), g) * b.primitive()).primitive();
}

// ---------------------------------------------------------------- VarSet

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kAuxVar) throw Error("too many variables (at most " + std::to_string(kAuxVar) + ")");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const auto& n = names_[i];
        bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
        for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok) throw Error("invalid variable name '" + n + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[j] == n) throw Error("duplicate variable name '" + n + "'");
    }
}

const std::string& VarSet::name(std::size_t v) const {
    static const std::string aux = "_aux";
    static const std::vector<std::string> fallback = [] {
        std::vector<std::string> f;
        for (std::size_t i = 0; i < kMaxVars; ++i) f.push_back("_v" + std::to_string(i));
        return f;
    }();
    if (v < names_.size()) return names_[v];
    if (v == kAuxVar) return aux;
    return fallback.at(v);
}

std::optional<std::size_t> VarSet::index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

// ---------------------------------------------------------------- printing

std::string to_string(const Poly& p, const VarSet& vars) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coeff;
        bool neg = sgn(c) < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = (c == 1);
        bool wrote = false;
        if (!unit || t.mono.is_one()) {
            os << c.get_str();
            wrote = true;
        }
        for (std::size_t v = 0; v < kMaxVars; ++v) {
            if (!t.mono[v]) continue;
            if (wrote) os << '*';
            os << vars.name(v);
            if (t.mono[v] > 1) os << '^' << t.mono[v];
            wrote = true;
        }
    }
    return os.str();
}

bool canonical_less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& x = a.terms()[i];
        const auto& y = b.terms()[i];
        if (x.mono != y.mono) return x.mono > y.mono;
        if (x.coeff != y.coeff) return x.coeff > y.coeff;
    }
    return false;
}


}  // namespace oresub
