#include "oresub/univariate.hpp"

#include "oresub/errors.hpp"

#include <algorithm>
#include <map>

namespace oresub {

// ---------------------------------------------------------------- UPoly

namespace upoly {

UPoly from_poly(const Poly& p, std::size_t t) {
    UPoly out;
    for (auto& c : p.coeffs(t)) out.emplace_back(std::move(c));
    trim(out);
    return out;
}

UPoly from_ratfunc(const RatFunc& f, std::size_t t) {
    if (f.den().depends_on(t)) throw InternalInconsistency("from_ratfunc: denominator depends on the main variable");
    RatFunc inv_den = RatFunc(Poly(1), f.den());
    UPoly out = from_poly(f.num(), t);
    for (auto& c : out) c *= inv_den;
    return out;
}

RatFunc to_ratfunc(const UPoly& p, std::size_t t) {
    RatFunc acc;
    RatFunc tv = RatFunc::var(t);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc *= tv;
        acc += p[i];
    }
    return acc;
}

int degree(const UPoly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (!p[i].is_zero()) return static_cast<int>(i);
    return -1;
}

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly add(const UPoly& a, const UPoly& b) {
    UPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

UPoly scale(const UPoly& a, const RatFunc& c) {
    if (c.is_zero()) return {};
    UPoly out = a;
    for (auto& x : out) x *= c;
    return out;
}

UPoly derivative(const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * RatFunc(static_cast<long>(i));
    trim(out);
    return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    int db = degree(b);
    if (db < 0) throw DivisionByZero();
    UPoly r = a;
    trim(r);
    int dr = degree(r);
    if (dr < db) return {{}, r};
    UPoly q(static_cast<std::size_t>(dr - db + 1));
    RatFunc inv = b[db].inverse();
    while (dr >= db) {
        RatFunc c = r[dr] * inv;
        std::size_t s = static_cast<std::size_t>(dr - db);
        for (int i = 0; i <= db; ++i) r[s + i] -= c * b[i];
        q[s] = c;
        r.pop_back();
        trim(r);
        dr = degree(r);
    }
    trim(q);
    return {q, r};
}

UPoly monic(const UPoly& a) {
    int d = degree(a);
    if (d < 0) return {};
    return scale(a, a[d].inverse());
}

namespace {

// Clears denominators: a Poly in Q[all] with the same roots in t.
Poly cleared(const UPoly& a, std::size_t t) {
    RatFunc f = to_ratfunc(a, t);
    return f.num();
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b, std::size_t t) {
    if (degree(a) < 0) return monic(b);
    if (degree(b) < 0) return monic(a);
    Poly g = gcd_poly(cleared(a, t), cleared(b, t), t);
    return monic(from_poly(g, t));
}

UPoly solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c, std::size_t t) {
    (void)t;
    // Extended Euclid on (a, b) tracking the coefficient of a.
    UPoly r0 = a, r1 = b, s0{RatFunc(1)}, s1{};
    trim(r0);
    trim(r1);
    while (degree(r1) >= 0) {
        auto [q, r] = divmod(r0, r1);
        UPoly s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (degree(r0) != 0) throw InternalInconsistency("solve_bezout: arguments not coprime");
    UPoly s = scale(s0, r0[0].inverse());
    return divmod(mul(s, c), b).second;
}

}  // namespace upoly

// ---------------------------------------------------------------- gcd/content

Poly content_in(const Poly& p, std::size_t var) {
    if (p.is_zero()) return Poly();
    if (!p.depends_on(var)) return p.primitive();
    auto cs = p.coeffs(var);
    std::vector<const Poly*> nz;
    for (const auto& c : cs)
        if (!c.is_zero()) nz.push_back(&c);
    std::sort(nz.begin(), nz.end(), [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
    Poly g = nz[0]->primitive();
    for (std::size_t i = 1; i < nz.size() && !g.is_constant(); ++i) g = gcd(g, *nz[i]);
    return g.is_constant() ? Poly(1) : g;
}

Poly primitive_in(const Poly& p, std::size_t var) {
    if (p.is_zero()) return p;
    Poly c = content_in(p, var);
    Poly q = c.is_constant() ? p : exact_div(p, c);
    return q.primitive();
}

Poly gcd_poly(const Poly& a, const Poly& b, std::size_t var) {
    if (a.is_zero() && b.is_zero()) return Poly();
    Poly g = gcd(a, b);
    if (a.is_zero() || b.is_zero()) g = a.is_zero() ? b : a;
    g = primitive_in(g, var);
    if (g.lead_coeff(var).is_constant()) g = g.monic();
    return g;
}

// ---------------------------------------------------------------- square-free

std::vector<std::pair<Poly, unsigned>> squarefree(const Poly& p, std::size_t var) {
    std::vector<std::pair<Poly, unsigned>> out;
    if (p.degree(var) == 0) return out;
    Poly a = primitive_in(p, var);
    Poly da = a.derivative(var);
    Poly c = gcd(a, da);
    Poly b = exact_div(a, c);
    Poly d = exact_div(da, c) - b.derivative(var);
    unsigned i = 1;
    while (b.degree(var) > 0) {
        Poly g = d.is_zero() ? b : gcd(b, d);
        if (g.degree(var) > 0) out.emplace_back(g.primitive(), i);
        b = exact_div(b, g);
        d = exact_div(d, g) - b.derivative(var);
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------- roots

std::optional<Poly> poly_sqrt(const Poly& p) {
    if (p.is_zero()) return Poly();
    const auto& lt = p.leading_term();
    if (sgn(lt.coeff) < 0) return std::nullopt;
    Integer n = lt.coeff.get_num(), d = lt.coeff.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Monomial m;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (lt.mono[v] % 2) return std::nullopt;
        m[v] = static_cast<std::uint16_t>(lt.mono[v] / 2);
    }
    Integer sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    Poly root = Poly::term(m, Rational(sn, sd));
    Poly rem = p - root * root;
    const Poly::Term lead = root.leading_term();
    std::size_t guard = 4 * p.size() + 8;
    while (!rem.is_zero()) {
        if (guard-- == 0) return std::nullopt;
        const auto& rt = rem.leading_term();
        if (!lead.mono.divides(rt.mono)) return std::nullopt;
        Poly t = Poly::term(rt.mono / lead.mono, rt.coeff / (2 * lead.coeff));
        if (!(t.leading_term().mono < lead.mono)) return std::nullopt;
        rem -= (root + root + t) * t;
        root += t;
    }
    return root;
}

namespace {

constexpr unsigned long kTrialLimit = 100000;

// Positive divisors of n > 0, or throws when n cannot be fully factored.
std::vector<Integer> divisors(Integer n) {
    std::vector<std::pair<Integer, unsigned>> primes;
    for (unsigned long p = 2; p <= kTrialLimit && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e) primes.emplace_back(Integer(p), e);
    }
    if (n > 1) {
        if (n > Integer(kTrialLimit) * kTrialLimit && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw FactorizationIncomplete("integer too hard to factor: " + n.get_str());
        primes.emplace_back(n, 1);
    }
    std::vector<Integer> out{Integer(1)};
    for (const auto& [p, e] : primes) {
        std::size_t sz = out.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Rational roots of a polynomial in var only, with integer coefficients.
std::vector<RatFunc> numeric_roots(const Poly& s, std::size_t var) {
    Poly p = s.primitive();
    std::vector<Integer> c(p.degree(var) + 1);
    for (const auto& t : p.terms()) c[t.mono[var]] = t.coeff.get_num();
    std::vector<RatFunc> roots;
    std::size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    if (low > 0) roots.emplace_back(0);
    std::vector<Integer> q(c.begin() + static_cast<long>(low), c.end());
    if (q.size() <= 1) return roots;
    Integer c0 = abs(q.front()), cd = abs(q.back());
    auto num_div = divisors(c0), den_div = divisors(cd);
    std::vector<Rational> found;
    for (const auto& a : num_div)
        for (const auto& b : den_div) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (g != 1) continue;
            for (int sign : {1, -1}) {
                Integer num = sign * a;
                // q(num/b) * b^d = sum q_i num^i b^(d-i)
                Integer acc = 0, bp = 1;
                std::size_t d = q.size() - 1;
                std::vector<Integer> bpow(d + 1);
                for (std::size_t i = 0; i <= d; ++i) bpow[i] = (i == 0 ? Integer(1) : bpow[i - 1] * b);
                for (std::size_t i = d + 1; i-- > 0;) acc = acc * num + q[i] * bpow[d - i];
                (void)bp;
                if (acc == 0) found.emplace_back(num, b);
            }
        }
    for (auto& r : found) {
        r.canonicalize();
        roots.emplace_back(r);
    }
    return roots;
}

using Series = std::vector<RatFunc>;  // truncated power series in one variable

Series series_mul(const Series& a, const Series& b, std::size_t n) {
    Series out(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
    }
    return out;
}

// coeffs[i] is the t^i coefficient as a series in u; evaluates at t = rho.
Series series_eval(const std::vector<Series>& coeffs, const Series& rho, std::size_t n) {
    Series acc(n);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = series_mul(acc, rho, n);
        for (std::size_t j = 0; j < coeffs[i].size() && j < n; ++j) acc[j] += coeffs[i][j];
    }
    return acc;
}

// P/Q with deg P <= dn, deg Q <= dd matching f modulo u^n.
std::optional<RatFunc> pade(const Series& f, std::size_t u, int dn, int dd) {
    std::size_t n = f.size();
    UPoly r0(n + 1), r1 = f, t0, t1{RatFunc(1)};
    r0[n] = RatFunc(1);
    upoly::trim(r1);
    while (upoly::degree(r1) > dn) {
        auto [q, r] = upoly::divmod(r0, r1);
        UPoly t = upoly::sub(t0, upoly::mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (upoly::degree(t1) > dd || upoly::degree(t1) < 0 || t1[0].is_zero()) return std::nullopt;
    return upoly::to_ratfunc(r1, u) / upoly::to_ratfunc(t1, u);
}

bool is_root(const Poly& s, std::size_t var, const RatFunc& rho) { return substitute_poly(s, var, rho).is_zero(); }

std::vector<RatFunc> squarefree_roots(const Poly& s, std::size_t var);

// Roots of a square-free s of degree >= 3 with at least one parameter, by
// specializing one parameter, lifting each root as a power series and
// recovering it with a Pade approximant.
std::vector<RatFunc> lifted_roots(const Poly& s, std::size_t var) {
    VarMask others = s.support() & ~(VarMask{1} << var);
    std::size_t y = kMaxVars;
    unsigned best = ~0u;
    for (std::size_t v = 0; v < kMaxVars; ++v)
        if ((others >> v) & 1u) {
            unsigned d = s.degree(v);
            if (d < best) best = d, y = v;
        }
    unsigned deg = s.degree(var);
    int dn = static_cast<int>(s.coeff(var, 0).degree(y));
    int dd = static_cast<int>(s.lead_coeff(var).degree(y));
    std::size_t order = static_cast<std::size_t>(dn + dd + 1);
    const long tries[] = {0, 1, -1, 2, -2, 3, -3, 5, -5, 7, 11, -11, 13, 17, 19, 23, 29, 31};
    for (long a : tries) {
        Poly shifted = s.shift(y, Rational(a));
        Poly s0 = shifted.evaluate(y, Rational(0));
        if (s0.degree(var) != deg) continue;
        Poly s0p = primitive_in(s0, var);
        if (gcd(s0p, s0p.derivative(var)).degree(var) > 0) continue;
        auto base = squarefree_roots(s0p, var);
        // Series coefficients of shifted in u = y.
        std::vector<Series> coeffs;
        for (const auto& c : shifted.coeffs(var)) {
            Series ser(order);
            auto cy = c.coeffs(y);
            for (std::size_t j = 0; j < cy.size() && j < order; ++j) ser[j] = RatFunc(cy[j]);
            coeffs.push_back(std::move(ser));
        }
        std::vector<Series> dcoeffs;
        for (std::size_t i = 1; i < coeffs.size(); ++i) {
            Series ser = coeffs[i];
            for (auto& x : ser) x *= RatFunc(static_cast<long>(i));
            dcoeffs.push_back(std::move(ser));
        }
        std::vector<RatFunc> out;
        for (const auto& r0 : base) {
            Series rho(order);
            rho[0] = r0;
            RatFunc slope = series_eval(dcoeffs, rho, 1)[0];
            if (slope.is_zero()) continue;
            RatFunc inv = slope.inverse();
            for (std::size_t j = 1; j < order; ++j) {
                Series val = series_eval(coeffs, rho, j + 1);
                rho[j] = -val[j] * inv;
            }
            auto cand = pade(rho, y, dn, dd);
            if (!cand) continue;
            RatFunc root = cand->shift(y, Rational(-a));
            if (is_root(s, var, root)) out.push_back(root);
        }
        return out;
    }
    throw FactorizationIncomplete("no admissible specialization for root finding");
}

std::vector<RatFunc> squarefree_roots(const Poly& s_in, std::size_t var) {
    std::vector<RatFunc> roots;
    Poly s = s_in;
    if (s.degree(var) == 0) return roots;
    if (s.low_degree(var) > 0) {
        roots.emplace_back(0);
        s = exact_div(s, Poly::var(var).pow(s.low_degree(var)));
    }
    unsigned deg = s.degree(var);
    if (deg == 0) return roots;
    if (deg == 1) {
        roots.push_back(-RatFunc(s.coeff(var, 0), s.coeff(var, 1)));
        return roots;
    }
    if (deg == 2) {
        Poly c0 = s.coeff(var, 0), c1 = s.coeff(var, 1), c2 = s.coeff(var, 2);
        Poly disc = c1 * c1 - Poly(4) * c2 * c0;
        // Rational content does not affect squareness over Q(others) only up
        // to squares of numbers; normalize the numeric part first.
        Rational content = disc.content();
        Poly prim = disc.scaled(1 / content);
        auto sq = poly_sqrt(prim);
        Rational cn = content;
        bool numeric_square = sgn(cn) > 0 && mpz_perfect_square_p(cn.get_num_mpz_t()) &&
                              mpz_perfect_square_p(cn.get_den_mpz_t());
        if (sq && numeric_square) {
            Integer a, b;
            mpz_sqrt(a.get_mpz_t(), cn.get_num_mpz_t());
            mpz_sqrt(b.get_mpz_t(), cn.get_den_mpz_t());
            Poly root = sq->scaled(Rational(a, b));
            RatFunc den(c2.scaled(Rational(2)));
            roots.push_back(RatFunc(-c1 + root) / den);
            roots.push_back(RatFunc(-c1 - root) / den);
        }
        return roots;
    }
    VarMask others = s.support() & ~(VarMask{1} << var);
    auto more = others ? lifted_roots(s, var) : numeric_roots(s, var);
    for (auto& r : more) roots.push_back(std::move(r));
    return roots;
}

Poly linear_factor(const RatFunc& root, std::size_t var) {
    // den*var - num, primitive.
    return (root.den() * Poly::var(var) - root.num()).primitive();
}

}  // namespace

std::vector<RatFunc> rational_roots(const Poly& p, std::size_t var) {
    std::vector<RatFunc> out;
    for (const auto& [f, m] : squarefree(p, var))
        for (auto& r : squarefree_roots(f, var)) out.push_back(std::move(r));
    return out;
}

// ---------------------------------------------------------------- factor

bool Factorization::splits() const {
    return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.kind == FactorKind::linear; });
}

bool Factorization::complete() const {
    return std::none_of(factors.begin(), factors.end(),
                        [](const Factor& f) { return f.kind == FactorKind::unverified; });
}

Factorization factor_univariate(const Poly& p, std::size_t var) {
    if (p.is_zero()) throw InternalInconsistency("factor_univariate of zero");
    Factorization out;
    Poly prod(1);
    for (const auto& [sf, mult] : squarefree(p, var)) {
        auto roots = squarefree_roots(sf, var);
        std::vector<Factor> linear;
        Poly rest = sf;
        for (auto& r : roots) {
            Poly lf = linear_factor(r, var);
            rest = exact_div(rest, lf);
            linear.push_back({lf, mult, FactorKind::linear, std::move(r)});
        }
        std::sort(linear.begin(), linear.end(), [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
        for (auto& f : linear) {
            prod *= f.poly.pow(mult);
            out.factors.push_back(std::move(f));
        }
        if (rest.degree(var) > 0) {
            rest = rest.primitive();
            prod *= rest.pow(mult);
            FactorKind kind = rest.degree(var) <= 3 ? FactorKind::irreducible : FactorKind::unverified;
            out.factors.push_back({rest, mult, kind, std::nullopt});
        }
    }
    out.unit = exact_div(p, prod);
    return out;
}

// ---------------------------------------------------------------- partial fractions

RatFunc PartialFractions::recombine() const {
    RatFunc acc = polynomial_part;
    for (const auto& t : terms) acc += t.numerator / RatFunc(t.factor.pow(t.order));
    return acc;
}

PartialFractions partial_fractions(const RatFunc& f, std::size_t var) {
    PartialFractions out;
    const Poly& den = f.den();
    if (!den.depends_on(var)) {
        out.polynomial_part = f;
        return out;
    }
    Factorization fac = factor_univariate(den, var);
    if (!fac.complete()) throw FactorizationIncomplete("denominator does not split into supported factors");
    // den = unit * prod p_i^m_i; fold the unit into the numerator.
    UPoly num = upoly::scale(upoly::from_poly(f.num(), var), RatFunc(Poly(1), fac.unit));
    std::vector<UPoly> blocks;
    UPoly full{RatFunc(1)};
    for (const auto& fc : fac.factors) {
        blocks.push_back(upoly::from_poly(fc.poly.pow(fc.multiplicity), var));
        full = upoly::mul(full, blocks.back());
    }
    auto [quot, rem] = upoly::divmod(num, full);
    out.polynomial_part = upoly::to_ratfunc(quot, var);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        UPoly cofactor = upoly::divmod(full, blocks[i]).first;
        UPoly a = upoly::solve_bezout(cofactor, blocks[i], rem, var);
        UPoly p = upoly::from_poly(fac.factors[i].poly, var);
        unsigned m = fac.factors[i].multiplicity;
        // p-adic expansion a = sum c_j p^j gives c_j / p^(m-j).
        for (unsigned j = 0; j < m && upoly::degree(a) >= 0; ++j) {
            auto [q, c] = upoly::divmod(a, p);
            if (upoly::degree(c) >= 0)
                out.terms.push_back({fac.factors[i].poly, m - j, upoly::to_ratfunc(c, var)});
            a = std::move(q);
        }
    }
    return out;
}

namespace {

UPoly integrate_polynomial(const UPoly& p) {
    UPoly out(p.size() + 1);
    for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / RatFunc(static_cast<long>(i + 1));
    upoly::trim(out);
    return out;
}

}  // namespace

std::optional<RatFunc> rational_antiderivative(const RatFunc& f, std::size_t var) {
    if (f.is_zero()) return RatFunc();
    if (!f.den().depends_on(var))
        return upoly::to_ratfunc(integrate_polynomial(upoly::from_ratfunc(f, var)), var);
    UPoly d = upoly::from_poly(f.den(), var);
    UPoly n = upoly::from_poly(f.num(), var);
    RatFunc lc = d[upoly::degree(d)];
    d = upoly::monic(d);
    n = upoly::scale(n, lc.inverse());
    auto [quot, a] = upoly::divmod(n, d);
    RatFunc result = upoly::to_ratfunc(integrate_polynomial(quot), var);
    // Hermite reduction, linear version.
    UPoly dminus = upoly::gcd(d, upoly::derivative(d), var);
    UPoly dstar = upoly::divmod(d, dminus).first;
    while (upoly::degree(dminus) > 0) {
        UPoly dminus2 = upoly::gcd(dminus, upoly::derivative(dminus), var);
        UPoly dminus_star = upoly::divmod(dminus, dminus2).first;
        UPoly lhs = upoly::scale(upoly::divmod(upoly::mul(dstar, upoly::derivative(dminus)), dminus).first, RatFunc(-1));
        UPoly b = upoly::solve_bezout(lhs, dminus_star, a, var);
        // c from b*lhs + c*dminus_star = a
        UPoly c = upoly::divmod(upoly::sub(a, upoly::mul(b, lhs)), dminus_star).first;
        a = upoly::sub(c, upoly::divmod(upoly::mul(upoly::derivative(b), dstar), dminus_star).first);
        result += upoly::to_ratfunc(b, var) / upoly::to_ratfunc(dminus, var);
        dminus = std::move(dminus2);
    }
    if (upoly::degree(a) >= 0) return std::nullopt;
    return result;
}

}  // namespace oresub
