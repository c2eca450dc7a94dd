#include "oresub/scalar.hpp"

#include "oresub/errors.hpp"
#include "oresub/univariate.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace oresub {
namespace {

// Unknown of indicial, characteristic and exponent polynomials.
constexpr std::size_t kE = kAuxVar;

Rational binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

// e (e - 1) ... (e - j + 1)
Poly falling(unsigned j) {
    Poly p(1);
    for (unsigned i = 0; i < j; ++i) p *= Poly::var(kE) - Poly(static_cast<long>(i));
    return p;
}

bool is_integer(const RatFunc& f) { return f.is_constant() && f.constant_value().get_den() == 1; }

long to_long(const RatFunc& f) { return f.constant_value().get_num().get_si(); }

bool is_axis_map(const DeltaMap& m) { return m.action.size() == 1 && m.action[0].second == 1; }

// Polynomial coefficients proportional to c, without trailing zeros.
std::vector<Poly> clear(const std::vector<RatFunc>& c) {
    Poly common(1);
    for (const auto& f : c)
        if (!f.is_zero()) common = lcm(common, f.den());
    std::vector<Poly> out;
    Poly g;
    for (const auto& f : c) {
        out.push_back(f.is_zero() ? Poly() : f.num() * exact_div(common, f.den()));
        g = gcd(g, out.back());
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    if (!g.is_zero() && !g.is_one())
        for (auto& p : out)
            if (!p.is_zero()) p = exact_div(p, g);
    return out;
}

std::vector<RatFunc> as_ratfuncs(const std::vector<Poly>& p) {
    std::vector<RatFunc> out;
    for (const auto& q : p) out.emplace_back(q);
    return out;
}

// The map as the derivation d/dt or the shift t -> t + 1 on a single variable.
struct Axis {
    MapKind kind;
    std::size_t t;

    bool shift() const { return kind == MapKind::shift; }
    RatFunc phi(const RatFunc& f) const { return shift() ? f.shift(t, Rational(1)) : f.derivative(t); }
    Poly phi(const Poly& p) const { return shift() ? p.shift(t, Rational(1)) : p.derivative(t); }
    RatFunc sigma(const RatFunc& f, long k) const { return f.shift(t, Rational(k)); }
    Poly sigma(const Poly& p, long k) const { return p.shift(t, Rational(k)); }
};

// Coordinates in which every given map acts on its own variable.
class AxisView {
public:
    explicit AxisView(const std::vector<DeltaMap>& maps) {
        VarMask seen = 0;
        bool direct = true;
        for (const auto& m : maps) {
            if (!is_axis_map(m) || (seen >> m.action[0].first & 1u)) {
                direct = false;
                break;
            }
            seen |= VarMask{1} << m.action[0].first;
        }
        if (direct) {
            for (const auto& m : maps) axes_.push_back({m.kind, m.action[0].first});
            return;
        }
        frame_ = Frame(DeltaSet(maps), kAuxVar);
        for (std::size_t i = 0; i < maps.size(); ++i) axes_.push_back({maps[i].kind, frame_->axis(i)});
    }

    const Axis& axis(std::size_t i = 0) const { return axes_[i]; }
    RatFunc in(const RatFunc& f) const { return frame_ ? frame_->to_frame(f) : f; }
    RatFunc out(const RatFunc& f) const { return frame_ ? frame_->to_user(f) : f; }
    MatrixF in(const MatrixF& m) const { return frame_ ? frame_->to_frame(m) : m; }
    MatrixF out(const MatrixF& m) const { return frame_ ? frame_->to_user(m) : m; }
    std::vector<RatFunc> in(const std::vector<RatFunc>& v) const {
        std::vector<RatFunc> r;
        for (const auto& f : v) r.push_back(in(f));
        return r;
    }

private:
    std::optional<Frame> frame_;
    std::vector<Axis> axes_;
};

// Integer roots in var of a polynomial whose other variables are symbols.
std::vector<long> integer_roots(const Poly& p, std::size_t var) {
    if (p.is_zero()) throw InternalInconsistency("integer roots of the zero polynomial");
    std::map<Monomial, std::vector<Poly::Term>> groups;
    for (const auto& term : p.terms()) {
        Monomial rest = term.mono;
        rest[var] = 0;
        groups[rest].push_back({Monomial::var(var, term.mono[var]), term.coeff});
    }
    // Every group must vanish; search the one of smallest degree.
    Poly best;
    for (auto& [m, terms] : groups) {
        Poly g = Poly::from_terms(terms);
        if (!g.depends_on(var)) return {};
        if (best.is_zero() || g.degree(var) < best.degree(var)) best = g;
    }
    std::vector<long> out;
    for (const auto& r : rational_roots(best, var)) {
        if (!is_integer(r)) continue;
        if (p.evaluate(var, r.constant_value()).is_zero()) out.push_back(to_long(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- places

struct Indicial {
    std::vector<RatFunc> components;  // coefficients of t^i modulo the place, polynomial in e
    bool regular = false;
};

// (v_p(f), (f / p^v) mod p)
std::pair<unsigned, UPoly> local_unit(UPoly f, const UPoly& p) {
    unsigned v = 0;
    for (;;) {
        auto [q, r] = upoly::divmod(f, p);
        if (upoly::degree(r) >= 0) return {v, r};
        f = std::move(q);
        ++v;
    }
}

// Indicial polynomial of the derivation operator a at the irreducible p.
Indicial indicial_at(const std::vector<Poly>& a, std::size_t t, const UPoly& p) {
    std::size_t k = a.size() - 1;
    UPoly dp = upoly::divmod(upoly::derivative(p), p).second;
    std::vector<std::optional<std::pair<unsigned, UPoly>>> local(k + 1);
    long best = LONG_MAX;
    for (std::size_t j = 0; j <= k; ++j) {
        if (a[j].is_zero()) continue;
        local[j] = local_unit(upoly::from_poly(a[j], t), p);
        best = std::min(best, static_cast<long>(local[j]->first) - static_cast<long>(j));
    }
    Indicial out;
    out.regular = static_cast<long>(local[k]->first) - static_cast<long>(k) == best;
    out.components.assign(static_cast<std::size_t>(upoly::degree(p)), RatFunc());
    UPoly dpj{RatFunc(1)};
    for (std::size_t j = 0; j <= k; ++j) {
        if (local[j] && static_cast<long>(local[j]->first) - static_cast<long>(j) == best) {
            UPoly c = upoly::divmod(upoly::mul(local[j]->second, dpj), p).second;
            RatFunc ff(falling(static_cast<unsigned>(j)));
            for (std::size_t i = 0; i < c.size(); ++i) out.components[i] += c[i] * ff;
        }
        dpj = upoly::divmod(upoly::mul(dpj, dp), p).second;
    }
    return out;
}

unsigned root_multiplicity(Poly f, const RatFunc& root) {
    Poly lin = root.den() * Poly::var(kE) - root.num();
    unsigned m = 0;
    while (auto q = try_divide(f, lin)) {
        f = std::move(*q);
        ++m;
    }
    return m;
}

struct IndicialRoots {
    std::vector<RatFunc> roots;  // roots in the coefficient field
    bool splits = false;
};

IndicialRoots indicial_roots(const Indicial& ind) {
    std::vector<Poly> comps;
    for (const auto& c : ind.components)
        if (!c.is_zero()) comps.push_back(c.num());
    IndicialRoots out;
    if (comps.empty()) throw InternalInconsistency("vanishing indicial polynomial");
    auto smallest = std::min_element(comps.begin(), comps.end(),
                                     [](const Poly& a, const Poly& b) { return a.degree(kE) < b.degree(kE); });
    unsigned degree = 0;
    for (const auto& c : comps) degree = std::max(degree, c.degree(kE));
    unsigned counted = 0;
    for (const auto& r : rational_roots(*smallest, kE)) {
        unsigned m = UINT_MAX;
        for (const auto& c : comps) m = std::min(m, root_multiplicity(c, r));
        if (m == 0) continue;
        out.roots.push_back(r);
        counted += m;
    }
    out.splits = counted == degree;
    return out;
}

Factorization complete_factorization(const Poly& p, std::size_t t, const char* what) {
    auto f = factor_univariate(p, t);
    if (!f.complete()) throw FactorizationIncomplete(std::string("could not factor the ") + what);
    return f;
}

// The factors of lc that also divide singular, with their multiplicities in lc.
Poly singular_part(Poly lc, const Poly* singular) {
    if (!singular) return lc;
    Poly out(1);
    for (;;) {
        Poly g = gcd(lc, *singular);
        if (g.total_degree() == 0) return out;
        out *= g;
        lc = exact_div(lc, g);
    }
}

// ---------------------------------------------------------------- polynomial solutions

std::vector<Poly> polynomial_solutions(const std::vector<Poly>& m, const Axis& ax, const SolverConfig& cfg) {
    std::size_t k = m.size() - 1;
    std::size_t t = ax.t;
    std::vector<Poly> b = m;
    if (ax.shift()) {
        b.assign(k + 1, Poly());
        for (std::size_t i = 0; i <= k; ++i)
            for (std::size_t j = i; j <= k; ++j)
                b[i] += m[j].scaled(binomial(static_cast<unsigned>(j), static_cast<unsigned>(i)));
    }
    long top = LONG_MIN;
    for (std::size_t j = 0; j <= k; ++j)
        if (!b[j].is_zero()) top = std::max(top, static_cast<long>(b[j].degree(t)) - static_cast<long>(j));
    Poly ind;
    for (std::size_t j = 0; j <= k; ++j)
        if (!b[j].is_zero() && static_cast<long>(b[j].degree(t)) - static_cast<long>(j) == top)
            ind += b[j].lead_coeff(t) * falling(static_cast<unsigned>(j));
    long bound = -1;
    for (long r : integer_roots(ind, kE)) bound = std::max(bound, r);
    if (bound < 0) return {};
    if (bound > static_cast<long>(cfg.max_degree))
        throw DegreeBoundExceeded("polynomial solution degree bound " + std::to_string(bound) + " exceeds the limit");

    std::vector<Poly> images;
    unsigned rows = 1;
    for (long i = 0; i <= bound; ++i) {
        Poly ti = Poly::var(t).pow(static_cast<unsigned>(i));
        Poly img, d = ti;
        for (std::size_t j = 0; j <= k; ++j) {
            if (!m[j].is_zero()) img += m[j] * (ax.shift() ? ti.shift(t, Rational(static_cast<long>(j))) : d);
            if (!ax.shift()) d = d.derivative(t);
        }
        rows = std::max(rows, img.degree(t) + 1);
        images.push_back(std::move(img));
    }
    MatrixF mat(rows, images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto cs = images[i].coeffs(t);
        for (std::size_t r = 0; r < cs.size(); ++r) mat(r, i) = RatFunc(cs[r]);
    }
    MatrixF ns = nullspace(mat);
    std::vector<Poly> out;
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        Poly common(1);
        for (std::size_t i = 0; i < ns.rows(); ++i) common = lcm(common, ns(i, c).den());
        Poly p;
        for (std::size_t i = 0; i < ns.rows(); ++i)
            if (!ns(i, c).is_zero())
                p += ns(i, c).num() * exact_div(common, ns(i, c).den()) * Poly::var(t).pow(static_cast<unsigned>(i));
        out.push_back(p.primitive());
    }
    return out;
}

// ---------------------------------------------------------------- denominators

Poly derivation_denominator(const std::vector<Poly>& a, std::size_t t, const Poly* singular) {
    Poly u(1);
    for (const auto& f : complete_factorization(singular_part(a.back(), singular), t, "leading coefficient").factors) {
        auto roots = indicial_roots(indicial_at(a, t, upoly::from_poly(f.poly, t)));
        long mu = 0;
        for (const auto& r : roots.roots)
            if (is_integer(r)) mu = std::max(mu, -to_long(r));
        if (mu > 0) u *= f.poly.pow(static_cast<unsigned>(mu));
    }
    return u;
}

// Nonnegative h with q(t + h) proportional to p, for irreducible p and q.
std::optional<long> shift_distance(const Poly& p, const Poly& q, std::size_t t) {
    unsigned d = p.degree(t);
    if (d == 0 || q.degree(t) != d) return std::nullopt;
    RatFunc hp = RatFunc(p.coeff(t, d - 1)) / RatFunc(p.coeff(t, d));
    RatFunc hq = RatFunc(q.coeff(t, d - 1)) / RatFunc(q.coeff(t, d));
    RatFunc h = (hp - hq) / RatFunc(static_cast<long>(d));
    if (!is_integer(h) || to_long(h) < 0) return std::nullopt;
    long hv = to_long(h);
    if (q.shift(t, Rational(hv)).primitive() != p.primitive()) return std::nullopt;
    return hv;
}

Poly shift_denominator(const std::vector<Poly>& a, const Axis& ax, const SolverConfig& cfg) {
    std::size_t t = ax.t;
    long k = static_cast<long>(a.size()) - 1;
    Poly A = a.front(), B = ax.sigma(a.back(), -k);
    std::vector<long> dispersions;
    auto fa = factor_univariate(A, t), fb = factor_univariate(B, t);
    if (fa.complete() && fb.complete()) {
        for (const auto& p : fa.factors)
            for (const auto& q : fb.factors)
                if (auto h = shift_distance(q.poly, p.poly, t)) dispersions.push_back(*h);
    } else {
        for (long h = 0; h <= static_cast<long>(cfg.max_dispersion); ++h)
            if (gcd_poly(ax.sigma(A, h), B, t).depends_on(t)) dispersions.push_back(h);
    }
    std::sort(dispersions.begin(), dispersions.end(), std::greater<>());
    dispersions.erase(std::unique(dispersions.begin(), dispersions.end()), dispersions.end());
    Poly u(1);
    for (long h : dispersions) {
        if (h > static_cast<long>(cfg.max_dispersion))
            throw DegreeBoundExceeded("dispersion " + std::to_string(h) + " exceeds the limit");
        Poly d = gcd_poly(ax.sigma(A, h), B, t);
        if (!d.depends_on(t)) continue;
        A = exact_div(A, ax.sigma(d, -h));
        B = exact_div(B, d);
        for (long i = 0; i <= h; ++i) u *= ax.sigma(d, -i);
    }
    return u;
}

// ---------------------------------------------------------------- rational solutions

// singular, when given, holds every place where solutions may fail to be
// regular; other zeros of the leading coefficient are apparent.
std::vector<RatFunc> rational_solutions_axis(const std::vector<RatFunc>& coeffs, const Axis& ax,
                                             const SolverConfig& cfg, const Poly* singular = nullptr) {
    auto a = clear(coeffs);
    if (a.empty()) throw Error("rational_solutions: zero operator");
    if (a.size() == 1) return {};
    std::size_t skip = 0;
    if (ax.shift())
        while (a[skip].is_zero()) ++skip;
    if (skip > 0) {
        std::vector<RatFunc> rest(coeffs.begin() + static_cast<long>(skip), coeffs.end());
        std::vector<RatFunc> out;
        for (const auto& z : rational_solutions_axis(rest, ax, cfg, singular)) out.push_back(ax.sigma(z, -static_cast<long>(skip)));
        return out;
    }
    Poly u = ax.shift() ? shift_denominator(a, ax, cfg) : derivation_denominator(a, ax.t, singular);
    std::vector<Poly> m = a;
    if (!u.is_one()) {
        std::vector<RatFunc> c(a.size());
        if (ax.shift()) {
            for (std::size_t j = 0; j < a.size(); ++j)
                c[j] = RatFunc(a[j]) / RatFunc(ax.sigma(u, static_cast<long>(j)));
        } else {
            // a_j d^j (P w) with w = 1/U expanded by Leibniz.
            std::vector<RatFunc> dw{RatFunc(Poly(1), u)};
            for (std::size_t j = 1; j < a.size(); ++j) dw.push_back(dw.back().derivative(ax.t));
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = i; j < a.size(); ++j)
                    c[i] += RatFunc(a[j]) * RatFunc(binomial(static_cast<unsigned>(j), static_cast<unsigned>(i))) *
                            dw[j - i];
        }
        m = clear(c);
    }
    std::vector<RatFunc> out;
    for (const auto& p : polynomial_solutions(m, ax, cfg)) out.emplace_back(p, u);
    return out;
}

// Nonzero z with phi(z) = b z (derivations: z' = b z).
std::optional<RatFunc> first_order_solution(const RatFunc& b, const Axis& ax, const SolverConfig& cfg) {
    if (ax.shift() && b.is_zero()) throw Error("shift certificate must be nonzero");
    if (ax.shift() ? b.is_one() : b.is_zero()) return RatFunc(1);
    if (!b.depends_on(ax.t)) return std::nullopt;
    auto sols = rational_solutions_axis({-b, RatFunc(1)}, ax, cfg);
    if (sols.empty()) return std::nullopt;
    return sols.front();
}

bool associated_axis(const RatFunc& a, const RatFunc& b, const Axis& ax, const SolverConfig& cfg) {
    return first_order_solution(ax.shift() ? a / b : a - b, ax, cfg).has_value();
}

// Coefficients of L(h .) / h for phi(h) = r h (shift) or h'/h = r (derivation).
std::vector<RatFunc> twist(const std::vector<RatFunc>& a, const RatFunc& r, const Axis& ax) {
    std::vector<RatFunc> out(a.size());
    if (ax.shift()) {
        RatFunc prod(1);
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[j] = a[j] * prod;
            prod *= ax.sigma(r, static_cast<long>(j));
        }
        return out;
    }
    std::vector<RatFunc> power{RatFunc(1)};  // (d + r)^j as an operator
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (std::size_t i = 0; i < power.size(); ++i) out[i] += a[j] * power[i];
        std::vector<RatFunc> next(power.size() + 1);
        for (std::size_t i = 0; i < power.size(); ++i) {
            next[i] += power[i].derivative(ax.t) + r * power[i];
            next[i + 1] += power[i];
        }
        power = std::move(next);
    }
    return out;
}

// Groups candidate certificates into classes with nonempty multipliers.
std::vector<SolutionClass> collect_classes(const std::vector<RatFunc>& coeffs, const std::vector<RatFunc>& candidates,
                                           const Axis& ax, const SolverConfig& cfg, const Poly* singular) {
    std::vector<SolutionClass> out;
    for (const auto& r : candidates) {
        bool known = false;
        for (const auto& c : out)
            if (associated_axis(r, c.certificate, ax, cfg)) {
                known = true;
                break;
            }
        if (known) continue;
        auto mult = rational_solutions_axis(twist(coeffs, r, ax), ax, cfg, singular);
        if (!mult.empty()) out.push_back({r, std::move(mult)});
    }
    return out;
}

// ---------------------------------------------------------------- shift: hypergeometric

std::vector<Poly> monic_divisors(const Factorization& f) {
    std::vector<Poly> out{Poly(1)};
    for (const auto& fac : f.factors) {
        std::vector<Poly> next;
        for (const auto& d : out) {
            Poly pw(1);
            for (unsigned e = 0; e <= fac.multiplicity; ++e) {
                next.push_back(d * pw);
                pw *= fac.poly;
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<RatFunc> hypergeometric_candidates(const std::vector<RatFunc>& coeffs, const Axis& ax,
                                               const SolverConfig& cfg) {
    auto a = clear(coeffs);
    std::size_t skip = 0;
    while (skip < a.size() && a[skip].is_zero()) ++skip;
    if (skip > 0) {
        std::vector<RatFunc> rest(as_ratfuncs(a));
        rest.erase(rest.begin(), rest.begin() + static_cast<long>(skip));
        std::vector<RatFunc> out;
        for (const auto& r : hypergeometric_candidates(rest, ax, cfg)) out.push_back(ax.sigma(r, -static_cast<long>(skip)));
        return out;
    }
    std::size_t k = a.size() - 1;
    if (k == 0) return {};
    if (k == 1) return {-RatFunc(a[0]) / RatFunc(a[1])};
    std::size_t t = ax.t;
    auto divisors_a = monic_divisors(complete_factorization(a.front(), t, "trailing coefficient"));
    auto divisors_b = monic_divisors(
        complete_factorization(ax.sigma(a.back(), -static_cast<long>(k) + 1), t, "leading coefficient"));
    std::vector<RatFunc> out;
    for (const auto& A : divisors_a) {
        std::vector<Poly> a_shift{Poly(1)};  // prod_{i<j} A(t+i)
        for (std::size_t j = 1; j <= k; ++j) a_shift.push_back(a_shift.back() * ax.sigma(A, static_cast<long>(j) - 1));
        for (const auto& B : divisors_b) {
            std::vector<Poly> b_shift(k + 1, Poly(1));  // prod_{j<=i<k} B(t+i)
            for (std::size_t j = k; j-- > 0;) b_shift[j] = b_shift[j + 1] * ax.sigma(B, static_cast<long>(j));
            std::vector<Poly> p(k + 1);
            unsigned d = 0;
            for (std::size_t j = 0; j <= k; ++j) {
                p[j] = a[j] * a_shift[j] * b_shift[j];
                if (!p[j].is_zero()) d = std::max(d, p[j].degree(t));
            }
            Poly chi;
            for (std::size_t j = 0; j <= k; ++j)
                if (!p[j].is_zero()) chi += p[j].coeff(t, d) * Poly::var(kE).pow(static_cast<unsigned>(j));
            for (const auto& z : rational_roots(chi, kE)) {
                if (z.is_zero()) continue;
                std::vector<RatFunc> eq(k + 1);
                RatFunc zj(1);
                for (std::size_t j = 0; j <= k; ++j) {
                    eq[j] = zj * RatFunc(p[j]);
                    zj *= z;
                }
                auto cs = polynomial_solutions(clear(eq), ax, cfg);
                if (cs.empty()) continue;
                const Poly& c = cs.front();
                out.push_back(z * RatFunc(A, B) * RatFunc(ax.sigma(c, 1), c));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- derivation: exponential

// Polynomial parts of logarithmic derivatives, by Newton polygons at infinity.
void polynomial_parts(const std::vector<RatFunc>& coeffs, const Axis& ax, const RatFunc& acc, long below,
                      const SolverConfig& cfg, std::vector<RatFunc>& out) {
    out.push_back(acc);
    auto a = clear(coeffs);
    std::size_t t = ax.t;
    std::vector<long> slopes;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (a[i].is_zero() || a[j].is_zero()) continue;
            long num = static_cast<long>(a[i].degree(t)) - static_cast<long>(a[j].degree(t));
            long den = static_cast<long>(j - i);
            if (num < 0 || num % den != 0) continue;
            long s = num / den;
            if (s >= below) continue;
            long top = LONG_MIN;
            int count = 0;
            for (std::size_t l = 0; l < a.size(); ++l) {
                if (a[l].is_zero()) continue;
                long v = static_cast<long>(a[l].degree(t)) + s * static_cast<long>(l);
                if (v > top) {
                    top = v;
                    count = 1;
                } else if (v == top) {
                    ++count;
                }
            }
            long here = static_cast<long>(a[i].degree(t)) + s * static_cast<long>(i);
            if (here == top && count >= 2) slopes.push_back(s);
        }
    std::sort(slopes.begin(), slopes.end());
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
    for (long s : slopes) {
        if (s > static_cast<long>(cfg.max_exp_degree))
            throw DegreeBoundExceeded("exponential part of degree " + std::to_string(s) + " exceeds the limit");
        long top = LONG_MIN;
        for (std::size_t l = 0; l < a.size(); ++l)
            if (!a[l].is_zero()) top = std::max(top, static_cast<long>(a[l].degree(t)) + s * static_cast<long>(l));
        Poly chi;
        for (std::size_t l = 0; l < a.size(); ++l)
            if (!a[l].is_zero() && static_cast<long>(a[l].degree(t)) + s * static_cast<long>(l) == top)
                chi += a[l].lead_coeff(t) * Poly::var(kE).pow(static_cast<unsigned>(l));
        for (const auto& c : rational_roots(chi, kE)) {
            if (c.is_zero()) continue;
            RatFunc term = c * RatFunc(Poly::var(t).pow(static_cast<unsigned>(s)));
            polynomial_parts(twist(coeffs, term, ax), ax, acc + term, s, cfg, out);
        }
    }
}

// Principal parts of order >= 2 at t = c of logarithmic derivatives of
// solutions: t = c + 1/s turns them into polynomial parts at s = infinity.
std::vector<RatFunc> polar_parts(const std::vector<RatFunc>& coeffs, const Axis& ax, const RatFunc& c,
                                 const SolverConfig& cfg) {
    std::size_t t = ax.t;
    RatFunc s = RatFunc::var(t);
    RatFunc minus_s2 = RatFunc(-1) * s * s;
    RatFunc to_place = c + s.inverse();
    std::vector<RatFunc> moved(coeffs.size());
    std::vector<RatFunc> power{RatFunc(1)};  // (-s^2 d/ds)^j
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        RatFunc aj = coeffs[j].substitute(t, to_place);
        for (std::size_t i = 0; i < power.size(); ++i) moved[i] += aj * power[i];
        std::vector<RatFunc> next(power.size() + 1);
        for (std::size_t i = 0; i < power.size(); ++i) {
            next[i] += minus_s2 * power[i].derivative(t);
            next[i + 1] += minus_s2 * power[i];
        }
        power = std::move(next);
    }
    std::vector<RatFunc> parts;
    polynomial_parts(moved, ax, RatFunc(), LONG_MAX, cfg, parts);
    RatFunc back = (RatFunc::var(t) - c).inverse();
    std::vector<RatFunc> out;
    for (const auto& p : parts) out.push_back(RatFunc(-1) * back * back * p.substitute(t, back));
    return out;
}

std::vector<RatFunc> exponential_candidates(const std::vector<RatFunc>& coeffs, const Axis& ax,
                                            const SolverConfig& cfg, const Poly* singular) {
    auto a = clear(coeffs);
    std::size_t k = a.size() - 1;
    if (k == 0) return {};
    if (k == 1) return {-RatFunc(a[0]) / RatFunc(a[1])};
    std::size_t t = ax.t;
    std::vector<std::vector<RatFunc>> options;
    // An apparent place only carries integer exponents, whose class adds nothing.
    for (const auto& f : complete_factorization(singular_part(a.back(), singular), t, "leading coefficient").factors) {
        std::vector<RatFunc> polar{RatFunc()};
        if (!indicial_at(a, t, upoly::from_poly(f.poly, t)).regular) {
            if (!f.root) throw UnsupportedSingularity("irregular singular point at a nonlinear place");
            polar = polar_parts(coeffs, ax, *f.root, cfg);
        }
        std::vector<RatFunc> contrib;
        for (const auto& p : polar) {
            // Residues come from the slope-zero edge, also for irregular places.
            auto ind = indicial_at(clear(twist(coeffs, p, ax)), t, upoly::from_poly(f.poly, t));
            auto roots = indicial_roots(ind);
            if (f.poly.degree(t) > 1 && !roots.splits)
                throw UnsupportedSingularity("indicial polynomial does not split at a nonlinear place");
            std::vector<RatFunc> reps;
            bool integer_class = false;
            for (const auto& r : roots.roots) {
                if (is_integer(r)) {
                    integer_class = true;
                    continue;
                }
                bool seen = false;
                for (const auto& q : reps) seen = seen || is_integer(r - q);
                if (!seen) reps.push_back(r);
            }
            if (integer_class) contrib.push_back(p);
            RatFunc log_derivative(f.poly.derivative(t), f.poly);
            for (const auto& r : reps) contrib.push_back(p + r * log_derivative);
        }
        if (contrib.empty()) return {};
        options.push_back(std::move(contrib));
    }
    std::vector<RatFunc> sums;
    polynomial_parts(coeffs, ax, RatFunc(), LONG_MAX, cfg, sums);
    for (const auto& opt : options) {
        std::vector<RatFunc> next;
        for (const auto& s : sums)
            for (const auto& c : opt) next.push_back(s + c);
        sums = std::move(next);
    }
    return sums;
}

std::vector<SolutionClass> classes_out(std::vector<SolutionClass> classes, const AxisView& view) {
    for (auto& c : classes) {
        c.certificate = view.out(c.certificate);
        for (auto& m : c.multipliers) m = view.out(m);
    }
    std::sort(classes.begin(), classes.end(), [](const SolutionClass& x, const SolutionClass& y) {
        return canonical_less(x.certificate, y.certificate);
    });
    return classes;
}

// ---------------------------------------------------------------- staged solves

std::optional<RatFunc> additive_axis(const RatFunc& b, const Axis& ax, const SolverConfig& cfg) {
    if (b.is_zero()) return RatFunc();
    if (!ax.shift()) return rational_antiderivative(b, ax.t);
    RatFunc sb = ax.sigma(b, 1);
    for (const auto& z : rational_solutions_axis({sb, -(b + sb), b}, ax, cfg)) {
        RatFunc lambda = (ax.sigma(z, 1) - z) / b;
        if (!lambda.is_zero()) return z / lambda;
    }
    return std::nullopt;
}

}  // namespace

RatFunc ScalarOperator::apply(const RatFunc& z) const {
    RatFunc sum, cur = z;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (j > 0) cur = oresub::apply(map, cur);
        sum += coeffs[j] * cur;
    }
    return sum;
}

std::vector<RatFunc> rational_solutions(const ScalarOperator& op, const SolverConfig& cfg) {
    AxisView view({op.map});
    std::vector<RatFunc> out;
    for (const auto& z : rational_solutions_axis(view.in(op.coeffs), view.axis(), cfg)) out.push_back(view.out(z));
    return out;
}

std::vector<SolutionClass> hypergeometric_solutions(const ScalarOperator& op, const SolverConfig& cfg) {
    if (!op.map.is_shift()) throw Error("hypergeometric_solutions needs a shift");
    AxisView view({op.map});
    auto coeffs = view.in(op.coeffs);
    auto candidates = hypergeometric_candidates(coeffs, view.axis(), cfg);
    return classes_out(collect_classes(coeffs, candidates, view.axis(), cfg, nullptr), view);
}

std::vector<SolutionClass> exponential_solutions(const ScalarOperator& op, const SolverConfig& cfg) {
    if (!op.map.is_derivation()) throw Error("exponential_solutions needs a derivation");
    AxisView view({op.map});
    auto coeffs = view.in(op.coeffs);
    std::optional<Poly> singular;
    if (op.singular) singular = view.in(RatFunc(*op.singular)).num();
    const Poly* places = singular ? &*singular : nullptr;
    auto candidates = exponential_candidates(coeffs, view.axis(), cfg, places);
    return classes_out(collect_classes(coeffs, candidates, view.axis(), cfg, places), view);
}

std::vector<SolutionClass> hyperexponential_solutions(const ScalarOperator& op, const SolverConfig& cfg) {
    return op.map.is_shift() ? hypergeometric_solutions(op, cfg) : exponential_solutions(op, cfg);
}

MatrixF rational_solutions_matrix(const MatrixF& b, const DeltaMap& map, const SolverConfig& cfg) {
    std::size_t n = b.rows();
    if (b.cols() != n) throw Error("rational_solutions_matrix: matrix must be square");
    if (n == 0) return MatrixF(0, 0);
    AxisView view({map});
    const Axis& ax = view.axis();
    MatrixF bb = view.in(b);
    DeltaMap axis_map = ax.shift() ? DeltaMap::shift(map.name, {{ax.t, Rational(1)}})
                                   : DeltaMap::derivation(map.name, {{ax.t, Rational(1)}});

    std::vector<std::vector<RatFunc>> starts;
    for (std::size_t i = 0; i < n; ++i) {
        starts.emplace_back(n);
        starts.back()[i] = RatFunc(1);
    }
    starts.emplace_back(n, RatFunc(1));
    starts.emplace_back();
    for (std::size_t i = 0; i < n; ++i) starts.back().push_back(RatFunc::var(ax.t).pow(static_cast<int>(i)));
    for (long seed = 2; seed < 12; ++seed) {
        starts.emplace_back();
        for (std::size_t i = 0; i < n; ++i)
            starts.back().push_back(RatFunc((seed * static_cast<long>(i + 3)) % 7 - 3) +
                                    RatFunc(seed % 3) * RatFunc::var(ax.t).pow(static_cast<int>(i % 3)));
    }
    // Solutions of a derivation system are regular away from the poles of B.
    Poly poles(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) poles = lcm(poles, bb(i, j).den());
    for (const auto& start : starts) {
        if (std::all_of(start.begin(), start.end(), [](const RatFunc& f) { return f.is_zero(); })) continue;
        auto eq = minimal_scalar_equation(bb, axis_map, start);
        if (eq.order() != n) continue;
        MatrixF r(0, n);
        for (const auto& row : eq.rows) r = MatrixF::vstack(r, MatrixF::row(row));
        MatrixF r_inv = inverse(r);
        std::vector<RatFunc> coeffs = eq.coeffs;
        coeffs.push_back(RatFunc(1));
        auto sols = rational_solutions_axis(coeffs, ax, cfg, ax.shift() ? nullptr : &poles);
        MatrixF out(n, sols.size());
        for (std::size_t c = 0; c < sols.size(); ++c) {
            std::vector<RatFunc> iterates{sols[c]};
            for (std::size_t j = 1; j < n; ++j) iterates.push_back(ax.phi(iterates.back()));
            MatrixF z = r_inv * MatrixF::column(iterates);
            for (std::size_t i = 0; i < n; ++i) out(i, c) = z(i, 0);
        }
        return view.out(out);
    }
    throw InternalInconsistency("no cyclic vector found");
}

std::optional<RatFunc> rational_additive_solve(const std::vector<Target>& targets, const SolverConfig& cfg) {
    if (targets.empty()) return RatFunc();
    std::vector<DeltaMap> maps;
    for (const auto& tg : targets) maps.push_back(tg.map);
    AxisView view(maps);
    RatFunc z;
    VarMask processed = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Axis& ax = view.axis(i);
        RatFunc b = view.in(targets[i].value) - (ax.shift() ? ax.phi(z) - z : ax.phi(z));
        if (b.support() & processed) return std::nullopt;
        auto c = additive_axis(b, ax, cfg);
        if (!c) return std::nullopt;
        z += *c;
        processed |= VarMask{1} << ax.t;
    }
    return view.out(z);
}

std::optional<RatFunc> rational_multiplicative_solve(const std::vector<Target>& targets, const SolverConfig& cfg) {
    if (targets.empty()) return RatFunc(1);
    std::vector<DeltaMap> maps;
    for (const auto& tg : targets) maps.push_back(tg.map);
    AxisView view(maps);
    RatFunc z(1);
    VarMask processed = 0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Axis& ax = view.axis(i);
        RatFunc b = view.in(targets[i].value);
        b = ax.shift() ? b * z / ax.phi(z) : b - ax.phi(z) / z;
        if (b.support() & processed) return std::nullopt;
        auto c = first_order_solution(b, ax, cfg);
        if (!c) return std::nullopt;
        z *= *c;
        processed |= VarMask{1} << ax.t;
    }
    return view.out(z);
}

bool associated(const DeltaMap& map, const RatFunc& a, const RatFunc& b, const SolverConfig& cfg) {
    return rational_multiplicative_solve({{map, map.is_shift() ? a / b : a - b}}, cfg).has_value();
}

}  // namespace oresub
