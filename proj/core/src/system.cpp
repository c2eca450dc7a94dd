#include "oresub/system.hpp"

#include "oresub/errors.hpp"
#include "oresub/univariate.hpp"

#include <algorithm>
#include <cctype>

namespace oresub {

MatrixF integrability_residual(const IntegrableSystem& sys, std::size_t i, std::size_t j) {
    const DeltaMap& pi = sys.delta[i];
    const DeltaMap& pj = sys.delta[j];
    const MatrixF& bi = sys.b[i];
    const MatrixF& bj = sys.b[j];
    if (pi.is_derivation() && pj.is_derivation())
        return apply(pi, bj) + bj * bi - apply(pj, bi) - bi * bj;
    if (pi.is_derivation()) return apply(pi, bj) + bj * bi - apply(pj, bi) * bj;
    if (pj.is_derivation()) return apply(pj, bi) + bi * bj - apply(pi, bj) * bi;
    return apply(pi, bj) * bi - apply(pj, bi) * bj;
}

void check_integrability(const IntegrableSystem& sys, const VarSet& vars) {
    std::size_t n = sys.dimension();
    if (sys.b.size() != sys.delta.size()) throw Error("one matrix per map is required");
    for (std::size_t i = 0; i < sys.b.size(); ++i) {
        if (sys.b[i].rows() != n || sys.b[i].cols() != n) throw Error("system matrices must be square of equal size");
        if (sys.delta[i].is_shift() && rank(sys.b[i]) < n)
            throw Error("matrix of shift " + sys.delta[i].name + " is singular");
    }
    for (std::size_t i = 0; i < sys.b.size(); ++i)
        for (std::size_t j = i + 1; j < sys.b.size(); ++j) {
            MatrixF r = integrability_residual(sys, i, j);
            if (!r.is_zero()) throw NotIntegrable(sys.delta[i].name, sys.delta[j].name, to_string(r, vars));
        }
}

IntegrableSystem associated_system(const StructureMatrices& s, const VarSet& vars) {
    if (s.a.size() != s.delta.size()) throw Error("one structure matrix per map is required");
    IntegrableSystem sys{s.delta, {}};
    for (std::size_t i = 0; i < s.a.size(); ++i)
        sys.b.push_back(s.delta[i].is_derivation() ? RatFunc(-1) * s.a[i].transpose() : inverse(s.a[i]).transpose());
    check_integrability(sys, vars);
    return sys;
}

MatrixF canonical_basis(const MatrixF& v, const ConstantField& constants) {
    std::size_t n = v.rows(), s = v.cols();
    if (s == 0) return v;
    std::vector<RatFunc> values;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < s; ++c) values.push_back(v(i, c));
    auto dec = coeff_decompose(values, constants);
    std::size_t terms = dec.basis.size();
    // Row c holds the coefficients of column c, entry-major.
    MatrixF coeffs(s, n * terms);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < s; ++c)
            for (std::size_t t = 0; t < terms; ++t) coeffs(c, i * terms + t) = dec.coeffs[i * s + c][t];
    auto ech = rref(coeffs);
    if (ech.reduced.rows() != s) throw Error("canonical_basis: columns are dependent over the constants");
    MatrixF out(n, s);
    for (std::size_t c = 0; c < s; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < terms; ++t) out(i, c) += ech.reduced(c, i * terms + t) * dec.basis[t];
    return out;
}

HyperexpGroup canonical_group(const DeltaSet& delta, HyperexpGroup g) {
    std::vector<std::size_t> keys;
    for (const auto& [i, v] : g.certificate) keys.push_back(i);
    g.vectors = canonical_basis(g.vectors, constant_field(delta.subset(keys), kAuxVar));
    return g;
}

namespace {

std::optional<std::size_t> unit_axis(const DeltaMap& map) {
    if (map.action.size() != 1 || map.action[0].second != 1) return std::nullopt;
    return map.action[0].first;
}

// Integer part of the numeric constant term, for a value polynomial in the
// remaining variables; zero otherwise.
long integer_offset(const RatFunc& s) {
    if (!s.is_polynomial()) return 0;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), s.num().constant_term().get_num_mpz_t(), s.num().constant_term().get_den_mpz_t());
    return q.fits_slong_p() ? q.get_si() : 0;
}

// Offset s of p in t: p(t + h) has offset s + h.
RatFunc orbit_offset(const Poly& p, std::size_t t) {
    unsigned d = p.degree(t);
    return RatFunc(p.coeff(t, d - 1)) / (RatFunc(p.coeff(t, d)) * RatFunc(static_cast<long>(d)));
}

// C with C(t + 1) / C(t) = q(t + h) / q(t).
RatFunc shift_gauge(const Poly& q, std::size_t t, long h) {
    RatFunc c(1);
    if (h > 0)
        for (long i = 0; i < h; ++i) c *= RatFunc(q.shift(t, Rational(i)));
    else
        for (long i = 0; i < -h; ++i) c /= RatFunc(q.shift(t, Rational(h + i)));
    return c;
}

// Divides h by w: solutions h * v become (h / w) * (w * v).
void rescale(const DeltaSet& delta, HyperexpGroup& g, const RatFunc& w) {
    for (auto& [i, v] : g.certificate) {
        RatFunc lf = log_form(delta[i], w);
        v = delta[i].is_derivation() ? v - lf : v / lf;
    }
    g.vectors = w * g.vectors;
}

struct SignedFactor {
    Poly poly;
    int exponent;
};

std::vector<SignedFactor> signed_factors(const RatFunc& r, std::size_t t) {
    std::vector<SignedFactor> out;
    for (const auto& f : factor_univariate(r.num(), t).factors)
        out.push_back({f.poly, static_cast<int>(f.multiplicity)});
    for (const auto& f : factor_univariate(r.den(), t).factors)
        out.push_back({f.poly, -static_cast<int>(f.multiplicity)});
    return out;
}

// One reduction step for a shift value; the gauge to divide by, if any.
std::optional<RatFunc> shift_step(const RatFunc& r, std::size_t t) {
    if (r.is_zero()) return std::nullopt;
    auto fs = signed_factors(r, t);
    for (const auto& p : fs) {
        if (p.exponent < 0) continue;
        for (const auto& q : fs) {
            if (q.exponent > 0 || q.poly.degree(t) != p.poly.degree(t)) continue;
            RatFunc h = orbit_offset(p.poly, t) - orbit_offset(q.poly, t);
            if (!h.is_constant() || h.constant_value().get_den() != 1) continue;
            long step = h.constant_value().get_num().get_si();
            if (!(RatFunc(p.poly) / RatFunc(q.poly.shift(t, Rational(step)))).is_constant()) continue;
            int m = std::min(p.exponent, -q.exponent);
            return shift_gauge(q.poly, t, step).pow(m);
        }
    }
    for (const auto& p : fs) {
        long n = integer_offset(orbit_offset(p.poly, t));
        if (n == 0) continue;
        // p = p'(t + n) with p' = p(t - n).
        return shift_gauge(p.poly.shift(t, Rational(-n)), t, n).pow(p.exponent);
    }
    return std::nullopt;
}

std::optional<RatFunc> derivation_step(const RatFunc& r, std::size_t t) {
    if (r.den().degree(t) == 0) return std::nullopt;
    for (const auto& term : partial_fractions(r, t).terms) {
        if (term.order != 1) continue;
        RatFunc rho = term.numerator / RatFunc(term.factor.derivative(t));
        if (rho.depends_on(t)) continue;
        long n = integer_offset(rho);
        if (n != 0) return RatFunc(term.factor).pow(static_cast<int>(n));
    }
    return std::nullopt;
}

}  // namespace

HyperexpGroup reduced_group(const DeltaSet& delta, HyperexpGroup g) {
    constexpr int kMaxSteps = 64;
    int steps = 0;
    bool changed = true;
    while (changed && steps < kMaxSteps) {
        changed = false;
        for (auto& [i, v] : g.certificate) {
            auto t = unit_axis(delta[i]);
            if (!t) continue;
            auto w = delta[i].is_shift() ? shift_step(v, *t) : derivation_step(v, *t);
            if (!w) continue;
            rescale(delta, g, *w);
            changed = true;
            if (++steps == kMaxSteps) break;
        }
    }
    return g;
}

Verification verify_group(const IntegrableSystem& sys, const HyperexpGroup& g) {
    Verification out;
    std::size_t n = sys.dimension();
    if (g.vectors.rows() != n) {
        out.failures.push_back({0, 0, {}});
        return out;
    }
    for (std::size_t i = 0; i < sys.delta.size(); ++i) {
        auto it = g.certificate.find(i);
        const DeltaMap& map = sys.delta[i];
        // A missing key means the trivial value.
        RatFunc ell = it != g.certificate.end() ? it->second : RatFunc(map.is_shift() ? 1 : 0);
        if (map.is_shift() && ell.is_zero()) {
            out.failures.push_back({i, 0, {}});
            continue;
        }
        MatrixF lhs = apply(map, g.vectors);
        MatrixF rhs = map.is_derivation() ? sys.b[i] * g.vectors - ell * g.vectors : ell.inverse() * (sys.b[i] * g.vectors);
        MatrixF diff = lhs - rhs;
        for (std::size_t c = 0; c < diff.cols(); ++c) {
            auto col = diff.select_cols({c});
            if (!col.is_zero()) out.failures.push_back({i, c, col.col_vector(0)});
        }
    }
    return out;
}

bool certificate_consistent(const DeltaSet& delta, const Certificate& c) {
    for (auto a = c.begin(); a != c.end(); ++a)
        for (auto b = std::next(a); b != c.end(); ++b) {
            const DeltaMap& pa = delta[a->first];
            const DeltaMap& pb = delta[b->first];
            const RatFunc& ra = a->second;
            const RatFunc& rb = b->second;
            bool ok;
            if (pa.is_derivation() && pb.is_derivation())
                ok = apply(pa, rb) == apply(pb, ra);
            else if (pa.is_derivation())
                ok = apply(pa, rb) == (apply(pb, ra) - ra) * rb;
            else if (pb.is_derivation())
                ok = apply(pb, ra) == (apply(pa, rb) - rb) * ra;
            else
                ok = apply(pa, rb) * ra == apply(pb, ra) * rb;
            if (!ok) return false;
        }
    return true;
}

Certificate eigenvalues_of(const DeltaSet& delta, const Certificate& c) {
    Certificate out;
    for (const auto& [i, v] : c) out[i] = delta[i].is_derivation() ? -v : v.inverse();
    return out;
}

std::optional<RatFunc> iso_test(const DeltaSet& delta, const Certificate& f, const Certificate& g,
                                const SolverConfig& cfg) {
    std::vector<Target> targets;
    for (const auto& [i, fi] : f) {
        auto it = g.find(i);
        if (it == g.end()) throw Error("iso_test: eigenvalue tuples cover different maps");
        targets.push_back({delta[i], delta[i].is_derivation() ? fi - it->second : fi / it->second});
    }
    return rational_multiplicative_solve(targets, cfg);
}

std::optional<Certificate> submodule_certificate(const StructureMatrices& s, const std::vector<RatFunc>& u) {
    if (std::all_of(u.begin(), u.end(), [](const RatFunc& f) { return f.is_zero(); }))
        throw Error("submodule_certificate: zero vector");
    MatrixF uc = MatrixF::column(u);
    std::size_t pivot = 0;
    while (u[pivot].is_zero()) ++pivot;
    Certificate out;
    for (std::size_t i = 0; i < s.delta.size(); ++i) {
        const DeltaMap& map = s.delta[i];
        MatrixF image = map.is_derivation() ? apply(map, uc) + s.a[i].transpose() * uc
                                            : s.a[i].transpose() * apply(map, uc);
        RatFunc f = image(pivot, 0) / u[pivot];
        if (!(image - f * uc).is_zero()) return std::nullopt;
        out[i] = f;
    }
    return out;
}

std::optional<RatFunc> associate_witness(const DeltaSet& delta, const Certificate& a, const Certificate& b,
                                         const SolverConfig& cfg) {
    std::vector<Target> targets;
    for (const auto& [i, va] : a) {
        auto it = b.find(i);
        RatFunc vb = it != b.end() ? it->second : RatFunc(delta[i].is_shift() ? 1 : 0);
        targets.push_back({delta[i], delta[i].is_derivation() ? vb - va : vb / va});
    }
    for (const auto& [i, vb] : b)
        if (!a.count(i)) targets.push_back({delta[i], vb});
    return rational_multiplicative_solve(targets, cfg);
}

namespace {

// Parenthesized for use as the base of a power.
std::string wrapped(const std::string& s) {
    bool plain = std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
    return plain ? s : "(" + s + ")";
}

// Parenthesized for use as a factor of a product.
std::string factor(const std::string& s) {
    bool sum = s.find_first_of("+-/", 1) != std::string::npos;
    return sum ? "(" + s + ")" : s;
}

std::string power(const std::string& base, long m) {
    if (m == 1) return base;
    return base + "^" + (m < 0 ? "(" + std::to_string(m) + ")" : std::to_string(m));
}

// c^t prod Gamma(t - rho)^m for a shift quotient in the variable t.
std::optional<std::vector<std::string>> gamma_form(const RatFunc& value, std::size_t t, const VarSet& vars) {
    std::vector<std::string> parts;
    RatFunc rest = value;
    for (int side = 0; side < 2; ++side) {
        const Poly& p = side == 0 ? value.num() : value.den();
        long sign = side == 0 ? 1 : -1;
        for (const auto& f : factor_univariate(p, t).factors) {
            if (f.kind != FactorKind::linear || !f.root) return std::nullopt;
            RatFunc lin = RatFunc::var(t) - *f.root;
            int m = static_cast<int>(f.multiplicity) * static_cast<int>(sign);
            rest /= lin.pow(m);
            parts.push_back(power("Gamma(" + to_string(lin, vars) + ")", m));
        }
    }
    if (rest.depends_on(t)) return std::nullopt;
    if (!rest.is_one()) parts.insert(parts.begin(), wrapped(to_string(rest, vars)) + "^" + vars.name(t));
    return parts;
}

}  // namespace

std::optional<std::string> display_certificate(const DeltaSet& delta, const Certificate& c, const VarSet& vars) {
    std::vector<Target> derivations;
    VarMask derivation_moved = 0, shift_moved = 0;
    for (const auto& [i, v] : c) {
        if (delta[i].is_derivation()) {
            derivation_moved |= delta[i].moved();
            if (!v.is_zero()) derivations.push_back({delta[i], v});
        } else {
            shift_moved |= delta[i].moved();
        }
    }
    std::vector<std::string> parts;
    if (!derivations.empty()) {
        auto invariant = [&](const RatFunc& f) {
            for (const auto& [i, v] : c)
                if (delta[i].is_shift() && apply(delta[i], f) != f) return false;
            return true;
        };
        if (auto e = rational_additive_solve(derivations); e && invariant(*e)) {
            parts.push_back("exp(" + to_string(*e, vars) + ")");
        } else if (auto r = rational_multiplicative_solve(derivations); r && invariant(*r)) {
            parts.push_back(factor(to_string(*r, vars)));
        } else {
            return std::nullopt;
        }
    }
    for (const auto& [i, v] : c) {
        const DeltaMap& map = delta[i];
        if (map.is_derivation() || v.is_one()) continue;
        if (map.action.size() != 1 || map.action[0].second != 1) return std::nullopt;
        std::size_t t = map.action[0].first;
        VarMask others = (shift_moved & ~(VarMask{1} << t)) | derivation_moved;
        if (v.support() & others) return std::nullopt;
        if (derivation_moved >> t & 1u) return std::nullopt;
        auto g = gamma_form(v, t, vars);
        if (!g) return std::nullopt;
        parts.insert(parts.end(), g->begin(), g->end());
    }
    if (parts.empty()) return "1";
    std::string out = parts.front();
    for (std::size_t k = 1; k < parts.size(); ++k) out += "*" + parts[k];
    return out;
}

}  // namespace oresub
