#include "oresub/delta.hpp"

#include "oresub/errors.hpp"

#include <algorithm>
#include <map>
#include <functional>

namespace oresub {

// ---------------------------------------------------------------- maps

namespace {

std::vector<std::pair<std::size_t, Rational>> clean_action(std::vector<std::pair<std::size_t, Rational>> action) {
    std::sort(action.begin(), action.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::size_t, Rational>> out;
    for (auto& [v, c] : action) {
        if (v >= kAuxVar) throw Error("map acts on an unknown variable");
        if (!out.empty() && out.back().first == v) throw Error("variable listed twice in a map action");
        if (sgn(c) != 0) out.emplace_back(v, c);
    }
    if (out.empty()) throw Error("a map must move at least one variable");
    return out;
}

}  // namespace

DeltaMap DeltaMap::derivation(std::string name, std::vector<std::pair<std::size_t, Rational>> action) {
    return {std::move(name), MapKind::derivation, clean_action(std::move(action))};
}

DeltaMap DeltaMap::shift(std::string name, std::vector<std::pair<std::size_t, Rational>> action) {
    return {std::move(name), MapKind::shift, clean_action(std::move(action))};
}

Rational DeltaMap::coefficient(std::size_t v) const {
    for (const auto& [w, c] : action)
        if (w == v) return c;
    return Rational(0);
}

VarMask DeltaMap::moved() const {
    VarMask m = 0;
    for (const auto& [v, c] : action) m |= VarMask{1} << v;
    return m;
}

Poly apply(const DeltaMap& map, const Poly& p) {
    if (map.is_derivation()) {
        Poly out;
        for (const auto& [v, c] : map.action)
            if (p.depends_on(v)) out += p.derivative(v).scaled(c);
        return out;
    }
    if ((p.support() & map.moved()) == 0) return p;
    if (map.action.size() == 1) return p.shift(map.action[0].first, map.action[0].second);
    std::vector<Poly> images;
    for (std::size_t v = 0; v < kMaxVars; ++v) images.push_back(Poly::var(v) + Poly(map.coefficient(v)));
    return p.compose(images);
}

RatFunc apply(const DeltaMap& map, const RatFunc& f) {
    if ((f.support() & map.moved()) == 0) return map.is_derivation() ? RatFunc() : f;
    if (map.is_derivation()) {
        RatFunc out;
        for (const auto& [v, c] : map.action)
            if (f.depends_on(v)) out += f.derivative(v) * RatFunc(c);
        return out;
    }
    if (map.action.size() == 1) return f.shift(map.action[0].first, map.action[0].second);
    std::vector<Poly> images;
    for (std::size_t v = 0; v < kMaxVars; ++v) images.push_back(Poly::var(v) + Poly(map.coefficient(v)));
    return f.compose(images);
}

MatrixF apply(const DeltaMap& map, const MatrixF& m) {
    return m.map([&map](const RatFunc& f) { return apply(map, f); });
}

RatFunc log_form(const DeltaMap& map, const RatFunc& h) {
    return apply(map, h) / h;
}

bool is_constant_of(const DeltaMap& map, const RatFunc& f) {
    RatFunc g = apply(map, f);
    return map.is_derivation() ? g.is_zero() : g == f;
}

DeltaSet::DeltaSet(std::vector<DeltaMap> maps, VarMask parameters) : maps_(std::move(maps)), parameters_(parameters) {
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (maps_[i].moved() & parameters_)
            throw Error("map '" + maps_[i].name + "' acts on a parameter");
        for (std::size_t j = 0; j < i; ++j)
            if (maps_[i].name == maps_[j].name) throw Error("duplicate map name '" + maps_[i].name + "'");
    }
    // Constant-coefficient derivations and translations always commute, so
    // the commutation requirement holds by construction.
}

std::optional<std::size_t> DeltaSet::index(const std::string& name) const {
    for (std::size_t i = 0; i < maps_.size(); ++i)
        if (maps_[i].name == name) return i;
    return std::nullopt;
}

DeltaSet DeltaSet::subset(const std::vector<std::size_t>& indices) const {
    std::vector<DeltaMap> maps;
    for (auto i : indices) maps.push_back(maps_.at(i));
    return DeltaSet(std::move(maps), parameters_);
}

// ---------------------------------------------------------------- frame

Frame::Frame(const DeltaSet& delta, std::size_t num_vars) : user_delta_(delta), num_vars_(num_vars) {
    std::size_t k = delta.size();
    MatrixF dirs(k, num_vars);
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& [v, c] : delta[i].action) {
            if (v >= num_vars) throw Error("map acts on an undeclared variable");
            dirs(i, v) = RatFunc(c);
        }
    auto ech = rref(dirs);
    if (ech.pivots.size() != k)
        throw UnsupportedDeltaStructure("map directions are linearly dependent; no coordinate frame separates them");
    // Assign each map the pivot column of the echelon form of the directions
    // seen so far, so the axis of map i depends only on maps 0..i.
    std::vector<std::size_t> axes;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> first(i + 1);
        for (std::size_t j = 0; j <= i; ++j) first[j] = j;
        auto piv = rref(dirs.select_rows(first)).pivots;
        for (auto p : piv)
            if (std::find(axes.begin(), axes.end(), p) == axes.end()) {
                axes.push_back(p);
                break;
            }
    }
    axes_ = axes;
    // G = identity with column axis_i replaced by the direction of map i.
    MatrixF g = MatrixF::identity(num_vars);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t v = 0; v < num_vars; ++v) g(v, axes_[i]) = dirs(i, v);
    identity_ = g.is_identity();
    MatrixF ginv = identity_ ? g : inverse(g);
    for (std::size_t v = 0; v < num_vars; ++v) {
        Poly ximg, yimg;
        for (std::size_t u = 0; u < num_vars; ++u) {
            if (!g(v, u).is_zero()) ximg += Poly::var(u).scaled(g(v, u).constant_value());
            if (!ginv(v, u).is_zero()) yimg += Poly::var(u).scaled(ginv(v, u).constant_value());
        }
        user_images_.push_back(ximg);
        frame_images_.push_back(yimg);
    }
    std::vector<DeltaMap> maps;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& m = delta[i];
        maps.push_back({m.name, m.kind, {{axes_[i], Rational(1)}}});
    }
    frame_delta_ = DeltaSet(std::move(maps), delta.parameters());
}

RatFunc Frame::to_frame(const RatFunc& f) const { return identity_ ? f : f.compose(user_images_); }

RatFunc Frame::to_user(const RatFunc& f) const { return identity_ ? f : f.compose(frame_images_); }

MatrixF Frame::to_frame(const MatrixF& m) const {
    if (identity_) return m;
    return m.map([this](const RatFunc& f) { return to_frame(f); });
}

MatrixF Frame::to_user(const MatrixF& m) const {
    if (identity_) return m;
    return m.map([this](const RatFunc& f) { return to_user(f); });
}

ConstantField::ConstantField(Frame frame, std::vector<std::size_t> map_indices)
    : frame_(std::move(frame)), maps_(std::move(map_indices)) {
    for (auto i : maps_) active_ |= VarMask{1} << frame_.axis(i);
}

bool ConstantField::contains(const RatFunc& user_value) const { return contains_frame(frame_.to_frame(user_value)); }

ConstantField constant_field(const DeltaSet& subset, std::size_t num_vars) {
    std::vector<std::size_t> all(subset.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return ConstantField(Frame(subset, num_vars), all);
}

// ---------------------------------------------------------------- decomposition

namespace {

// Splits p = (part free of active) * (part whose content over the active
// variables is trivial).
std::pair<Poly, Poly> split_active(const Poly& p, VarMask active) {
    if ((p.support() & active) == 0) return {p, Poly(1)};
    if ((p.support() & ~active) == 0) {
        Rational c = p.content();
        return {Poly(c), p.scaled(1 / c)};
    }
    // Group terms by their active monomial; the inactive content is the gcd.
    std::map<Monomial, std::vector<Poly::Term>> groups;
    for (const auto& t : p.terms()) {
        Monomial act, rest = t.mono;
        for (std::size_t v = 0; v < kMaxVars; ++v)
            if ((active >> v) & 1u) act[v] = t.mono[v], rest[v] = 0;
        groups[act].push_back({rest, t.coeff});
    }
    Poly g;
    for (auto& [m, terms] : groups) {
        g = gcd(g, Poly::from_terms(terms));
        if (g.is_constant()) break;
    }
    if (g.is_constant()) {
        Rational c = p.content();
        return {Poly(c), p.scaled(1 / c)};
    }
    Poly rest = exact_div(p, g);
    Rational c = rest.content();
    return {g.scaled(c), rest.scaled(1 / c)};
}

}  // namespace

Decomposition coeff_decompose(const std::vector<RatFunc>& values, VarMask active) {
    Decomposition out;
    // Common active denominator.
    std::vector<std::pair<Poly, Poly>> dens;
    Poly common(1);
    for (const auto& f : values) {
        auto sp = split_active(f.den(), active);
        if (!sp.second.is_constant()) common = lcm(common, sp.second);
        dens.push_back(std::move(sp));
    }
    std::map<Monomial, std::size_t, std::greater<>> index;
    std::vector<std::map<Monomial, RatFunc, std::greater<>>> per_value(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const auto& f = values[k];
        if (f.is_zero()) continue;
        Poly scaled = f.num() * exact_div(common, dens[k].second);
        RatFunc inv_inactive(Poly(1), dens[k].first);
        std::map<Monomial, std::vector<Poly::Term>> groups;
        for (const auto& t : scaled.terms()) {
            Monomial act, rest = t.mono;
            for (std::size_t v = 0; v < kMaxVars; ++v)
                if ((active >> v) & 1u) act[v] = t.mono[v], rest[v] = 0;
            groups[act].push_back({rest, t.coeff});
        }
        for (auto& [m, terms] : groups) {
            per_value[k][m] = RatFunc(Poly::from_terms(std::move(terms))) * inv_inactive;
            index.emplace(m, 0);
        }
    }
    std::size_t s = 0;
    for (auto& [m, i] : index) {
        i = s++;
        out.basis.push_back(RatFunc(Poly::term(m, 1), common));
    }
    out.coeffs.assign(values.size(), std::vector<RatFunc>(s));
    for (std::size_t k = 0; k < values.size(); ++k)
        for (auto& [m, c] : per_value[k]) out.coeffs[k][index[m]] = c;
    return out;
}

Decomposition coeff_decompose(const std::vector<RatFunc>& values, const ConstantField& constants) {
    const Frame& fr = constants.frame();
    std::vector<RatFunc> framed;
    framed.reserve(values.size());
    for (const auto& f : values) framed.push_back(fr.to_frame(f));
    Decomposition d = coeff_decompose(framed, constants.active());
    for (auto& b : d.basis) b = fr.to_user(b);
    for (auto& row : d.coeffs)
        for (auto& c : row) c = fr.to_user(c);
    return d;
}

// ---------------------------------------------------------------- dependence

unsigned ThetaMonomial::order() const {
    unsigned s = 0;
    for (auto e : exponents) s += e;
    return s;
}

std::vector<ThetaMonomial> theta_monomials(std::size_t num_maps, unsigned max_order) {
    std::vector<ThetaMonomial> out;
    for (unsigned ord = 0; ord <= max_order; ++ord) {
        // Exponent vectors of total ord in lexicographically decreasing order.
        std::vector<unsigned> e(num_maps, 0);
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
            if (num_maps == 0) {
                if (left == 0) out.push_back({e});
                return;
            }
            if (i + 1 == num_maps) {
                e[i] = left;
                out.push_back({e});
                return;
            }
            for (unsigned k = left + 1; k-- > 0;) {
                e[i] = k;
                rec(i + 1, left - k);
            }
            e[i] = 0;
        };
        rec(0, ord);
        if (num_maps == 0) break;
    }
    return out;
}

Dependence dependence_over_constants(const std::vector<RatFunc>& values, const DeltaSet& delta) {
    std::size_t s = values.size();
    Dependence out;
    if (s == 0) return out;
    auto thetas = theta_monomials(delta.size(), static_cast<unsigned>(s - 1));
    std::map<std::vector<unsigned>, std::vector<RatFunc>> cache;
    MatrixF w(0, s);
    std::size_t current_rank = 0;
    for (const auto& th : thetas) {
        std::vector<RatFunc> row;
        if (th.order() == 0) {
            row = values;
        } else {
            // theta = phi_j * theta' with j the first map in theta.
            std::size_t j = 0;
            while (th.exponents[j] == 0) ++j;
            auto prev = th.exponents;
            prev[j] -= 1;
            const auto& base = cache.at(prev);
            for (const auto& f : base) row.push_back(apply(delta[j], f));
        }
        cache[th.exponents] = row;
        MatrixF next = MatrixF::vstack(w, MatrixF::row(row));
        std::size_t r = rank(next);
        if (r > current_rank) {
            w = std::move(next);
            current_rank = r;
        }
        if (current_rank == s) return out;
    }
    MatrixF ns = nullspace(w);
    if (ns.cols() == 0) throw InternalInconsistency("rank deficiency without a kernel vector");
    out.independent = false;
    out.coefficients = ns.col_vector(0);
    for (const auto& c : out.coefficients)
        for (const auto& m : delta.maps())
            if (!is_constant_of(m, c))
                throw InternalInconsistency("dependence coefficient is not a constant");
    RatFunc sum;
    for (std::size_t i = 0; i < s; ++i) sum += out.coefficients[i] * values[i];
    if (!sum.is_zero()) throw InternalInconsistency("dependence relation does not vanish");
    return out;
}

}  // namespace oresub
