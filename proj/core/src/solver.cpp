#include "oresub/solver.hpp"

#include "oresub/errors.hpp"

#include <algorithm>
#include <numeric>

namespace oresub {
namespace {

MatrixF independent_part(const MatrixF& m) { return m.select_cols(independent_columns(m)); }

RatFunc combine(const DeltaMap& map, const RatFunc& a, const RatFunc& b) { return map.is_shift() ? a * b : a + b; }

bool certificate_less(const HyperexpGroup& a, const HyperexpGroup& b) {
    auto x = a.certificate.begin(), y = b.certificate.begin();
    for (; x != a.certificate.end() && y != b.certificate.end(); ++x, ++y) {
        if (x->first != y->first) return x->first < y->first;
        if (canonical_less(x->second, y->second)) return true;
        if (canonical_less(y->second, x->second)) return false;
    }
    return a.certificate.size() < b.certificate.size();
}

HyperexpGroup to_user(const Frame& frame, const std::vector<std::size_t>& order, const HyperexpGroup& g) {
    HyperexpGroup out;
    for (const auto& [k, v] : g.certificate) out.certificate[order[k]] = frame.to_user(v);
    out.vectors = frame.to_user(g.vectors);
    return out;
}

}  // namespace

Representation solve_ordinary(const MatrixF& b, const DeltaSet& delta, std::size_t map, const SolveOptions& opt) {
    std::size_t n = b.rows();
    Representation rep;
    if (n == 0) return rep;
    const DeltaMap& phi = delta[map];
    auto eq = minimal_scalar_equation(b, phi, std::min(opt.pivot, n - 1));
    ScalarOperator op{phi, eq.coeffs, std::nullopt};
    op.coeffs.push_back(RatFunc(1));
    if (phi.is_derivation()) {
        Poly poles(1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) poles = lcm(poles, b(i, j).den());
        op.singular = poles;
    }
    std::vector<HyperexpGroup> groups;
    for (const auto& cls : hyperexponential_solutions(op, opt.config)) {
        const RatFunc& r = cls.certificate;
        MatrixF twisted = phi.is_shift() ? r.inverse() * b : b - r * MatrixF::identity(n);
        MatrixF v = rational_solutions_matrix(twisted, phi, opt.config);
        if (v.cols() > 0) groups.push_back({{{map, r}}, v});
    }
    if (eq.order() < n) {
        // Solutions whose pivot coordinate vanishes.
        MatrixF k(0, n);
        for (const auto& row : eq.rows) k = MatrixF::vstack(k, MatrixF::row(row));
        auto red = linear_reduction(b, k, phi);
        if (red.dimension() > 0)
            for (auto& g : solve_ordinary(red.dynamics, delta, map, opt).groups)
                groups.push_back({g.certificate, red.lift * g.vectors});
    }
    rep.groups = merge_groups(delta, std::move(groups), opt.config);
    return rep;
}

std::optional<RatFunc> extend_certificate(const DeltaSet& delta, const Certificate& base, std::size_t map,
                                          const SolverConfig& cfg) {
    const DeltaMap& phi = delta[map];
    std::vector<Target> targets;
    for (const auto& [i, r] : base) {
        if (i == map) throw Error("extend_certificate: map already covered");
        const DeltaMap& psi = delta[i];
        RatFunc moved = apply(phi, r);
        RatFunc value;
        if (phi.is_derivation())
            value = psi.is_derivation() ? moved : moved / r;
        else
            value = psi.is_derivation() ? moved - r : moved / r;
        targets.push_back({psi, value});
    }
    return phi.is_derivation() ? rational_additive_solve(targets, cfg) : rational_multiplicative_solve(targets, cfg);
}

ReducedSystem substitute_and_extract(const IntegrableSystem& sys, const HyperexpGroup& g, std::size_t map,
                                     const RatFunc& ext, const std::vector<std::size_t>& processed) {
    const DeltaMap& phi = sys.delta[map];
    const MatrixF& v = g.vectors;
    const MatrixF& b = sys.b[map];
    MatrixF q = phi.is_derivation() ? v : ext * apply(phi, v);
    MatrixF bk = phi.is_derivation() ? b * v - ext * v - apply(phi, v) : b * v;
    std::size_t n = v.rows(), s = v.cols();
    std::vector<RatFunc> values;
    for (const MatrixF* m : {&q, &bk})
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < s; ++c) values.push_back((*m)(i, c));
    auto dec = coeff_decompose(values, constant_field(sys.delta.subset(processed), kAuxVar));
    ReducedSystem out{map, MatrixF(0, s), MatrixF(0, s)};
    for (std::size_t j = 0; j < dec.basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<RatFunc> urow, wrow;
            for (std::size_t c = 0; c < s; ++c) {
                urow.push_back(dec.coeffs[i * s + c][j]);
                wrow.push_back(dec.coeffs[n * s + i * s + c][j]);
            }
            bool zero = std::all_of(urow.begin(), urow.end(), [](const RatFunc& f) { return f.is_zero(); }) &&
                        std::all_of(wrow.begin(), wrow.end(), [](const RatFunc& f) { return f.is_zero(); });
            if (zero) continue;
            out.u = MatrixF::vstack(out.u, MatrixF::row(urow));
            out.w = MatrixF::vstack(out.w, MatrixF::row(wrow));
        }
    return out;
}

std::vector<HyperexpGroup> merge_groups(const DeltaSet& delta, std::vector<HyperexpGroup> groups,
                                        const SolverConfig& cfg) {
    std::vector<HyperexpGroup> out;
    for (auto& g : groups) {
        bool merged = false;
        for (auto& o : out) {
            auto w = associate_witness(delta, o.certificate, g.certificate, cfg);
            if (!w) continue;
            // h_g = w h_o, so h_g V_g = h_o (w V_g).
            o.vectors = independent_part(MatrixF::hstack(o.vectors, *w * g.vectors));
            merged = true;
            break;
        }
        if (!merged) out.push_back({std::move(g.certificate), independent_part(g.vectors)});
    }
    for (auto& g : out) g = canonical_group(delta, reduced_group(delta, std::move(g)));
    std::sort(out.begin(), out.end(), certificate_less);
    return out;
}

Representation solve_system(const IntegrableSystem& sys, const SolveOptions& opt, SolveTrace* trace) {
    std::size_t m = sys.delta.size();
    if (m == 0) throw Error("solve_system: no maps");
    if (sys.b.size() != m) throw Error("solve_system: one matrix per map is required");
    std::vector<std::size_t> order = opt.order;
    if (order.empty()) {
        order.resize(m);
        std::iota(order.begin(), order.end(), 0);
    }
    {
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < m; ++i)
            if (sorted.size() != m || sorted[i] != i) throw Error("solve_system: order must be a permutation of the maps");
    }
    std::vector<DeltaMap> ordered;
    for (auto i : order) ordered.push_back(sys.delta[i]);
    Frame frame(DeltaSet(ordered), kAuxVar);

    // The whole recursion runs in frame coordinates, where the maps act on
    // separate variables and constants are the functions free of them.
    IntegrableSystem fs{frame.delta(), {}};
    for (auto i : order) fs.b.push_back(frame.to_frame(sys.b[i]));

    auto record_stage = [&](const std::vector<HyperexpGroup>& groups, std::size_t done) {
        if (!trace) return;
        std::vector<std::size_t> user;
        for (std::size_t k = 0; k < done; ++k) user.push_back(order[k]);
        trace->processed.push_back(user);
        std::vector<HyperexpGroup> converted;
        for (const auto& g : groups) converted.push_back(to_user(frame, order, g));
        trace->stages.push_back(std::move(converted));
    };

    std::vector<HyperexpGroup> groups = solve_ordinary(fs.b[0], fs.delta, 0, opt).groups;
    record_stage(groups, 1);
    std::vector<std::size_t> processed{0};
    for (std::size_t k = 1; k < m; ++k) {
        const DeltaMap& phi = fs.delta[k];
        std::vector<HyperexpGroup> next;
        for (const auto& g : groups) {
            auto ext = extend_certificate(fs.delta, g.certificate, k, opt.config);
            if (!ext) continue;
            auto reduced = substitute_and_extract(fs, g, k, *ext, processed);
            auto red = linear_reduction_from_pair(reduced.u, reduced.w, phi);
            if (trace) {
                ReductionRecord rec{{}, order[k], frame.to_user(*ext), {order[k], frame.to_user(reduced.u), frame.to_user(reduced.w)},
                                    frame.to_user(red.dynamics)};
                for (const auto& [i, v] : g.certificate) rec.base[order[i]] = frame.to_user(v);
                trace->reductions.push_back(std::move(rec));
            }
            if (red.dimension() == 0) continue;
            for (const auto& h : solve_ordinary(red.dynamics, fs.delta, k, opt).groups) {
                Certificate cert = g.certificate;
                cert[k] = combine(phi, *ext, h.certificate.at(k));
                MatrixF vectors = independent_part(g.vectors * red.lift * h.vectors);
                next.push_back({std::move(cert), std::move(vectors)});
            }
        }
        groups.clear();
        for (auto& g : next) groups.push_back(canonical_group(fs.delta, std::move(g)));
        processed.push_back(k);
        record_stage(groups, k + 1);
    }
    groups = merge_groups(fs.delta, std::move(groups), opt.config);

    Representation rep;
    for (const auto& g : groups) {
        HyperexpGroup user = to_user(frame, order, g);
        if (!verify_group(sys, user).passed()) throw InternalInconsistency("solver produced a group that fails verification");
        rep.groups.push_back(std::move(user));
    }
    std::sort(rep.groups.begin(), rep.groups.end(), certificate_less);
    return rep;
}

bool equivalent_groups(const DeltaSet& delta, const HyperexpGroup& a, const HyperexpGroup& b, const SolverConfig& cfg) {
    if (a.vectors.cols() != b.vectors.cols() || a.vectors.rows() != b.vectors.rows()) return false;
    auto w = associate_witness(delta, a.certificate, b.certificate, cfg);
    if (!w) return false;
    auto m = solve(a.vectors, *w * b.vectors);
    if (!m || rank(*m) != m->rows()) return false;
    for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < m->cols(); ++j)
            for (const auto& [k, v] : a.certificate)
                if (!is_constant_of(delta[k], (*m)(i, j))) return false;
    return true;
}

bool equivalent(const DeltaSet& delta, const Representation& a, const Representation& b, const SolverConfig& cfg) {
    if (a.groups.size() != b.groups.size()) return false;
    std::vector<bool> used(b.groups.size(), false);
    for (const auto& g : a.groups) {
        bool found = false;
        for (std::size_t j = 0; j < b.groups.size() && !found; ++j)
            if (!used[j] && equivalent_groups(delta, g, b.groups[j], cfg)) found = used[j] = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace oresub
