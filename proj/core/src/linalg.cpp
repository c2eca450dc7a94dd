#include "oresub/linalg.hpp"

#include "oresub/errors.hpp"

#include <algorithm>

namespace oresub {

ScalarEquation minimal_scalar_equation(const MatrixF& b, const DeltaMap& map, std::size_t pivot) {
    if (pivot >= b.rows()) throw Error("minimal_scalar_equation: bad shape or pivot");
    std::vector<RatFunc> start(b.rows());
    start[pivot] = RatFunc(1);
    return minimal_scalar_equation(b, map, start);
}

ScalarEquation minimal_scalar_equation(const MatrixF& b, const DeltaMap& map, const std::vector<RatFunc>& start) {
    std::size_t n = b.rows();
    if (b.cols() != n || start.size() != n) throw Error("minimal_scalar_equation: bad shape");
    if (std::all_of(start.begin(), start.end(), [](const RatFunc& f) { return f.is_zero(); }))
        throw Error("minimal_scalar_equation: zero start row");
    ScalarEquation out;
    std::vector<RatFunc> r = start;
    MatrixF rows(0, n);
    for (std::size_t k = 0; k <= n; ++k) {
        MatrixF rm = MatrixF::row(r);
        if (k > 0) {
            // Solve sum_j a_j r_j = -r_k.
            auto a = solve(rows.transpose(), (RatFunc(-1) * rm).transpose());
            if (a) {
                out.coeffs = a->col_vector(0);
                return out;
            }
        }
        if (k == n) break;
        out.rows.push_back(r);
        rows = MatrixF::vstack(rows, rm);
        MatrixF phi_r = apply(map, rm);
        MatrixF next = map.is_shift() ? phi_r * b : phi_r + rm * b;
        r = next.row_vector(0);
    }
    throw InternalInconsistency("no dependence among n + 1 rows");
}

MatrixF Reduction::dependent_part() const {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < lift.rows(); ++i)
        if (std::find(kept.begin(), kept.end(), i) == kept.end()) rest.push_back(i);
    return lift.select_rows(rest);
}

Reduction linear_reduction(const MatrixF& p, const MatrixF& constraints, const DeltaMap& map) {
    std::size_t n = p.rows();
    Reduction red{p, MatrixF::identity(n), {}};
    for (std::size_t i = 0; i < n; ++i) red.kept.push_back(i);
    MatrixF k = constraints;
    while (red.dimension() > 0 && !k.empty() && !k.is_zero()) {
        std::size_t d = red.dimension();
        auto [reduced, piv] = rref(k);
        std::vector<std::size_t> fr;
        for (std::size_t j = 0; j < d; ++j)
            if (std::find(piv.begin(), piv.end(), j) == piv.end()) fr.push_back(j);
        // X = S X_fr.
        MatrixF s(d, fr.size());
        for (std::size_t c = 0; c < fr.size(); ++c) {
            s(fr[c], c) = RatFunc(1);
            for (std::size_t i = 0; i < piv.size(); ++i) s(piv[i], c) = -reduced(i, fr[c]);
        }
        std::vector<std::size_t> kept;
        for (auto f : fr) kept.push_back(red.kept[f]);
        red.kept = std::move(kept);
        red.lift = red.lift * s;
        if (fr.empty()) {
            red.dynamics = MatrixF(0, 0);
            red.lift = MatrixF(n, 0);
            return red;
        }
        MatrixF ps = red.dynamics * s;
        MatrixF phi_s = apply(map, s);
        MatrixF next = ps.select_rows(fr);
        if (map.is_shift()) {
            k = phi_s.select_rows(piv) * next - ps.select_rows(piv);
        } else {
            next = next - phi_s.select_rows(fr);
            k = s.select_rows(piv) * next + phi_s.select_rows(piv) - ps.select_rows(piv);
        }
        red.dynamics = next;
    }
    if (red.dimension() == 0) red.dynamics = MatrixF(0, 0);
    return red;
}

Reduction linear_reduction_from_pair(const MatrixF& v, const MatrixF& u, const DeltaMap& map) {
    if (v.rows() != u.rows() || u.cols() != v.cols()) throw Error("linear_reduction: shape mismatch");
    std::size_t s = v.cols();
    auto rows = independent_rows(v);
    if (rows.size() != s) throw Error("linear_reduction: V must have full column rank");
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < v.rows(); ++i)
        if (std::find(rows.begin(), rows.end(), i) == rows.end()) rest.push_back(i);
    MatrixF p = inverse(v.select_rows(rows)) * u.select_rows(rows);
    MatrixF k = rest.empty() ? MatrixF(0, s) : v.select_rows(rest) * p - u.select_rows(rest);
    return linear_reduction(p, k, map);
}

}  // namespace oresub
