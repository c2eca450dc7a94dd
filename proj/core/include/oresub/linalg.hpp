#pragma once

#include "oresub/delta.hpp"

namespace oresub {

// phi^k(z) + a_{k-1} phi^{k-1}(z) + ... + a_0 z = 0 for z = Z[pivot], where
// phi^j(z) = rows[j] . Z along solutions of phi(Z) = B Z.
struct ScalarEquation {
    std::vector<RatFunc> coeffs;             // a_0 .. a_{k-1}
    std::vector<std::vector<RatFunc>> rows;  // r_0 .. r_{k-1}
    std::size_t order() const { return coeffs.size(); }
};

ScalarEquation minimal_scalar_equation(const MatrixF& b, const DeltaMap& map, std::size_t pivot);
// Same recurrence started from z = start . Z.
ScalarEquation minimal_scalar_equation(const MatrixF& b, const DeltaMap& map, const std::vector<RatFunc>& start);

// Solutions of the input correspond to solutions of phi(X') = dynamics X'
// through X = lift X'. The coordinates listed in kept appear unchanged in X'
// (lift is the identity on those rows); the others are F-linear in them.
struct Reduction {
    MatrixF dynamics;
    MatrixF lift;
    std::vector<std::size_t> kept;

    std::size_t dimension() const { return kept.size(); }
    // Q with X_rest = Q X_kept, rows ordered as the non-kept coordinates.
    MatrixF dependent_part() const;
};

// phi(X) = p X subject to constraints * X = 0. Returns the empty reduction
// (dimension 0) when only X = 0 survives.
Reduction linear_reduction(const MatrixF& p, const MatrixF& constraints, const DeltaMap& map);
// V phi(Y) = U Y with V of full column rank.
Reduction linear_reduction_from_pair(const MatrixF& v, const MatrixF& u, const DeltaMap& map);

}  // namespace oresub
