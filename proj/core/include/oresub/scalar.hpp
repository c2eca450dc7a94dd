#pragma once

#include "oresub/linalg.hpp"

namespace oresub {

struct SolverConfig {
    unsigned max_degree = 30;      // polynomial ansatz degree cap
    unsigned max_dispersion = 64;  // largest integer shift between denominator factors
    unsigned max_exp_degree = 10;  // degree cap for polynomial parts of log-derivatives
};

// The operator sum_j coeffs[j] phi^j.
struct ScalarOperator {
    DeltaMap map;
    std::vector<RatFunc> coeffs;
    // For derivations: a polynomial vanishing at every place where solutions
    // may be singular, when known. Other zeros of the leading coefficient
    // are then treated as apparent singularities.
    std::optional<Poly> singular;

    std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    RatFunc apply(const RatFunc& z) const;
};

// Hyperexponential h with phi(h)/h = certificate (shift) or phi(h)/h =
// certificate (derivation); the solutions in the class are h * w for w in the
// constant span of multipliers.
struct SolutionClass {
    RatFunc certificate;
    std::vector<RatFunc> multipliers;
};

// Basis over the constants of the map of the rational solutions of op.
std::vector<RatFunc> rational_solutions(const ScalarOperator& op, const SolverConfig& cfg = {});
std::vector<SolutionClass> hypergeometric_solutions(const ScalarOperator& op, const SolverConfig& cfg = {});
std::vector<SolutionClass> exponential_solutions(const ScalarOperator& op, const SolverConfig& cfg = {});
// Dispatches on the kind of the map.
std::vector<SolutionClass> hyperexponential_solutions(const ScalarOperator& op, const SolverConfig& cfg = {});

// Columns: a basis over the constants (and an F-independent set) of the
// rational solutions of phi(Z) = B Z.
MatrixF rational_solutions_matrix(const MatrixF& b, const DeltaMap& map, const SolverConfig& cfg = {});

struct Target {
    DeltaMap map;
    RatFunc value;
};

// z with delta(z) = value for derivations and sigma(z) - z = value for shifts.
std::optional<RatFunc> rational_additive_solve(const std::vector<Target>& targets, const SolverConfig& cfg = {});
// Nonzero z with phi(z) = value * z for every target (derivations: delta(z) = value * z).
std::optional<RatFunc> rational_multiplicative_solve(const std::vector<Target>& targets,
                                                     const SolverConfig& cfg = {});

// Whether two certificates for the same map describe associated elements,
// i.e. differ by the logarithmic form of a rational function.
bool associated(const DeltaMap& map, const RatFunc& a, const RatFunc& b, const SolverConfig& cfg = {});

}  // namespace oresub
