#pragma once

#include "oresub/scalar.hpp"

#include <map>
#include <string>

namespace oresub {

// Action of the module operators on a basis b: d_i(b) = A_i b.
struct StructureMatrices {
    DeltaSet delta;
    std::vector<MatrixF> a;
};

// delta_i(Z) = B_i Z and sigma_j(Z) = B_j Z, one matrix per map of delta.
struct IntegrableSystem {
    DeltaSet delta;
    std::vector<MatrixF> b;

    std::size_t dimension() const { return b.empty() ? 0 : b.front().rows(); }
};

// Compatibility residual for the maps i and j; zero iff the pair commutes on
// solutions.
MatrixF integrability_residual(const IntegrableSystem& sys, std::size_t i, std::size_t j);
// Throws NotIntegrable naming the first failing pair in map order.
void check_integrability(const IntegrableSystem& sys, const VarSet& vars);
// B = -A^T for derivations and (A^-1)^T for shifts, checked for integrability.
IntegrableSystem associated_system(const StructureMatrices& s, const VarSet& vars);

// The values phi(h)/h of a hyperexponential h, keyed by map index. A
// certificate over a subset of the maps carries only those keys.
using Certificate = std::map<std::size_t, RatFunc>;

struct HyperexpGroup {
    Certificate certificate;
    MatrixF vectors;  // n x s, full column rank
};

struct Representation {
    std::vector<HyperexpGroup> groups;
};

struct Residual {
    std::size_t map;
    std::size_t column;
    std::vector<RatFunc> value;
};

struct Verification {
    std::vector<Residual> failures;
    bool passed() const { return failures.empty(); }
};

// The unique basis of the constant span of the columns of v whose coefficient
// matrix over the constants is in reduced column echelon form.
MatrixF canonical_basis(const MatrixF& v, const ConstantField& constants);
// Same, over the constants of the maps the group's certificate covers.
HyperexpGroup canonical_group(const DeltaSet& delta, HyperexpGroup g);

// Rescales a group by a rational function so that its certificate carries no
// part a rational factor accounts for: shift values have no shift-equivalent
// factors across numerator and denominator and each factor orbit sits at a
// fixed offset; derivation values keep simple-pole residues in [0, 1).
// Only maps acting on one variable with unit step are reduced.
HyperexpGroup reduced_group(const DeltaSet& delta, HyperexpGroup g);

// Exact check that every column W of the group makes h W a solution.
Verification verify_group(const IntegrableSystem& sys, const HyperexpGroup& g);

// Scalar compatibility of the certificate values among themselves.
bool certificate_consistent(const DeltaSet& delta, const Certificate& c);

// Eigenvalues f_i with d_i(u) = f_i u of the submodule F u belonging to a group.
Certificate eigenvalues_of(const DeltaSet& delta, const Certificate& c);

// Nonzero r with u -> r v an isomorphism F u -> F v, given their eigenvalues.
std::optional<RatFunc> iso_test(const DeltaSet& delta, const Certificate& f, const Certificate& g,
                                const SolverConfig& cfg = {});

// Eigenvalues of F u when it is a submodule.
std::optional<Certificate> submodule_certificate(const StructureMatrices& s, const std::vector<RatFunc>& u);

// r with cert_b(phi) = cert_a(phi) + ell_phi(r) (derivations) or
// cert_a(phi) * ell_phi(r) (shifts) on every key; absent when inequivalent.
std::optional<RatFunc> associate_witness(const DeltaSet& delta, const Certificate& a, const Certificate& b,
                                         const SolverConfig& cfg = {});

// Familiar closed form such as exp(x/y)*Gamma(k) when one is recognized.
std::optional<std::string> display_certificate(const DeltaSet& delta, const Certificate& c, const VarSet& vars);

}  // namespace oresub
