#pragma once

#include "oresub/system.hpp"

namespace oresub {

struct SolveOptions {
    std::vector<std::size_t> order;  // map processing order; empty means input order
    std::size_t pivot = 0;           // coordinate used for the scalar equation
    SolverConfig config;
};

// U phi(D) = W D over the constants of the maps processed so far.
struct ReducedSystem {
    std::size_t map = 0;
    MatrixF u, w;
};

struct ReductionRecord {
    Certificate base;
    std::size_t map = 0;
    RatFunc extension;
    ReducedSystem reduced;
    MatrixF dynamics;
};

// Intermediate results, in processing order.
struct SolveTrace {
    std::vector<std::vector<std::size_t>> processed;
    std::vector<std::vector<HyperexpGroup>> stages;  // groups over the maps processed so far
    std::vector<ReductionRecord> reductions;
};

// Groups for phi(Z) = B Z with phi = delta[map]; certificates are keyed by map.
Representation solve_ordinary(const MatrixF& b, const DeltaSet& delta, std::size_t map, const SolveOptions& opt = {});

// Value of phi(h')/h' for an extension h' of the base certificate to
// phi = delta[map]; absent when none exists.
std::optional<RatFunc> extend_certificate(const DeltaSet& delta, const Certificate& base, std::size_t map,
                                          const SolverConfig& cfg = {});

// The system for D in Z = h' V D where h' extends the group's certificate
// by ext, split over the constants of the maps in processed.
ReducedSystem substitute_and_extract(const IntegrableSystem& sys, const HyperexpGroup& g, std::size_t map,
                                     const RatFunc& ext, const std::vector<std::size_t>& processed);

// Fuses groups with associated certificates and keeps independent columns.
std::vector<HyperexpGroup> merge_groups(const DeltaSet& delta, std::vector<HyperexpGroup> groups,
                                        const SolverConfig& cfg = {});

Representation solve_system(const IntegrableSystem& sys, const SolveOptions& opt = {}, SolveTrace* trace = nullptr);

// Same number of groups, pairwise associated certificates and equal column
// spans over the constants after rescaling by the witness.
bool equivalent(const DeltaSet& delta, const Representation& a, const Representation& b, const SolverConfig& cfg = {});
bool equivalent_groups(const DeltaSet& delta, const HyperexpGroup& a, const HyperexpGroup& b,
                       const SolverConfig& cfg = {});

}  // namespace oresub
