#pragma once

#include "oresub/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace oresub {

enum class MapKind { derivation, shift };

// A derivation sum_v c_v d/dv or a shift v -> v + s_v, with rational
// constants c_v / s_v on non-parameter variables.
struct DeltaMap {
    std::string name;
    MapKind kind = MapKind::derivation;
    std::vector<std::pair<std::size_t, Rational>> action;  // sorted by variable, nonzero values

    static DeltaMap derivation(std::string name, std::vector<std::pair<std::size_t, Rational>> action);
    static DeltaMap shift(std::string name, std::vector<std::pair<std::size_t, Rational>> action);

    bool is_derivation() const { return kind == MapKind::derivation; }
    bool is_shift() const { return kind == MapKind::shift; }
    Rational coefficient(std::size_t v) const;
    VarMask moved() const;
};

Poly apply(const DeltaMap& map, const Poly& p);
RatFunc apply(const DeltaMap& map, const RatFunc& f);
MatrixF apply(const DeltaMap& map, const MatrixF& m);
// Logarithmic form of a value under the map: derivative / value for
// derivations, shifted / value for shifts.
RatFunc log_form(const DeltaMap& map, const RatFunc& h);
// Whether f is a constant of the map.
bool is_constant_of(const DeltaMap& map, const RatFunc& f);

class DeltaSet {
public:
    DeltaSet() = default;
    // parameters: variables on which no map may act.
    DeltaSet(std::vector<DeltaMap> maps, VarMask parameters = 0);

    std::size_t size() const { return maps_.size(); }
    const DeltaMap& operator[](std::size_t i) const { return maps_[i]; }
    const std::vector<DeltaMap>& maps() const { return maps_; }
    std::optional<std::size_t> index(const std::string& name) const;
    DeltaSet subset(const std::vector<std::size_t>& indices) const;
    VarMask parameters() const { return parameters_; }

private:
    std::vector<DeltaMap> maps_;
    VarMask parameters_ = 0;
};

// Linear change of coordinates x = G y in which every map of a DeltaSet acts on
// a single coordinate (its axis) as d/dy or y -> y + 1. Frame coordinates reuse
// the variable indices; parameters and unmoved directions are kept.
class Frame {
public:
    Frame() = default;
    Frame(const DeltaSet& delta, std::size_t num_vars);

    bool is_identity() const { return identity_; }
    std::size_t axis(std::size_t map_index) const { return axes_[map_index]; }
    const std::vector<std::size_t>& axes() const { return axes_; }
    // The maps rewritten in frame coordinates.
    const DeltaSet& delta() const { return frame_delta_; }
    const DeltaSet& user_delta() const { return user_delta_; }
    std::size_t num_vars() const { return num_vars_; }

    RatFunc to_frame(const RatFunc& f) const;
    RatFunc to_user(const RatFunc& f) const;
    MatrixF to_frame(const MatrixF& m) const;
    MatrixF to_user(const MatrixF& m) const;

private:
    DeltaSet user_delta_, frame_delta_;
    std::size_t num_vars_ = 0;
    std::vector<std::size_t> axes_;
    std::vector<Poly> user_images_;   // x_v in terms of frame variables
    std::vector<Poly> frame_images_;  // y_v in terms of user variables
    bool identity_ = true;
};

// Constants of a subset of the maps: in frame coordinates, exactly the functions
// free of the subset's axes.
class ConstantField {
public:
    ConstantField() = default;
    ConstantField(Frame frame, std::vector<std::size_t> map_indices);

    const Frame& frame() const { return frame_; }
    VarMask active() const { return active_; }
    const std::vector<std::size_t>& maps() const { return maps_; }
    bool contains(const RatFunc& user_value) const;
    bool contains_frame(const RatFunc& frame_value) const { return (frame_value.support() & active_) == 0; }

private:
    Frame frame_;
    std::vector<std::size_t> maps_;
    VarMask active_ = 0;
};

ConstantField constant_field(const DeltaSet& subset, std::size_t num_vars);

// f_k = sum_s coeff[k][s] * basis[s] with coefficients free of the active
// variables and a basis of active monomials over a shared denominator.
struct Decomposition {
    std::vector<RatFunc> basis;
    std::vector<std::vector<RatFunc>> coeffs;
};

// Works directly on values in any coordinates where the constants are the
// functions free of the variables in active.
Decomposition coeff_decompose(const std::vector<RatFunc>& values, VarMask active);
// Same, for values in user coordinates over a ConstantField.
Decomposition coeff_decompose(const std::vector<RatFunc>& values, const ConstantField& constants);

struct ThetaMonomial {
    std::vector<unsigned> exponents;
    unsigned order() const;
};

// All monomials of order <= max_order in graded lexicographic order.
std::vector<ThetaMonomial> theta_monomials(std::size_t num_maps, unsigned max_order);

struct Dependence {
    bool independent = true;
    std::vector<RatFunc> coefficients;  // constants, not all zero, when dependent
};

Dependence dependence_over_constants(const std::vector<RatFunc>& values, const DeltaSet& delta);

}  // namespace oresub
