#pragma once

#include "oresub/ratfunc.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace oresub {

class MatrixF {
public:
    MatrixF() = default;
    MatrixF(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static MatrixF identity(std::size_t n);
    static MatrixF column(const std::vector<RatFunc>& entries);
    static MatrixF row(const std::vector<RatFunc>& entries);
    static MatrixF diagonal(const std::vector<RatFunc>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    RatFunc& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const RatFunc& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<RatFunc> row_vector(std::size_t i) const;
    std::vector<RatFunc> col_vector(std::size_t j) const;
    MatrixF select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    MatrixF select_rows(const std::vector<std::size_t>& rows) const;
    MatrixF select_cols(const std::vector<std::size_t>& cols) const;
    MatrixF transpose() const;
    MatrixF map(const std::function<RatFunc(const RatFunc&)>& f) const;

    bool is_zero() const;
    bool is_identity() const;
    VarMask support() const;

    friend MatrixF operator+(const MatrixF& a, const MatrixF& b);
    friend MatrixF operator-(const MatrixF& a, const MatrixF& b);
    friend MatrixF operator*(const MatrixF& a, const MatrixF& b);
    friend MatrixF operator*(const RatFunc& c, const MatrixF& a);
    friend bool operator==(const MatrixF& a, const MatrixF& b) = default;

    static MatrixF hstack(const MatrixF& a, const MatrixF& b);
    static MatrixF vstack(const MatrixF& a, const MatrixF& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RatFunc> data_;
};

struct Echelon {
    MatrixF reduced;                  // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row of reduced
};

// Gauss-Jordan elimination over F. The reduced form is unique; pivot rows are
// chosen among candidates by smallest representation to limit growth.
Echelon rref(const MatrixF& m);
std::size_t rank(const MatrixF& m);
// Columns form a basis of the right kernel in reduced echelon normal form:
// each basis vector has a 1 at its own free coordinate and 0 at the others.
MatrixF nullspace(const MatrixF& m);
// Some x with m*x = b, if any.
std::optional<MatrixF> solve(const MatrixF& m, const MatrixF& b);
MatrixF inverse(const MatrixF& m);  // throws SingularMatrix
RatFunc determinant(const MatrixF& m);
// Indices of the leftmost maximal set of independent columns / rows.
std::vector<std::size_t> independent_columns(const MatrixF& m);
std::vector<std::size_t> independent_rows(const MatrixF& m);

std::string to_string(const MatrixF& m, const VarSet& vars);

}  // namespace oresub
