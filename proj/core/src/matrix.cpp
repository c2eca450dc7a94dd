#include "oresub/matrix.hpp"

#include "oresub/errors.hpp"

#include <sstream>

namespace oresub {

MatrixF MatrixF::identity(std::size_t n) {
    MatrixF m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatFunc(1);
    return m;
}

MatrixF MatrixF::column(const std::vector<RatFunc>& entries) {
    MatrixF m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

MatrixF MatrixF::row(const std::vector<RatFunc>& entries) {
    MatrixF m(1, entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(0, i) = entries[i];
    return m;
}

MatrixF MatrixF::diagonal(const std::vector<RatFunc>& entries) {
    MatrixF m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

std::vector<RatFunc> MatrixF::row_vector(std::size_t i) const {
    return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
}

std::vector<RatFunc> MatrixF::col_vector(std::size_t j) const {
    std::vector<RatFunc> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
}

MatrixF MatrixF::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    MatrixF out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
}

MatrixF MatrixF::select_rows(const std::vector<std::size_t>& rows) const {
    MatrixF out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(rows[i], j);
    return out;
}

MatrixF MatrixF::select_cols(const std::vector<std::size_t>& cols) const {
    MatrixF out(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(i, cols[j]);
    return out;
}

MatrixF MatrixF::transpose() const {
    MatrixF out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

MatrixF MatrixF::map(const std::function<RatFunc(const RatFunc&)>& f) const {
    MatrixF out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = f(data_[k]);
    return out;
}

bool MatrixF::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

bool MatrixF::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != RatFunc(i == j ? 1 : 0)) return false;
    return true;
}

VarMask MatrixF::support() const {
    VarMask m = 0;
    for (const auto& x : data_) m |= x.support();
    return m;
}

MatrixF operator+(const MatrixF& a, const MatrixF& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalInconsistency("matrix shape mismatch in +");
    MatrixF out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
}

MatrixF operator-(const MatrixF& a, const MatrixF& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalInconsistency("matrix shape mismatch in -");
    MatrixF out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
}

MatrixF operator*(const MatrixF& a, const MatrixF& b) {
    if (a.cols_ != b.rows_) throw InternalInconsistency("matrix shape mismatch in *");
    MatrixF out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const RatFunc& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const RatFunc& y = b(k, j);
                if (!y.is_zero()) out(i, j) += x * y;
            }
        }
    return out;
}

MatrixF operator*(const RatFunc& c, const MatrixF& a) {
    MatrixF out = a;
    for (auto& x : out.data_) x *= c;
    return out;
}

MatrixF MatrixF::hstack(const MatrixF& a, const MatrixF& b) {
    if (a.cols_ == 0) return b;
    if (b.cols_ == 0) return a;
    if (a.rows_ != b.rows_) throw InternalInconsistency("hstack row mismatch");
    MatrixF out(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
    }
    return out;
}

MatrixF MatrixF::vstack(const MatrixF& a, const MatrixF& b) {
    if (a.rows_ == 0) return b;
    if (b.rows_ == 0) return a;
    if (a.cols_ != b.cols_) throw InternalInconsistency("vstack column mismatch");
    MatrixF out(a.rows_ + b.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out(a.rows_ + i, j) = b(i, j);
    return out;
}

// ---------------------------------------------------------------- elimination

namespace {

std::size_t weight(const RatFunc& f) { return f.num().size() + f.den().size(); }

}  // namespace

Echelon rref(const MatrixF& m) {
    MatrixF a = m;
    std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a(i, c).is_zero()) continue;
            if (best == rows || weight(a(i, c)) < weight(a(best, c))) best = i;
        }
        if (best == rows) continue;
        if (best != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(r, j), a(best, j));
        RatFunc inv = a(r, c).inverse();
        for (std::size_t j = c; j < cols; ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            RatFunc f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::size_t> keep(r);
    for (std::size_t i = 0; i < r; ++i) keep[i] = i;
    return {a.select_rows(keep), pivots};
}

std::size_t rank(const MatrixF& m) { return rref(m).pivots.size(); }

MatrixF nullspace(const MatrixF& m) {
    auto [red, piv] = rref(m);
    std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free.push_back(j);
    MatrixF out(n, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        out(free[k], k) = RatFunc(1);
        for (std::size_t i = 0; i < piv.size(); ++i) out(piv[i], k) = -red(i, free[k]);
    }
    return out;
}

std::optional<MatrixF> solve(const MatrixF& m, const MatrixF& b) {
    if (m.rows() != b.rows()) throw InternalInconsistency("solve: shape mismatch");
    MatrixF aug = MatrixF::hstack(m, b);
    if (m.cols() == 0) {
        if (!b.is_zero()) return std::nullopt;
        return MatrixF(0, b.cols());
    }
    auto [red, piv] = rref(aug);
    MatrixF x(m.cols(), b.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] >= m.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = red(i, m.cols() + j);
    }
    return x;
}

MatrixF inverse(const MatrixF& m) {
    if (m.rows() != m.cols()) throw SingularMatrix();
    auto x = solve(m, MatrixF::identity(m.rows()));
    if (!x || rank(m) != m.rows()) throw SingularMatrix();
    return *x;
}

RatFunc determinant(const MatrixF& m) {
    if (m.rows() != m.cols()) throw InternalInconsistency("determinant of a non-square matrix");
    MatrixF a = m;
    std::size_t n = a.rows();
    RatFunc det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        for (std::size_t i = c; i < n; ++i)
            if (!a(i, c).is_zero() && (p == n || weight(a(i, c)) < weight(a(p, c)))) p = i;
        if (p == n) return RatFunc(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        RatFunc inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            RatFunc f = a(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

std::vector<std::size_t> independent_columns(const MatrixF& m) { return rref(m).pivots; }

std::vector<std::size_t> independent_rows(const MatrixF& m) { return rref(m.transpose()).pivots; }

std::string to_string(const MatrixF& m, const VarSet& vars) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j), vars);
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace oresub
