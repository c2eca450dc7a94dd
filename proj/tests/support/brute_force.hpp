#pragma once

#include "oresub/ratfunc.hpp"

#include <map>
#include <vector>

namespace oresub::testing {

// Rank over Q of a dense rational matrix, by plain Gaussian elimination.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    std::size_t r = 0, cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// Whether values admit a nontrivial relation with rational coefficients:
// clear denominators and compare monomial coefficient vectors.
inline bool has_rational_relation(const std::vector<RatFunc>& values) {
    Poly common(1);
    for (const auto& f : values) common = lcm(common, f.den());
    std::map<Monomial, std::size_t> row_of;
    std::vector<Poly> scaled;
    for (const auto& f : values) {
        scaled.push_back(f.num() * exact_div(common, f.den()));
        for (const auto& t : scaled.back().terms()) row_of.emplace(t.mono, row_of.size());
    }
    std::vector<std::vector<Rational>> m(row_of.size(), std::vector<Rational>(values.size()));
    for (std::size_t i = 0; i < scaled.size(); ++i)
        for (const auto& t : scaled[i].terms()) m[row_of[t.mono]][i] = t.coeff;
    return rational_rank(m) < values.size();
}

}  // namespace oresub::testing
