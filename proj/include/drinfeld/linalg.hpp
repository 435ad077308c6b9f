#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"

namespace drinfeld {

using FqVec = std::vector<FqElem>;
using FqMat = std::vector<FqVec>;  // row-major

/// Basis of the null space {x : A x = 0} of a rows x cols matrix.
inline std::vector<FqVec> kernel_basis(const Field& f, FqMat a) {
    if (a.empty()) return {};
    const std::size_t rows = a.size(), cols = a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && f.is_zero(a[sel][c])) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        FqElem inv = f.inv(a[r][c]);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = f.mul(a[r][j], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(a[i][c])) continue;
            FqElem s = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = f.sub(a[i][j], f.mul(s, a[r][j]));
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<FqVec> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        FqVec v(cols, f.zero());
        v[free_c] = f.one();
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = f.neg(a[i][free_c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Coordinates (c_1, ..., c_k) with sum c_i v_i = target, if the system is
/// consistent. The spanning vectors need not be independent; the first
/// solution in echelon order is returned.
inline std::optional<FqVec> solve_in_span(const Field& f, const std::vector<FqVec>& span,
                                          const FqVec& target) {
    const std::size_t m = target.size(), k = span.size();
    FqMat a(m, FqVec(k + 1, f.zero()));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = span[j][i];
        a[i][k] = target[i];
    }
    std::size_t r = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    for (std::size_t c = 0; c < k && r < m; ++c) {
        std::size_t sel = r;
        while (sel < m && f.is_zero(a[sel][c])) ++sel;
        if (sel == m) continue;
        std::swap(a[sel], a[r]);
        FqElem inv = f.inv(a[r][c]);
        for (std::size_t j = c; j <= k; ++j) a[r][j] = f.mul(a[r][j], inv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || f.is_zero(a[i][c])) continue;
            FqElem s = a[i][c];
            for (std::size_t j = c; j <= k; ++j) a[i][j] = f.sub(a[i][j], f.mul(s, a[r][j]));
        }
        pivots.emplace_back(r, c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i)
        if (!f.is_zero(a[i][k])) return std::nullopt;
    FqVec sol(k, f.zero());
    for (auto [row, col] : pivots) sol[col] = a[row][k];
    return sol;
}

/// 2x2 matrix over F_q; entries (e00 e01 / e10 e11).
struct Mat2 {
    FqElem e00, e01, e10, e11;

    friend bool operator==(const Mat2& a, const Mat2& b) = default;
};

inline Mat2 mat2_identity(const Field& f) { return {f.one(), f.zero(), f.zero(), f.one()}; }

inline Mat2 mat2_mul(const Field& f, const Mat2& a, const Mat2& b) {
    return {f.add(f.mul(a.e00, b.e00), f.mul(a.e01, b.e10)),
            f.add(f.mul(a.e00, b.e01), f.mul(a.e01, b.e11)),
            f.add(f.mul(a.e10, b.e00), f.mul(a.e11, b.e10)),
            f.add(f.mul(a.e10, b.e01), f.mul(a.e11, b.e11))};
}

inline FqElem mat2_trace(const Field& f, const Mat2& m) { return f.add(m.e00, m.e11); }

inline FqElem mat2_det(const Field& f, const Mat2& m) {
    return f.sub(f.mul(m.e00, m.e11), f.mul(m.e01, m.e10));
}

inline bool mat2_is_scalar(const Field& f, const Mat2& m) {
    return f.is_zero(m.e01) && f.is_zero(m.e10) && m.e00 == m.e11;
}

/// Multiplicative order; the matrix must be invertible. Order divides
/// #GL_2(F_q), so the walk always terminates.
inline std::uint64_t mat2_order(const Field& f, const Mat2& m) {
    if (f.is_zero(mat2_det(f, m)))
        raise_domain("ZeroElement", "order of a singular matrix");
    Mat2 id = mat2_identity(f), x = m;
    std::uint64_t k = 1;
    while (!(x == id)) {
        x = mat2_mul(f, x, m);
        ++k;
    }
    return k;
}

}  // namespace drinfeld
