#pragma once

#include <cstdint>
#include <vector>

#include "hallforge/gf.hpp"

namespace hallforge {

// Dense matrix over a finite field; entries are field indices, row-major.
// The field is passed into every operation so the struct stays a plain value.
struct Mat {
    std::uint32_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;

    Mat() = default;
    Mat(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

    std::uint32_t& at(std::uint32_t r, std::uint32_t c) { return a[std::size_t(r) * cols + c]; }
    std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return a[std::size_t(r) * cols + c]; }

    static Mat identity(const std::uint32_t n) {
        Mat m(n, n);
        for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline Mat mat_mul(const gf::Field& F, const Mat& x, const Mat& y) {
    Mat z(x.rows, y.cols);
    for (std::uint32_t i = 0; i < x.rows; ++i)
        for (std::uint32_t k = 0; k < x.cols; ++k) {
            std::uint32_t xik = x.at(i, k);
            if (xik == 0) continue;
            for (std::uint32_t j = 0; j < y.cols; ++j) {
                std::uint32_t prod = F.mul(xik, y.at(k, j));
                if (prod) z.at(i, j) = F.add(z.at(i, j), prod);
            }
        }
    return z;
}

inline Mat mat_add(const gf::Field& F, const Mat& x, const Mat& y) {
    Mat z(x.rows, x.cols);
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = F.add(x.a[i], y.a[i]);
    return z;
}

inline Mat mat_scale(const gf::Field& F, std::uint32_t c, const Mat& x) {
    Mat z(x.rows, x.cols);
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = F.mul(c, x.a[i]);
    return z;
}

struct Echelon {
    Mat m;                        // reduced row echelon form
    std::vector<std::uint32_t> pivot_cols;
    std::uint32_t rank = 0;
};

inline Echelon row_reduce(const gf::Field& F, Mat m) {
    Echelon out;
    std::uint32_t lead = 0;
    for (std::uint32_t col = 0; col < m.cols && lead < m.rows; ++col) {
        std::uint32_t sel = lead;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != lead)
            for (std::uint32_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(lead, j));
        std::uint32_t piv_inv = F.inv(m.at(lead, col));
        for (std::uint32_t j = 0; j < m.cols; ++j) m.at(lead, j) = F.mul(piv_inv, m.at(lead, j));
        for (std::uint32_t r = 0; r < m.rows; ++r) {
            if (r == lead) continue;
            std::uint32_t factor = m.at(r, col);
            if (factor == 0) continue;
            for (std::uint32_t j = 0; j < m.cols; ++j)
                m.at(r, j) = F.sub(m.at(r, j), F.mul(factor, m.at(lead, j)));
        }
        out.pivot_cols.push_back(col);
        ++lead;
    }
    out.rank = lead;
    out.m = std::move(m);
    return out;
}

inline std::uint32_t mat_rank(const gf::Field& F, const Mat& m) { return row_reduce(F, m).rank; }

inline bool mat_invertible(const gf::Field& F, const Mat& m) {
    return m.rows == m.cols && mat_rank(F, m) == m.rows;
}

// Basis of { v : m v = 0 }, one kernel vector per row.
inline Mat nullspace_basis(const gf::Field& F, const Mat& m) {
    Echelon ech = row_reduce(F, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : ech.pivot_cols) is_pivot[c] = true;
    Mat basis(m.cols - ech.rank, m.cols);
    std::uint32_t row = 0;
    for (std::uint32_t freecol = 0; freecol < m.cols; ++freecol) {
        if (is_pivot[freecol]) continue;
        basis.at(row, freecol) = 1;
        for (std::uint32_t i = 0; i < ech.rank; ++i)
            basis.at(row, ech.pivot_cols[i]) = F.neg(ech.m.at(i, freecol));
        ++row;
    }
    return basis;
}

}  // namespace hallforge
