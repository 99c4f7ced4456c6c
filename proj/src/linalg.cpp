#include "pgq/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pgq {

Matrix rref(const Field& f, Matrix m, std::size_t* out_rank, std::vector<std::size_t>* out_pivots) {
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
        const Fel scale = f.inv(m.at(r, c));
        for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = f.mul(scale, m.at(r, j));
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const Fel v = m.at(i, c);
            if (v == 0) continue;
            for (std::size_t j = c; j < m.cols; ++j)
                m.at(i, j) = f.sub(m.at(i, j), f.mul(v, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    if (out_rank) *out_rank = r;
    if (out_pivots) *out_pivots = std::move(pivots);
    return m;
}

std::size_t rank(const Field& f, const Matrix& m) {
    std::size_t r = 0;
    rref(f, m, &r);
    return r;
}

Matrix kernel_basis(const Field& f, const Matrix& m) {
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    const Matrix e = rref(f, m, &r, &pivots);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    Matrix k(m.cols - r, m.cols);
    std::size_t row = 0;
    for (std::size_t free_c = 0; free_c < m.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        k.at(row, free_c) = 1;
        for (std::size_t i = 0; i < r; ++i)
            k.at(row, pivots[i]) = f.neg(e.at(i, free_c));
        ++row;
    }
    return rref(f, std::move(k));
}

std::optional<std::vector<Fel>> solve(const Field& f, const Matrix& m, std::span<const Fel> rhs) {
    if (rhs.size() != m.rows) throw std::invalid_argument("solve: rhs length does not match rows");
    Matrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = rhs[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    const Matrix e = rref(f, std::move(aug), &r, &pivots);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt; // inconsistent
    std::vector<Fel> x(m.cols, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = e.at(i, m.cols);
    return x;
}

} // namespace pgq
