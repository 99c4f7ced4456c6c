#ifndef PGQ_LINALG_HPP
#define PGQ_LINALG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pgq/field.hpp"

namespace pgq {

/// Dense row-major matrix of field elements.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Fel> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Fel& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Fel at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    std::span<const Fel> row(std::size_t r) const { return {a.data() + r * cols, cols}; }

    bool operator==(const Matrix& o) const = default;
};

/// Reduced row-echelon form (Gaussian elimination); rank reported via out param.
Matrix rref(const Field& f, Matrix m, std::size_t* out_rank = nullptr,
            std::vector<std::size_t>* out_pivots = nullptr);

std::size_t rank(const Field& f, const Matrix& m);

/// Canonical basis of the right kernel {x : M x = 0}, one basis vector per
/// row, itself in reduced echelon form.  Empty matrix (0 rows) for trivial kernel.
Matrix kernel_basis(const Field& f, const Matrix& m);

/// One solution of M x = rhs with free variables set to 0, or nullopt.
std::optional<std::vector<Fel>> solve(const Field& f, const Matrix& m, std::span<const Fel> rhs);

} // namespace pgq

#endif
