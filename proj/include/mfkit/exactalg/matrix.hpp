#ifndef MFKIT_EXACTALG_MATRIX_HPP
#define MFKIT_EXACTALG_MATRIX_HPP

#include <optional>
#include <vector>

#include "mfkit/exactalg/scalar.hpp"

namespace mfkit {

// Dense matrix of field elements.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Field f = Field());

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Field field() const { return field_; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Field field_;
    std::vector<Scalar> e_;
};

struct RankKernel {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
    // Basis of the right kernel; each vector has cols() entries.
    std::vector<std::vector<Scalar>> kernel;
};

// Fraction-free (Bareiss) elimination over Q; plain elimination over F_p.
RankKernel exact_rank_kernel(const Matrix& m);

// One solution of m x = b, if any.
std::optional<std::vector<Scalar>> solve_linear(const Matrix& m, const std::vector<Scalar>& b);

} // namespace mfkit

#endif
