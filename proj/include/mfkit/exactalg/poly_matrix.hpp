#ifndef MFKIT_EXACTALG_POLY_MATRIX_HPP
#define MFKIT_EXACTALG_POLY_MATRIX_HPP

#include <vector>

#include "mfkit/exactalg/poly.hpp"

namespace mfkit {

// Dense matrix with polynomial entries over one ring.
class PolyMatrix {
public:
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
    static PolyMatrix identity(RingPtr ring, std::size_t n, const MultiPoly* scale = nullptr);

    const RingPtr& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    MultiPoly& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    PolyMatrix transpose() const;
    PolyMatrix operator-() const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator+(const PolyMatrix& o) const;
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

    std::int64_t max_degree(const Weights& w = {}) const;
    bool is_zero() const;
    PolyMatrix embed(const RingPtr& target, const std::vector<std::size_t>& map) const;

private:
    RingPtr ring_;
    std::size_t rows_, cols_;
    std::vector<MultiPoly> e_;
};

} // namespace mfkit

#endif
