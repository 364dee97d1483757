#include "mfkit/exactalg/poly_matrix.hpp"

#include <algorithm>

#include "mfkit/error.hpp"

namespace mfkit {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(rows * cols, MultiPoly(ring_)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n, const MultiPoly* scale) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scale ? *scale : MultiPoly(ring, Scalar(1));
    return m;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix r(*this);
    for (auto& x : r.e_) x = -x;
    return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    if (!same_ring(ring_, o.ring_)) throw Error(ErrorCode::RingMismatch, "matrices over different rings");
    PolyMatrix r(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const auto& b = o(k, j);
                if (!b.is_zero()) r(i, j) += a * b;
            }
        }
    return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
    PolyMatrix r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::int64_t PolyMatrix::max_degree(const Weights& w) const {
    std::int64_t d = -1;
    for (auto& x : e_) d = std::max(d, x.degree(w));
    return d;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::embed(const RingPtr& target, const std::vector<std::size_t>& map) const {
    PolyMatrix r(target, rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].embed(target, map);
    return r;
}

} // namespace mfkit
