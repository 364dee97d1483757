#ifndef MFKIT_CLIFFORD_CLIFFORD_HPP
#define MFKIT_CLIFFORD_CLIFFORD_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mfkit/exactalg/matrix.hpp"
#include "mfkit/exactalg/poly.hpp"

namespace mfkit {

// Symmetric Gram matrix Q with q(v) = Q(v, v); for q = x*y, Q12 = Q21 = 1/2.
class QuadraticForm {
public:
    explicit QuadraticForm(Matrix gram);
    // Homogeneous quadratic polynomial -> Gram matrix in its variable order.
    static QuadraticForm from_quadric(const MultiPoly& q);
    // sum x_i y_i on 2r variables ordered x1..xr, y1..yr.
    static QuadraticForm hyperbolic(std::size_t r, Field f = Field());
    static QuadraticForm diagonal(const std::vector<Scalar>& d, Field f = Field());

    std::size_t dim() const { return Q_.rows(); }
    const Matrix& gram() const { return Q_; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return Q_(i, j); }
    Field field() const { return Q_.field(); }
    bool nondegenerate() const;
    // Q(v, w).
    Scalar pair(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const;
    // q as a polynomial in the given ring (one variable per coordinate).
    MultiPoly polynomial(const RingPtr& ring) const;
    // A^T Q A.
    QuadraticForm congruent(const Matrix& A) const;

private:
    Matrix Q_;
};

// Basis e_J beta^k, J a subset of {0..n-1} (bit mask, increasing order).
struct CliffordElement {
    std::shared_ptr<const Matrix> gram;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> terms;  // (J, k) -> coefficient

    bool is_zero() const { return terms.empty(); }
    void add(std::uint32_t mask, std::uint32_t k, const Scalar& c);
    CliffordElement& operator+=(const CliffordElement& o);
    friend bool operator==(const CliffordElement& a, const CliffordElement& b) { return a.terms == b.terms; }
    std::string to_string() const;
};

// k[[beta]]<e_1..e_n> / (e_i e_j + e_j e_i = -2 Q_ij beta). Parity of e_J beta^k
// is |J| mod 2; internal degree is -|J| - 2k.
class CliffordAlgebra {
public:
    explicit CliffordAlgebra(const QuadraticForm& q);

    std::size_t dim() const { return n_; }
    std::size_t rank() const { return std::size_t{1} << n_; }
    const QuadraticForm& form() const { return q_; }

    CliffordElement zero() const;
    CliffordElement basis(std::uint32_t mask, std::uint32_t k = 0) const;
    CliffordElement generator(std::size_t i) const { return basis(std::uint32_t{1} << i); }
    CliffordElement beta() const { return basis(0, 1); }
    CliffordElement scale(const CliffordElement& a, const Scalar& c) const;

    // Dims over k[[beta]]/beta^N, by parity.
    std::pair<std::size_t, std::size_t> truncated_dims(std::size_t N) const;
    static int parity(std::uint32_t mask) { return __builtin_popcount(mask) % 2; }
    static std::int64_t internal_degree(std::uint32_t mask, std::uint32_t k) {
        return -static_cast<std::int64_t>(__builtin_popcount(mask)) - 2 * static_cast<std::int64_t>(k);
    }

    CliffordElement mul(const CliffordElement& a, const CliffordElement& b) const;

private:
    // Normal form of the word of generators w times beta^k.
    void straighten(std::vector<std::size_t> w, std::uint32_t k, const Scalar& c, CliffordElement& out) const;

    QuadraticForm q_;
    std::size_t n_;
    std::shared_ptr<const Matrix> gram_;
};

// Product in the algebra both elements belong to; throws on mismatch.
CliffordElement clifford_mul(const CliffordAlgebra& alg, const CliffordElement& a, const CliffordElement& b);

} // namespace mfkit

#endif
