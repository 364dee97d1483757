#ifndef MFKIT_MFCORE_MATRIX_FACTORIZATION_HPP
#define MFKIT_MFCORE_MATRIX_FACTORIZATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "mfkit/exactalg/poly_matrix.hpp"

namespace mfkit {

// Matrix factorization (p, q) of f: p : V1 -> V0, q : V0 -> V1 with
// p q = q p = f I. The basis of V0 (indices 0..r-1) is even, V1 (r..2r-1) odd.
//
// The grading assigns an integer homological degree to each basis vector,
// with the parity of its summand. Entries lowering the degree by one form the
// differential d, entries raising it by one form the homotopy B, so that
// d^2 = 0, B^2 = 0 and dB + Bd = f. The default puts V0 in degree 0 and V1 in
// degree 1 (d = p, B = q).
class MatrixFactorization {
public:
    // Throws InvalidFactorization if the identity fails, Precondition on a bad grading.
    MatrixFactorization(MultiPoly f, PolyMatrix p, PolyMatrix q, std::vector<int> grading = {});
    // Skips the identity check (shapes and grading are still checked).
    static MatrixFactorization unchecked(MultiPoly f, PolyMatrix p, PolyMatrix q, std::vector<int> grading = {});

    const MultiPoly& potential() const { return f_; }
    const PolyMatrix& p() const { return p_; }
    const PolyMatrix& q() const { return q_; }
    const RingPtr& ring() const { return f_.ring(); }
    std::size_t rank() const { return p_.rows(); }
    std::size_t total_rank() const { return 2 * rank(); }
    const std::vector<int>& grading() const { return grading_; }
    bool has_default_grading() const;

    // Odd operator [[0, p], [q, 0]] on V0 + V1.
    PolyMatrix delta() const;
    // Degree -1 and +1 parts of delta.
    PolyMatrix d_part() const;
    PolyMatrix b_part() const;
    int min_degree() const;
    int max_degree() const;
    std::int64_t max_entry_degree(const Weights& w = {}) const;

    // Equal data; gradings may differ by a uniform even shift.
    friend bool operator==(const MatrixFactorization& a, const MatrixFactorization& b);

private:
    MatrixFactorization(MultiPoly f, PolyMatrix p, PolyMatrix q, std::vector<int> grading, bool check);

    MultiPoly f_;
    PolyMatrix p_, q_;
    std::vector<int> grading_;
};

struct ValidationReport {
    bool ok = true;
    std::string message;
};

ValidationReport validate(const MatrixFactorization& m);

// Checks p q = f I and q p = f I; returns an empty string or a description
// of the first failing entry.
std::string factorization_defect(const MultiPoly& f, const PolyMatrix& p, const PolyMatrix& q);

} // namespace mfkit

#endif
