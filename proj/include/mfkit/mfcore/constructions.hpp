#ifndef MFKIT_MFCORE_CONSTRUCTIONS_HPP
#define MFKIT_MFCORE_CONSTRUCTIONS_HPP

#include <map>
#include <string>
#include <vector>

#include "mfkit/mfcore/matrix_factorization.hpp"

namespace mfkit {

// Koszul factorization of f = sum a_i b_i on the exterior algebra of k^n:
// delta = sum a_i (e_i wedge) + b_i (contraction by e_i). The summand
// Lambda^k sits in homological degree n - k; V0 collects k = n (mod 2).
MatrixFactorization koszul_mf(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b);

// Koszul factorization resolving k[x]/(x1..xn): each term of f goes to the
// lowest-index variable dividing it. Requires f(0) = 0.
MatrixFactorization stabilized_residue_field(const MultiPoly& f);

// (p, q) = (1, f); contractible.
MatrixFactorization trivial_mf(const MultiPoly& f);

// (p, q) -> (p^T, -q^T), a factorization of -f. Degrees become 1 - deg.
MatrixFactorization dual(const MatrixFactorization& m);

// (p, q) -> (-q, -p), degrees raised by one.
MatrixFactorization shift(const MatrixFactorization& m);

MatrixFactorization direct_sum(const MatrixFactorization& m, const MatrixFactorization& n);

// Factorization of f(x) + g(y) on V (x) W with Koszul signs. The variables of
// n are renamed through `rename` first; the two variable sets must then be disjoint.
MatrixFactorization ts_tensor(const MatrixFactorization& m, const MatrixFactorization& n,
                              const std::map<std::string, std::string>& rename = {});

// ts_tensor(m, koszul_mf([u], [v])) with fresh variables (names may be given).
MatrixFactorization knorrer_double(const MatrixFactorization& m, const std::string& u = "",
                                   const std::string& v = "");

// Moves the factorization into a larger ring (variables matched by name).
MatrixFactorization extend_ring(const MatrixFactorization& m, const RingPtr& target);

// A variable name not in the ring, starting from `base`.
std::string fresh_variable(const Ring& r, const std::string& base, const std::vector<std::string>& avoid = {});

} // namespace mfkit

#endif
