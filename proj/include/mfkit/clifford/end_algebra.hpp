#ifndef MFKIT_CLIFFORD_END_ALGEBRA_HPP
#define MFKIT_CLIFFORD_END_ALGEBRA_HPP

#include <map>
#include <tuple>
#include <vector>

#include "mfkit/clifford/clifford.hpp"
#include "mfkit/config.hpp"
#include "mfkit/homalg/ext.hpp"

namespace mfkit {

// Resolution of k over k[x]/(q): forms dx_J with divided powers u^[k], k < N,
// and polynomial coefficients, with
//   d = i_E + (dq/2) wedge d/du,   v_j = i_{e_j} - (Q e_j)^flat wedge d/du,
// where E is the Euler field. d^2 = q d/du, so d^2 = 0 modulo q; the v_j
// anticommute with d and satisfy v_j v_k + v_k v_j = -2 Q_jk d/du, where
// d/du is the action of beta.
class UResolution {
public:
    struct Key {
        std::uint32_t mask;
        std::uint32_t k;
        Monomial mono;
        bool operator<(const Key& o) const { return std::tie(mask, k, mono) < std::tie(o.mask, o.k, o.mono); }
        bool operator==(const Key& o) const { return mask == o.mask && k == o.k && mono == o.mono; }
    };
    using Element = std::map<Key, Scalar>;

    UResolution(const QuadraticForm& q, std::size_t N);

    std::size_t dim() const { return q_.dim(); }
    std::size_t N() const { return N_; }

    Element differential(const Element& e) const;
    Element action(std::size_t j, const Element& e) const;
    // Action of sum_j c_j v_j.
    Element action(const std::vector<Scalar>& c, const Element& e) const;
    Element beta(const Element& e) const;
    Element times_q(const Element& e) const;
    // Constant coefficient of dx_0 u^[0]: the augmentation to k.
    Scalar augmentation(const Element& e) const;

    static Element basis(std::uint32_t mask, std::uint32_t k, const Monomial& m);
    // All basis elements with coefficient degree <= D.
    std::vector<Element> basis_up_to(std::int64_t D) const;

    struct IdentityReport {
        bool d_squared = false;        // d^2 = q beta
        bool anticommute = false;      // v_j d + d v_j = 0
        bool clifford = false;         // v_j v_k + v_k v_j = -2 Q_jk beta
        bool ok() const { return d_squared && anticommute && clifford; }
    };
    IdentityReport check_identities(std::int64_t D) const;

private:
    QuadraticForm q_;
    std::size_t N_;
};

struct EndAlgebra {
    std::vector<GradedDims> dims;  // cohomology of End over k[[beta]]/beta^n, n = 1..N
    // Classes of v_a v_b, read off through the augmentation.
    std::map<std::pair<std::size_t, std::size_t>, CliffordElement> products;
    UResolution::IdentityReport identities;
};

// End of k over k[x]/(q) from the truncated resolution: the complex
// Hom(P_{<N}, k), plus the generator products. Throws if the dims do not
// show the free pattern (truncation too small).
EndAlgebra mf_end_algebra(const QuadraticForm& q, std::size_t N, std::int64_t D);

struct CliffordComparison {
    bool equal = false;
    bool dims_match = false;
    bool relations_hold = false;
    EndAlgebra end;
};
CliffordComparison compare_clifford(const QuadraticForm& q, std::size_t N, std::int64_t D);

// End of O_L for the Lagrangian L = {y = 0} of sum x_i y_i on 2r variables:
// O_L[gamma]/beta^N with d gamma_i = -x_i beta, truncated at coefficient degree D.
struct HyperbolicResult {
    GradedDims tate;   // free rank over k[[beta]] = dims after inverting beta
    bool trivial = false;
    bool stabilized = false;
    std::vector<GradedDims> dims;  // over k[[beta]]/beta^n, n = 1..N, at the final bound
    std::int64_t D_used = 0;
};
HyperbolicResult hyperbolic_triviality(std::size_t r, std::size_t N, std::int64_t D, Field f = Field(), int window = 3);

struct MetabolicCheck {
    ExtResult base;
    ExtResult doubled;
    bool preserved = false;
};
// ext_tate(m, n) against the same after tensoring both with the rank-r hyperbolic factorization.
MetabolicCheck metabolic_knorrer_check(const MatrixFactorization& m, const MatrixFactorization& n, std::size_t r,
                                       const RunConfig& cfg);
// Same for End(m).
MetabolicCheck metabolic_knorrer_check(const MatrixFactorization& m, std::size_t r, const RunConfig& cfg);

} // namespace mfkit

#endif
