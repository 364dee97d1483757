#ifndef MFKIT_HOCHSCHILD_TWISTED_HPP
#define MFKIT_HOCHSCHILD_TWISTED_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "mfkit/config.hpp"
#include "mfkit/exactalg/truncated.hpp"
#include "mfkit/homalg/ext.hpp"

namespace mfkit {

// Subsets of {0..n-1} as bit masks, grouped by size; dx_S or d/dx_S.
class ExteriorBasis {
public:
    explicit ExteriorBasis(std::size_t n);
    std::size_t nvars() const { return n_; }
    const std::vector<std::uint32_t>& of_degree(std::size_t p) const { return by_degree_[p]; }
    // Position of a mask within its degree.
    std::uint32_t index(std::uint32_t mask) const { return pos_[mask]; }

private:
    std::size_t n_;
    std::vector<std::vector<std::uint32_t>> by_degree_;
    std::vector<std::uint32_t> pos_;
};

// (-1)^#{j in S : j < i}: the sign of moving e_i into sorted position in S.
int insertion_sign(std::uint32_t mask, std::size_t i);

enum class TwistedDifferential {
    DfWedge,     // -df wedge, on forms, raises p
    ContractDf,  // sign * i_df, on polyvectors, lowers p
    DeRham,      // d, on forms, raises p
};

// Forms (or polyvectors) on affine space with one of the differentials above.
class TwistedComplex {
public:
    TwistedComplex(const MultiPoly& f, TwistedDifferential kind, Weights w, int sign = -1);

    std::size_t nvars() const { return basis_.nvars(); }
    TwistedDifferential kind() const { return kind_; }
    const ExteriorBasis& basis() const { return basis_; }
    FreeSpace space(std::size_t p) const;
    // Target degree of the differential on degree p, or -1 if out of range.
    long target(std::size_t p) const;
    // Differential on degree p; null if the target is out of range.
    const TruncOperator* op(std::size_t p) const { return ops_[p].get(); }
    std::int64_t max_raise() const;

private:
    MultiPoly f_;
    TwistedDifferential kind_;
    Weights w_;
    ExteriorBasis basis_;
    std::vector<std::unique_ptr<TruncOperator>> ops_;
};

struct CountResult {
    std::size_t value = 0;
    bool stabilized = false;
    std::int64_t D_used = 0;
};

// dim of the local Jacobian ring at the origin: monomials of degree <= D modulo
// the degree-<= D truncations of the partials ideal.
CountResult milnor_number(const MultiPoly& f, const RunConfig& cfg);

// dim k[x]/(partials) without localizing: the total Milnor number.
CountResult global_jacobian_dim(const MultiPoly& f, const RunConfig& cfg);

// Folded cohomology of (forms, df wedge); form degree p has parity p.
ExtResult hh_tate(const MultiPoly& f, const RunConfig& cfg);

// Folded cohomology of (polyvectors, i_df); polyvector degree p has parity p.
ExtResult hh_cochain_tate(const MultiPoly& f, const RunConfig& cfg);

// Folded cohomology of forms[u]/u^k with -df wedge + u d, for k = 1..K.
std::vector<ExtResult> hc_tate(const MultiPoly& f, const RunConfig& cfg);

// Forms supported at the origin over k[[beta]] with beta (-df wedge). Local
// cohomology is taken as the colimit of k[x]/(x^S) under multiplication by
// (x1...xn)^S; classes are those of stage S surviving to stage 2S.
struct HHBetaResult {
    BetaModule module;
    GradedDims stage_homology;    // homology of the stage S_used complex
    std::size_t order1_torsion = 0;  // beta-killed summands at stage S_used
    bool torsion_bounded = false;    // order-one torsion constant along the sweep
    bool stabilized = false;
    std::size_t S_used = 0;
};
HHBetaResult hh_beta(const MultiPoly& f, const RunConfig& cfg);

// f(x) + g(y); variables of g that clash with those of f are renamed.
MultiPoly thom_sebastiani_sum(const MultiPoly& f, const MultiPoly& g);

} // namespace mfkit

#endif
