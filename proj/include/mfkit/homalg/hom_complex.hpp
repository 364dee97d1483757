#ifndef MFKIT_HOMALG_HOM_COMPLEX_HPP
#define MFKIT_HOMALG_HOM_COMPLEX_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mfkit/config.hpp"
#include "mfkit/exactalg/truncated.hpp"
#include "mfkit/mfcore/matrix_factorization.hpp"

namespace mfkit {

// Hom(V, W) between two factorizations of the same potential. Generators are
// the elementary matrices E_ij (W basis i <- V basis j), of homological degree
// deg_W(i) - deg_V(j).
//   D phi = d_W phi - (-1)^|phi| phi d_V,   B phi = B_W phi - (-1)^|phi| phi B_V.
// D^2 = 0, B^2 = 0, DB + BD = 0; D lowers the degree by one, B raises it.
class HomComplex {
public:
    HomComplex(const MatrixFactorization& source, const MatrixFactorization& target);

    std::size_t ngens() const { return deg_.size(); }
    int degree(std::uint32_t gen) const { return deg_[gen]; }
    int min_degree() const { return lo_; }
    int max_degree() const { return hi_; }
    std::size_t nvars() const { return nvars_; }
    const PolyOperator& D() const { return D_; }
    const PolyOperator& B() const { return B_; }
    const MultiPoly& potential() const { return f_; }
    std::uint32_t gen(std::size_t i, std::size_t j) const { return static_cast<std::uint32_t>(i * nsrc_ + j); }

private:
    std::size_t nsrc_, ntgt_, nvars_;
    std::vector<int> deg_;
    int lo_ = 0, hi_ = 0;
    PolyOperator D_, B_;
    MultiPoly f_;
};

// Degree-n piece of Hom[beta] / beta^N with differential D + beta B, where
// deg beta = -2. N = 0 means no truncation.
struct BetaSlice {
    int degree = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gens;  // (Hom generator, beta power)
};

BetaSlice beta_slice(const HomComplex& h, int n, std::size_t N);

// D + beta B from slice n to slice n - 1.
PolyOperator beta_slice_map(const HomComplex& h, const BetaSlice& from, const BetaSlice& to, const Weights& w = {});

// Truncated homology of Hom[beta]/beta^N at degree n.
std::size_t beta_homology(const HomComplex& h, int n, std::size_t N, std::int64_t D, const Weights& w,
                          std::int64_t extra_slack, Field f);

// Truncation weights and extra slack used for a potential under a config.
// The weights come from the config, else from detected quasi-homogeneity of
// f, else all ones. Non-homogeneous inputs get extra boundary slack.
// Bounds are swept in units of the largest weight, so that the truncation
// at unit bound D contains every monomial of ordinary degree <= D.
struct TruncationPlan {
    Weights weights;
    bool homogeneous = true;
    std::int64_t extra_slack = 0;
    std::int64_t D_start = 1;  // in units
    std::int64_t step = 1;     // largest weight
    // Records the largest weighted degree raise of the maps involved.
    void set_raise(std::int64_t max_raise);
    std::int64_t bound(std::int64_t D) const { return D * step; }
};
TruncationPlan plan_truncation(const MultiPoly& f, const RunConfig& cfg);

} // namespace mfkit

#endif
