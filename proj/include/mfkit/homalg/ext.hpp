#ifndef MFKIT_HOMALG_EXT_HPP
#define MFKIT_HOMALG_EXT_HPP

#include <array>
#include <string>
#include <vector>

#include "mfkit/config.hpp"
#include "mfkit/homalg/hom_complex.hpp"

namespace mfkit {

struct GradedDims {
    std::size_t even = 0;
    std::size_t odd = 0;
    bool operator==(const GradedDims&) const = default;
};

struct ExtResult {
    GradedDims dims;
    bool stabilized = false;
    std::int64_t D_used = 0;
};

// Finitely generated k[[beta]]-module: free part plus cyclic torsion
// summands k[beta]/beta^order, each with a parity.
struct BetaModule {
    std::array<std::size_t, 2> free_rank{0, 0};
    std::vector<std::pair<std::size_t, int>> torsion;  // (order, parity), sorted
    // False when some torsion order reaches the sampled N_max.
    bool determined = true;
    std::string note;
    bool operator==(const BetaModule&) const = default;
};

struct ExtBetaResult {
    BetaModule module;
    std::vector<GradedDims> dims;  // folded dims over k[beta]/beta^N, N = 1..N_used
    bool stabilized = false;
    std::int64_t D_used = 0;
    std::size_t N_used = 0;
    // The sampled dims satisfy dim_e(N) = N free_e + sum over torsion of min(order, N).
    bool law_holds = false;
};

// Ext over k: cohomology of (Hom, D), folded by parity.
ExtResult ext_k(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg);

// Ext over k((beta)): homology of Hom[beta] in the periodic range, i.e. the
// folded complex (Hom, D + B).
ExtResult ext_tate(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg);

// Same value, computed on the Z/2-folded complex (Hom, D + B) directly.
ExtResult ext_tate_folded(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg);

// Ext over k[[beta]] from the beta-truncations N = 1..N_max.
ExtBetaResult ext_beta(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg);

// Fit of a folded dimension sequence with known free ranks; parity of each
// torsion summand is not recoverable from folded data and is reported as -1.
BetaModule fit_folded(const std::vector<GradedDims>& dims, std::array<std::size_t, 2> free_rank);

struct TorsionTest {
    bool torsion = false;  // End(m) is killed by a power of beta
    bool stabilized = false;
    ExtResult tate;
};
TorsionTest beta_torsion_test(const MatrixFactorization& m, const RunConfig& cfg);

struct PairingDims {
    ExtResult via_dual;  // ext_tate(dual m, dual n)
    ExtResult direct;    // ext_tate(n, m)
    bool equal = false;
};
PairingDims pairing_dims(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg);

} // namespace mfkit

#endif
