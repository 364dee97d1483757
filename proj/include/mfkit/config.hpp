#ifndef MFKIT_CONFIG_HPP
#define MFKIT_CONFIG_HPP

#include <cstdint>
#include <optional>

#include "mfkit/exactalg/monomial.hpp"
#include "mfkit/exactalg/scalar.hpp"

namespace mfkit {

// Truncation and sampling parameters shared by all computations.
struct RunConfig {
    Field field;
    std::int64_t D_max = 16;  // polynomial degree bound
    std::size_t N_max = 6;    // beta-truncation levels sampled
    std::size_t S = 8;        // local-cohomology exponent
    std::size_t K = 2;        // u-truncation for cyclic homology
    int window = 3;           // consecutive agreeing bounds required
    std::optional<Weights> weights;
    int cochain_sign = -1;    // global sign of the contraction i_df
    std::uint64_t seed = 1;
};

} // namespace mfkit

#endif
