#ifndef MFKIT_EXACTALG_WEIGHTS_HPP
#define MFKIT_EXACTALG_WEIGHTS_HPP

#include <optional>

#include "mfkit/exactalg/poly.hpp"

namespace mfkit {

struct QuasiHomogeneity {
    Weights weights;     // positive integers with gcd 1
    std::int64_t degree; // weighted degree of f
};

// Positive integer weights making f weighted homogeneous, if they exist.
// Homogeneous polynomials get all-one weights; otherwise the weights solve
// sum_i w_i e_i = 1 over the exponent vectors e of f, taking the minimal-norm
// solution when it is not unique.
std::optional<QuasiHomogeneity> detect_weights(const MultiPoly& f);

} // namespace mfkit

#endif
