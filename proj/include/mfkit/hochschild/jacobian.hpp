#ifndef MFKIT_HOCHSCHILD_JACOBIAN_HPP
#define MFKIT_HOCHSCHILD_JACOBIAN_HPP

#include <map>
#include <optional>
#include <vector>

#include "mfkit/exactalg/matrix.hpp"
#include "mfkit/exactalg/poly.hpp"

namespace mfkit {

// k[x]/(partials of f) for quasi-homogeneous f with an isolated critical
// point, graded by weighted degree. The basis is chosen degree by degree,
// smallest monomials first.
class JacobianRing {
public:
    explicit JacobianRing(const MultiPoly& f, const std::optional<Weights>& weights = std::nullopt);

    const MultiPoly& potential() const { return f_; }
    const Weights& weights() const { return w_; }
    std::int64_t degree() const { return d_; }
    std::int64_t socle_degree() const { return s_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t socle_index() const { return socle_; }

    // Coordinates of p modulo the Jacobian ideal.
    std::vector<Scalar> normal_form(const MultiPoly& p) const;
    std::vector<Scalar> multiply(std::size_t a, std::size_t b) const;

private:
    struct Slice {
        std::vector<Monomial> monos;
        Matrix system;  // columns: basis monomials of this degree, then ideal generators
        std::size_t first = 0;  // position of the first basis monomial in basis_
        std::size_t count = 0;
    };

    MultiPoly f_;
    Weights w_;
    std::int64_t d_ = 0, s_ = 0;
    std::vector<Monomial> basis_;
    std::map<std::int64_t, Slice> slices_;
    std::size_t socle_ = 0;
};

struct SoclePairing {
    std::vector<Monomial> basis;
    Monomial socle;
    Matrix matrix;  // coefficient of the socle monomial in a * b
    bool nondegenerate = false;
};

SoclePairing socle_pairing(const MultiPoly& f, const std::optional<Weights>& weights = std::nullopt);

} // namespace mfkit

#endif
