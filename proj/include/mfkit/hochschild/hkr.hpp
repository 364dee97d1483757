#ifndef MFKIT_HOCHSCHILD_HKR_HPP
#define MFKIT_HOCHSCHILD_HKR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfkit/exactalg/poly.hpp"

namespace mfkit {

// a1 (x) ... (x) am.
using BarWord = std::vector<MultiPoly>;

struct BarTerm {
    Scalar coeff;
    BarWord word;
};
using BarChain = std::vector<BarTerm>;

// sum_{i<m} (-1)^i a1..ai f ai+1..am + (-1)^m a1..am f.
BarChain cyclic_bar_B(const BarWord& w, const MultiPoly& f);
BarChain cyclic_bar_B(const BarChain& c, const MultiPoly& f);

// Multilinear expansion into words of monomials; zero coefficients dropped.
std::map<std::vector<Monomial>, Scalar> expand(const BarChain& c);

// Polynomial differential form: dx_S (bit mask S, increasing order) -> coefficient.
class Form {
public:
    explicit Form(RingPtr ring) : ring_(std::move(ring)) {}
    static Form function(const MultiPoly& g);
    static Form exterior_derivative(const MultiPoly& g);

    const RingPtr& ring() const { return ring_; }
    const std::map<std::uint32_t, MultiPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(std::uint32_t mask, const MultiPoly& c);
    Form& operator+=(const Form& o);
    friend Form operator*(const Scalar& c, const Form& f);
    friend Form wedge(const Form& a, const Form& b);
    friend bool operator==(const Form& a, const Form& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    RingPtr ring_;
    std::map<std::uint32_t, MultiPoly> terms_;
};

// a1 da2 ... dam / (m-1)!: the normalization under which HKR(B w) = -df HKR(w).
Form hkr_map(const BarWord& w);
Form hkr_map(const BarChain& c);

struct HkrCheck {
    bool ok = true;
    std::size_t words = 0;
    std::string counterexample;
};

// Checks HKR(B w) = -df wedge HKR(w) for every word of monomials of degree
// <= deg_max, of length 1..m_max. Requires characteristic 0.
HkrCheck hkr_intertwine_check(const MultiPoly& f, std::size_t m_max, std::int64_t deg_max);

} // namespace mfkit

#endif
