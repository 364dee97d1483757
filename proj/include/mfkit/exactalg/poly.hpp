#ifndef MFKIT_EXACTALG_POLY_HPP
#define MFKIT_EXACTALG_POLY_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mfkit/exactalg/monomial.hpp"
#include "mfkit/exactalg/scalar.hpp"

namespace mfkit {

// Polynomial ring k[x1..xn]: ordered variable names plus coefficient field.
class Ring {
public:
    Ring(std::vector<std::string> names, Field field = Field());

    std::size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    Field field() const { return field_; }
    // Index of a variable name, or -1.
    long index_of(const std::string& name) const;

    bool operator==(const Ring& o) const { return names_ == o.names_ && field_ == o.field_; }

private:
    std::vector<std::string> names_;
    Field field_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, Field field = Field());
bool same_ring(const RingPtr& a, const RingPtr& b);

class MultiPoly {
public:
    using Terms = std::map<Monomial, Scalar>;

    explicit MultiPoly(RingPtr ring);
    MultiPoly(RingPtr ring, const Scalar& c);
    static MultiPoly variable(RingPtr ring, std::size_t i);
    static MultiPoly term(RingPtr ring, const Monomial& m, const Scalar& c);

    const RingPtr& ring() const { return ring_; }
    std::size_t nvars() const { return ring_->nvars(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Scalar coefficient(const Monomial& m) const;
    Scalar constant_term() const { return coefficient(Monomial(nvars())); }
    // -1 for the zero polynomial.
    std::int64_t degree(const Weights& w = {}) const;
    // Lowest degree of a nonzero term, -1 for zero.
    std::int64_t order(const Weights& w = {}) const;
    bool is_homogeneous(const Weights& w = {}) const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Scalar& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Scalar& c) { return a *= c; }
    friend MultiPoly operator*(const Scalar& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned k) const;
    MultiPoly mul_monomial(const Monomial& m, const Scalar& c = Scalar(1)) const;
    void add_term(const Monomial& m, const Scalar& c);

    MultiPoly derivative(std::size_t i) const;
    MultiPoly truncate(std::int64_t d, const Weights& w = {}) const;
    MultiPoly homogeneous_part(std::int64_t d, const Weights& w = {}) const;
    // Substitutes variable i of this ring by variable map[i] of target.
    MultiPoly embed(const RingPtr& target, const std::vector<std::size_t>& map) const;

    // Canonical text form, terms in descending graded-lex order.
    std::string to_string() const;

private:
    void check_ring(const MultiPoly& o) const;

    RingPtr ring_;
    Terms terms_;
};

// Concatenates variable lists; names must be disjoint.
RingPtr concat_rings(const RingPtr& a, const RingPtr& b);

} // namespace mfkit

#endif
