#ifndef MFKIT_EXACTALG_MONOMIAL_HPP
#define MFKIT_EXACTALG_MONOMIAL_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace mfkit {

using Weights = std::vector<std::int64_t>;

// Exponent vector. Ordering is graded lexicographic (total degree first,
// then lex with x1 > x2 > ...), ascending.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : e_(std::move(e)) {}
    static Monomial variable(std::size_t nvars, std::size_t i, std::uint32_t power = 1);

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return e_; }

    std::int64_t degree() const;
    // Weighted degree; empty weights means all ones.
    std::int64_t degree(const Weights& w) const;
    bool is_one() const;
    bool divides(const Monomial& o) const;

    Monomial operator*(const Monomial& o) const;
    // Requires divides(o) from the right: returns o / *this.
    Monomial quotient_of(const Monomial& o) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator<(const Monomial& a, const Monomial& b);

    std::size_t hash() const;

private:
    std::vector<std::uint32_t> e_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// All monomials in nvars variables of (weighted) degree <= d, in ascending order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, std::int64_t d, const Weights& w = {});
// All monomials of (weighted) degree exactly d.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::int64_t d, const Weights& w = {});

} // namespace mfkit

#endif
