#ifndef MFKIT_EXACTALG_SCALAR_HPP
#define MFKIT_EXACTALG_SCALAR_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace mfkit {

// Coefficient field: the rationals (p == 0) or a prime field F_p.
class Field {
public:
    Field() = default;
    static Field rationals() { return Field(); }
    static Field prime(std::uint64_t p);
    // Accepts "Q" or "Fp:<p>".
    static Field parse(const std::string& s);
    // No primality check; p must come from an existing Field.
    static Field from_characteristic(std::uint64_t p) { Field f; f.p_ = p; return f; }

    std::uint64_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }
    std::string name() const;

    bool operator==(const Field&) const = default;

private:
    std::uint64_t p_ = 0;
};

// Exact field element. In F_p mode the value is kept as an integer in [0, p).
// A characteristic-zero operand is coerced into F_p when mixed with one.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : v_(v) {}
    Scalar(int v) : v_(v) {}
    explicit Scalar(const mpq_class& v, Field f = Field());
    Scalar(const mpz_class& num, const mpz_class& den, Field f = Field());

    Field field() const { return Field::from_characteristic(p_); }
    std::uint64_t characteristic() const { return p_; }
    Scalar in_field(Field f) const;

    const mpq_class& value() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string to_string() const;

private:
    void unify(const Scalar& o);
    void reduce();

    mpq_class v_;
    std::uint64_t p_ = 0;

    friend class Field;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace mfkit

#endif
