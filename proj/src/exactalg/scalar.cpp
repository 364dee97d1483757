#include "mfkit/exactalg/scalar.hpp"

#include <ostream>

#include "mfkit/error.hpp"

namespace mfkit {

const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::RingMismatch: return "ring-mismatch";
    case ErrorCode::FieldMismatch: return "field-mismatch";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidFactorization: return "invalid-factorization";
    case ErrorCode::PotentialMismatch: return "potential-mismatch";
    case ErrorCode::VariableCollision: return "variable-collision";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::FitInconsistent: return "fit-inconsistent";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

Field Field::prime(std::uint64_t p) {
    mpz_class z(std::to_string(p));
    if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
        throw Error(ErrorCode::Precondition, "field characteristic " + std::to_string(p) + " is not prime");
    Field f;
    f.p_ = p;
    return f;
}

Field Field::parse(const std::string& s) {
    if (s == "Q" || s == "QQ" || s.empty()) return Field();
    if (s.rfind("Fp:", 0) == 0) {
        try {
            return prime(std::stoull(s.substr(3)));
        } catch (const std::logic_error&) {
        }
    }
    throw Error(ErrorCode::Precondition, "unknown field '" + s + "' (expected Q or Fp:<prime>)");
}

std::string Field::name() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar::Scalar(const mpq_class& v, Field f) : v_(v), p_(f.characteristic()) {
    v_.canonicalize();
    reduce();
}

Scalar::Scalar(const mpz_class& num, const mpz_class& den, Field f) : p_(f.characteristic()) {
    if (den == 0) throw Error(ErrorCode::Precondition, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
    reduce();
}

Scalar Scalar::in_field(Field f) const {
    if (f.characteristic() == p_) return *this;
    if (p_ != 0) throw Error(ErrorCode::FieldMismatch, "cannot move F_p element to another field");
    Scalar r = *this;
    r.p_ = f.characteristic();
    r.reduce();
    return r;
}

void Scalar::reduce() {
    if (p_ == 0) return;
    mpz_class p(std::to_string(p_));
    mpz_class num = v_.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = v_.get_den() % p;
    if (den == 0) throw Error(ErrorCode::FieldMismatch, "denominator divisible by field characteristic");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    v_ = mpq_class(r);
}

void Scalar::unify(const Scalar& o) {
    if (o.p_ == p_ || o.p_ == 0) return;
    if (p_ != 0) throw Error(ErrorCode::FieldMismatch, "mixing different prime fields");
    p_ = o.p_;
    reduce();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.v_ = -r.v_;
    r.reduce();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    unify(o);
    v_ += o.v_;
    if (o.p_ != p_) {
        // o is characteristic zero while this is F_p: o.v_ may be fractional.
        v_.canonicalize();
    }
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    unify(o);
    v_ *= o.v_;
    reduce();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::Precondition, "division by zero");
    Scalar r = *this;
    r.v_ = 1 / r.v_;
    r.v_.canonicalize();
    r.reduce();
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    unify(o);
    Scalar oo = o.in_field(field());
    return *this *= oo.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ == b.p_) return a.v_ == b.v_;
    if (a.p_ == 0) return a.in_field(b.field()).v_ == b.v_;
    if (b.p_ == 0) return b.in_field(a.field()).v_ == a.v_;
    return false;
}

std::string Scalar::to_string() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

} // namespace mfkit
