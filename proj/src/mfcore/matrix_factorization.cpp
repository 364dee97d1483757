#include "mfkit/mfcore/matrix_factorization.hpp"

#include <algorithm>
#include <cstdlib>

#include "mfkit/error.hpp"

namespace mfkit {

std::string factorization_defect(const MultiPoly& f, const PolyMatrix& p, const PolyMatrix& q) {
    auto check = [&](const PolyMatrix& prod, const char* name) -> std::string {
        for (std::size_t i = 0; i < prod.rows(); ++i)
            for (std::size_t j = 0; j < prod.cols(); ++j) {
                MultiPoly want = i == j ? f : MultiPoly(f.ring());
                if (prod(i, j) != want)
                    return "factorization identity fails at (" + std::to_string(i) + "," + std::to_string(j) +
                           ") of " + name + ": got " + prod(i, j).to_string() + ", expected " + want.to_string();
            }
        return {};
    };
    auto a = check(p * q, "p*q");
    if (!a.empty()) return a;
    return check(q * p, "q*p");
}

MatrixFactorization::MatrixFactorization(MultiPoly f, PolyMatrix p, PolyMatrix q, std::vector<int> grading)
    : MatrixFactorization(std::move(f), std::move(p), std::move(q), std::move(grading), true) {}

MatrixFactorization MatrixFactorization::unchecked(MultiPoly f, PolyMatrix p, PolyMatrix q, std::vector<int> grading) {
    return MatrixFactorization(std::move(f), std::move(p), std::move(q), std::move(grading), false);
}

MatrixFactorization::MatrixFactorization(MultiPoly f, PolyMatrix p, PolyMatrix q, std::vector<int> grading,
                                         bool check)
    : f_(std::move(f)), p_(std::move(p)), q_(std::move(q)), grading_(std::move(grading)) {
    std::size_t r = p_.rows();
    if (r == 0 || p_.cols() != r || q_.rows() != r || q_.cols() != r)
        throw Error(ErrorCode::DimensionMismatch, "p and q must be square of the same positive rank");
    if (!same_ring(f_.ring(), p_.ring()) || !same_ring(f_.ring(), q_.ring()))
        throw Error(ErrorCode::RingMismatch, "p, q and f must share one ring");
    if (grading_.empty()) {
        grading_.assign(2 * r, 0);
        std::fill(grading_.begin() + static_cast<long>(r), grading_.end(), 1);
    }
    if (grading_.size() != 2 * r) throw Error(ErrorCode::DimensionMismatch, "grading must list 2*rank degrees");
    for (std::size_t i = 0; i < 2 * r; ++i)
        if (std::abs(grading_[i]) % 2 != (i < r ? 0 : 1))
            throw Error(ErrorCode::Precondition, "grading parity does not match the summand of basis vector " +
                                                     std::to_string(i));
    auto chk = [&](const PolyMatrix& m, std::size_t row_off, std::size_t col_off) {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (!m(i, j).is_zero() && std::abs(grading_[row_off + i] - grading_[col_off + j]) != 1)
                    throw Error(ErrorCode::Precondition, "grading: entry (" + std::to_string(i) + "," +
                                                             std::to_string(j) +
                                                             ") does not change degree by one");
    };
    chk(p_, 0, r);
    chk(q_, r, 0);
    if (check) {
        auto defect = factorization_defect(f_, p_, q_);
        if (!defect.empty()) throw Error(ErrorCode::InvalidFactorization, defect);
    }
}

bool MatrixFactorization::has_default_grading() const {
    for (std::size_t i = 0; i < grading_.size(); ++i)
        if (grading_[i] != (i < rank() ? 0 : 1)) return false;
    return true;
}

PolyMatrix MatrixFactorization::delta() const {
    std::size_t r = rank();
    PolyMatrix d(ring(), 2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            d(i, r + j) = p_(i, j);
            d(r + i, j) = q_(i, j);
        }
    return d;
}

PolyMatrix MatrixFactorization::d_part() const {
    PolyMatrix d = delta();
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (grading_[i] != grading_[j] - 1) d(i, j) = MultiPoly(ring());
    return d;
}

PolyMatrix MatrixFactorization::b_part() const {
    PolyMatrix d = delta();
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (grading_[i] != grading_[j] + 1) d(i, j) = MultiPoly(ring());
    return d;
}

int MatrixFactorization::min_degree() const { return *std::min_element(grading_.begin(), grading_.end()); }
int MatrixFactorization::max_degree() const { return *std::max_element(grading_.begin(), grading_.end()); }

std::int64_t MatrixFactorization::max_entry_degree(const Weights& w) const {
    return std::max(p_.max_degree(w), q_.max_degree(w));
}

bool operator==(const MatrixFactorization& a, const MatrixFactorization& b) {
    if (!(a.f_ == b.f_ && a.p_ == b.p_ && a.q_ == b.q_)) return false;
    int off = b.grading_[0] - a.grading_[0];
    for (std::size_t i = 0; i < a.grading_.size(); ++i)
        if (b.grading_[i] - a.grading_[i] != off) return false;
    return off % 2 == 0;
}

ValidationReport validate(const MatrixFactorization& m) {
    ValidationReport r;
    r.message = factorization_defect(m.potential(), m.p(), m.q());
    r.ok = r.message.empty();
    if (r.ok) r.message = "ok";
    return r;
}

} // namespace mfkit
