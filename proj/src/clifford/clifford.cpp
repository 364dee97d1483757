#include "mfkit/clifford/clifford.hpp"

#include <sstream>

#include "mfkit/error.hpp"

namespace mfkit {

QuadraticForm::QuadraticForm(Matrix gram) : Q_(std::move(gram)) {
    if (Q_.rows() != Q_.cols()) throw Error(ErrorCode::DimensionMismatch, "a Gram matrix must be square");
    for (std::size_t i = 0; i < Q_.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!(Q_(i, j) == Q_(j, i))) throw Error(ErrorCode::Precondition, "a Gram matrix must be symmetric");
}

QuadraticForm QuadraticForm::from_quadric(const MultiPoly& q) {
    const std::size_t n = q.nvars();
    Field f = q.ring()->field();
    Matrix Q(n, n, f);
    for (auto& [m, c] : q.terms()) {
        if (m.degree() != 2) throw Error(ErrorCode::Precondition, "a quadric must be homogeneous of degree 2");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) idx.push_back(i);
        if (idx[0] == idx[1]) {
            Q(idx[0], idx[0]) += c;
        } else {
            Scalar h = c * Scalar(mpq_class(1, 2), f);
            Q(idx[0], idx[1]) += h;
            Q(idx[1], idx[0]) += h;
        }
    }
    return QuadraticForm(std::move(Q));
}

QuadraticForm QuadraticForm::hyperbolic(std::size_t r, Field f) {
    Matrix Q(2 * r, 2 * r, f);
    for (std::size_t i = 0; i < r; ++i) {
        Q(i, r + i) = Scalar(mpq_class(1, 2), f);
        Q(r + i, i) = Scalar(mpq_class(1, 2), f);
    }
    return QuadraticForm(std::move(Q));
}

QuadraticForm QuadraticForm::diagonal(const std::vector<Scalar>& d, Field f) {
    Matrix Q(d.size(), d.size(), f);
    for (std::size_t i = 0; i < d.size(); ++i) Q(i, i) = d[i];
    return QuadraticForm(std::move(Q));
}

bool QuadraticForm::nondegenerate() const { return exact_rank_kernel(Q_).rank == dim(); }

Scalar QuadraticForm::pair(const std::vector<Scalar>& v, const std::vector<Scalar>& w) const {
    Scalar s(0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) s += v[i] * Q_(i, j) * w[j];
    return s;
}

MultiPoly QuadraticForm::polynomial(const RingPtr& ring) const {
    if (ring->nvars() != dim()) throw Error(ErrorCode::DimensionMismatch, "ring and form differ in dimension");
    MultiPoly q(ring);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            if (Q_(i, j).is_zero()) continue;
            Monomial m(dim());
            ++m[i];
            ++m[j];
            q.add_term(m, Q_(i, j));
        }
    return q;
}

QuadraticForm QuadraticForm::congruent(const Matrix& A) const {
    if (A.rows() != dim()) throw Error(ErrorCode::DimensionMismatch, "base change has the wrong size");
    Matrix At(A.cols(), A.rows(), A.field());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) At(j, i) = A(i, j);
    return QuadraticForm(At * Q_ * A);
}

void CliffordElement::add(std::uint32_t mask, std::uint32_t k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms.emplace(std::make_pair(mask, k), c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

CliffordElement& CliffordElement::operator+=(const CliffordElement& o) {
    for (auto& [key, c] : o.terms) add(key.first, key.second, c);
    return *this;
}

std::string CliffordElement::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [key, c] : terms) {
        std::string word;
        for (std::uint32_t i = 0; i < 32; ++i)
            if (key.first >> i & 1) word += (word.empty() ? "" : "*") + std::string("e") + std::to_string(i + 1);
        if (key.second)
            word += (word.empty() ? "" : "*") + std::string("beta") +
                    (key.second > 1 ? "^" + std::to_string(key.second) : "");
        bool neg = c.value() < 0 && c.characteristic() == 0;
        Scalar mag = neg ? -c : c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (word.empty())
            os << mag.to_string();
        else if (mag.is_one())
            os << word;
        else
            os << mag.to_string() << "*" << word;
    }
    return os.str();
}

CliffordAlgebra::CliffordAlgebra(const QuadraticForm& q)
    : q_(q), n_(q.dim()), gram_(std::make_shared<const Matrix>(q.gram())) {
    if (n_ > 20) throw Error(ErrorCode::Precondition, "Clifford algebra dimension too large");
}

CliffordElement CliffordAlgebra::zero() const { return CliffordElement{gram_, {}}; }

CliffordElement CliffordAlgebra::basis(std::uint32_t mask, std::uint32_t k) const {
    if (mask >> n_) throw Error(ErrorCode::DimensionMismatch, "basis subset out of range");
    auto e = zero();
    e.add(mask, k, Scalar(1));
    return e;
}

CliffordElement CliffordAlgebra::scale(const CliffordElement& a, const Scalar& c) const {
    auto e = zero();
    for (auto& [key, x] : a.terms) e.add(key.first, key.second, x * c);
    return e;
}

std::pair<std::size_t, std::size_t> CliffordAlgebra::truncated_dims(std::size_t N) const {
    std::size_t even = 0;
    for (std::uint32_t m = 0; m < rank(); ++m) even += parity(m) == 0;
    return {N * even, N * (rank() - even)};
}

void CliffordAlgebra::straighten(std::vector<std::size_t> w, std::uint32_t k, const Scalar& c,
                                 CliffordElement& out) const {
    if (c.is_zero()) return;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        std::size_t a = w[i], b = w[i + 1];
        if (a < b) continue;
        std::vector<std::size_t> rest(w.begin(), w.begin() + static_cast<long>(i));
        rest.insert(rest.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        if (a == b) {
            // e_a e_a = -Q_aa beta.
            straighten(std::move(rest), k + 1, c * -(*gram_)(a, a), out);
            return;
        }
        // e_a e_b = -e_b e_a - 2 Q_ab beta.
        straighten(rest, k + 1, c * Scalar(-2) * (*gram_)(a, b), out);
        std::swap(w[i], w[i + 1]);
        straighten(std::move(w), k, -c, out);
        return;
    }
    std::uint32_t mask = 0;
    for (auto i : w) mask |= std::uint32_t{1} << i;
    out.add(mask, k, c);
}

CliffordElement CliffordAlgebra::mul(const CliffordElement& a, const CliffordElement& b) const {
    auto out = zero();
    for (auto& [ka, ca] : a.terms)
        for (auto& [kb, cb] : b.terms) {
            std::vector<std::size_t> w;
            for (std::size_t i = 0; i < n_; ++i)
                if (ka.first >> i & 1) w.push_back(i);
            for (std::size_t i = 0; i < n_; ++i)
                if (kb.first >> i & 1) w.push_back(i);
            straighten(std::move(w), ka.second + kb.second, ca * cb, out);
        }
    return out;
}

CliffordElement clifford_mul(const CliffordAlgebra& alg, const CliffordElement& a, const CliffordElement& b) {
    auto same = [&](const CliffordElement& e) {
        return e.gram && (e.gram.get() == &alg.form().gram() || *e.gram == alg.form().gram());
    };
    if (!same(a) || !same(b)) throw Error(ErrorCode::RingMismatch, "elements belong to different Clifford algebras");
    return alg.mul(a, b);
}

} // namespace mfkit
