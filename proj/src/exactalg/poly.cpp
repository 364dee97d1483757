#include "mfkit/exactalg/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mfkit/error.hpp"

namespace mfkit {

Ring::Ring(std::vector<std::string> names, Field field) : names_(std::move(names)), field_(field) {
    std::set<std::string> seen;
    for (auto& n : names_)
        if (!seen.insert(n).second) throw Error(ErrorCode::VariableCollision, "duplicate variable '" + n + "'");
}

long Ring::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<long>(i);
    return -1;
}

RingPtr make_ring(std::vector<std::string> names, Field field) {
    return std::make_shared<const Ring>(std::move(names), field);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

RingPtr concat_rings(const RingPtr& a, const RingPtr& b) {
    if (a->field() != b->field()) throw Error(ErrorCode::FieldMismatch, "rings over different fields");
    auto names = a->names();
    for (auto& n : b->names()) {
        if (a->index_of(n) >= 0) throw Error(ErrorCode::VariableCollision, "variable '" + n + "' occurs in both rings");
        names.push_back(n);
    }
    return make_ring(std::move(names), a->field());
}

MultiPoly::MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

MultiPoly::MultiPoly(RingPtr ring, const Scalar& c) : ring_(std::move(ring)) {
    add_term(Monomial(ring_->nvars()), c);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t i) {
    auto n = ring->nvars();
    return term(std::move(ring), Monomial::variable(n, i), Scalar(1));
}

MultiPoly MultiPoly::term(RingPtr ring, const Monomial& m, const Scalar& c) {
    MultiPoly p(std::move(ring));
    p.add_term(m, c);
    return p;
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    Scalar cc = c.in_field(ring_->field());
    auto [it, inserted] = terms_.emplace(m, cc);
    if (!inserted) {
        it->second += cc;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void MultiPoly::check_ring(const MultiPoly& o) const {
    if (!same_ring(ring_, o.ring_)) throw Error(ErrorCode::RingMismatch, "polynomials live in different rings");
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

std::int64_t MultiPoly::degree(const Weights& w) const {
    std::int64_t d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree(w));
    return d;
}

std::int64_t MultiPoly::order(const Weights& w) const {
    std::int64_t d = -1;
    for (auto& [m, c] : terms_) {
        auto k = m.degree(w);
        if (d < 0 || k < d) d = k;
    }
    return d;
}

bool MultiPoly::is_homogeneous(const Weights& w) const { return degree(w) == order(w); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    check_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    check_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    MultiPoly r(a.ring_);
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (it->second.is_zero())
            it = terms_.erase(it);
        else
            ++it;
    }
    return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly r(ring_, Scalar(1));
    MultiPoly base(*this);
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Scalar& c) const {
    MultiPoly r(ring_);
    if (c.is_zero()) return r;
    for (auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
}

MultiPoly MultiPoly::derivative(std::size_t i) const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_) {
        if (m[i] == 0) continue;
        Monomial mm(m);
        mm[i] -= 1;
        r.add_term(mm, c * Scalar(static_cast<long>(m[i])));
    }
    return r;
}

MultiPoly MultiPoly::truncate(std::int64_t d, const Weights& w) const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_)
        if (m.degree(w) <= d) r.terms_.emplace(m, c);
    return r;
}

MultiPoly MultiPoly::homogeneous_part(std::int64_t d, const Weights& w) const {
    MultiPoly r(ring_);
    for (auto& [m, c] : terms_)
        if (m.degree(w) == d) r.terms_.emplace(m, c);
    return r;
}

MultiPoly MultiPoly::embed(const RingPtr& target, const std::vector<std::size_t>& map) const {
    MultiPoly r(target);
    for (auto& [m, c] : terms_) {
        Monomial mm(target->nvars());
        for (std::size_t i = 0; i < m.nvars(); ++i) mm[map[i]] += m[i];
        r.add_term(mm, c);
    }
    return r;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpq_class v = c.value();
        bool neg = c.characteristic() == 0 && v < 0;
        if (neg) v = -v;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = v == 1;
        if (!unit || m.is_one()) {
            os << v.get_str();
            if (!m.is_one()) os << "*";
        }
        bool firstvar = true;
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (!firstvar) os << "*";
            firstvar = false;
            os << ring_->name(i);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

} // namespace mfkit
