#include "mfkit/exactalg/monomial.hpp"

#include <algorithm>

namespace mfkit {

Monomial Monomial::variable(std::size_t nvars, std::size_t i, std::uint32_t power) {
    Monomial m(nvars);
    m.e_[i] = power;
    return m;
}

std::int64_t Monomial::degree() const {
    std::int64_t d = 0;
    for (auto x : e_) d += x;
    return d;
}

std::int64_t Monomial::degree(const Weights& w) const {
    if (w.empty()) return degree();
    std::int64_t d = 0;
    for (std::size_t i = 0; i < e_.size(); ++i) d += w[i] * static_cast<std::int64_t>(e_[i]);
    return d;
}

bool Monomial::is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // Among equal degree, x1^k is the largest.
    return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : e_) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

void enumerate(std::size_t i, std::int64_t budget, bool exact, const Weights& w, Monomial& cur,
               std::vector<Monomial>& out) {
    std::size_t n = cur.nvars();
    if (i == n) {
        if (!exact || budget == 0) out.push_back(cur);
        return;
    }
    std::int64_t wi = w.empty() ? 1 : w[i];
    for (std::uint32_t k = 0; static_cast<std::int64_t>(k) * wi <= budget; ++k) {
        cur[i] = k;
        enumerate(i + 1, budget - static_cast<std::int64_t>(k) * wi, exact, w, cur, out);
        if (wi == 0) break;
    }
    cur[i] = 0;
}

} // namespace

std::vector<Monomial> monomials_up_to(std::size_t nvars, std::int64_t d, const Weights& w) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur(nvars);
    enumerate(0, d, false, w, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::int64_t d, const Weights& w) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur(nvars);
    enumerate(0, d, true, w, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace mfkit
