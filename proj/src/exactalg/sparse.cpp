#include "mfkit/exactalg/sparse.hpp"

#include <algorithm>
#include <numeric>

#include "mfkit/error.hpp"

namespace mfkit {

SparseVec normalize_sparse(SparseVec v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, c);
        if (out.back().second.is_zero()) out.pop_back();
    }
    return out;
}

void SparseMatrix::add_column(SparseVec v) {
    v = normalize_sparse(std::move(v));
    if (!v.empty() && v.back().first >= rows_) throw Error(ErrorCode::DimensionMismatch, "sparse entry out of range");
    cols_.push_back(std::move(v));
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (auto& c : cols_) n += c.size();
    return n;
}

namespace {

using IntVec = std::vector<std::pair<std::uint32_t, mpz_class>>;
using ModVec = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

IntVec to_integral(const SparseVec& v, mpz_class* scale = nullptr) {
    mpz_class l = 1;
    for (auto& [i, c] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.value().get_den_mpz_t());
    IntVec out;
    out.reserve(v.size());
    for (auto& [i, c] : v) out.emplace_back(i, c.value().get_num() * (l / c.value().get_den()));
    if (scale) *scale = l;
    return out;
}

void make_primitive(IntVec& v) {
    if (v.empty()) return;
    mpz_class g = 0;
    for (auto& [i, c] : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (v.front().second < 0) g = -g;
    for (auto& [i, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// v <- (b/g) v - (a/g) piv, cancelling the common leading entry.
void reduce(IntVec& v, const IntVec& piv, IntVec& scratch) {
    const mpz_class& a = v.front().second;
    const mpz_class& b = piv.front().second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_class sv = b / g, sp = a / g;
    scratch.clear();
    std::size_t i = 1, j = 1;
    while (i < v.size() || j < piv.size()) {
        if (j >= piv.size() || (i < v.size() && v[i].first < piv[j].first)) {
            scratch.emplace_back(v[i].first, sv * v[i].second);
            ++i;
        } else if (i >= v.size() || piv[j].first < v[i].first) {
            scratch.emplace_back(piv[j].first, -sp * piv[j].second);
            ++j;
        } else {
            mpz_class c = sv * v[i].second - sp * piv[j].second;
            if (c != 0) scratch.emplace_back(v[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    std::swap(v, scratch);
    make_primitive(v);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

ModVec to_mod(const SparseVec& v, Field f) {
    ModVec out;
    for (auto& [i, c] : v) out.emplace_back(i, c.in_field(f).value().get_num().get_ui());
    return out;
}

void monic(ModVec& v, std::uint64_t p) {
    if (v.empty() || v.front().second == 1) return;
    auto inv = invmod(v.front().second, p);
    for (auto& [i, c] : v) c = mulmod(c, inv, p);
}

// piv is monic: v <- v - a piv.
void reduce(ModVec& v, const ModVec& piv, ModVec& scratch, std::uint64_t p) {
    std::uint64_t a = v.front().second;
    scratch.clear();
    std::size_t i = 1, j = 1;
    while (i < v.size() || j < piv.size()) {
        if (j >= piv.size() || (i < v.size() && v[i].first < piv[j].first)) {
            scratch.push_back(v[i]);
            ++i;
        } else if (i >= v.size() || piv[j].first < v[i].first) {
            scratch.emplace_back(piv[j].first, (p - mulmod(a, piv[j].second, p)) % p);
            ++j;
        } else {
            std::uint64_t c = (v[i].second + p - mulmod(a, piv[j].second, p)) % p;
            if (c) scratch.emplace_back(v[i].first, c);
            ++i;
            ++j;
        }
    }
    std::swap(v, scratch);
    monic(v, p);
}

// Incremental echelon on a stream of vectors. Indices >= limit do not act as
// pivots; a vector whose lead reaches them is reported as dependent.
template <class Vec, class Reduce, class Norm>
struct Echelon {
    std::vector<long> pivot_of;
    std::vector<Vec> pivots;
    Vec scratch;
    std::size_t limit;
    Reduce red;
    Norm norm;

    Echelon(std::size_t dim, std::size_t lim, Reduce r, Norm n)
        : pivot_of(dim, -1), limit(lim), red(r), norm(n) {}

    // Returns true if v was independent (and inserted); otherwise v holds the residue.
    bool insert(Vec& v) {
        norm(v);
        while (!v.empty() && v.front().first < limit) {
            long k = pivot_of[v.front().first];
            if (k < 0) {
                pivot_of[v.front().first] = static_cast<long>(pivots.size());
                pivots.push_back(std::move(v));
                return true;
            }
            red(v, pivots[static_cast<std::size_t>(k)], scratch);
        }
        return false;
    }
};

} // namespace

std::size_t sparse_rank(const SparseMatrix& m) {
    if (m.field().is_rational()) {
        auto red = [](IntVec& v, const IntVec& p, IntVec& s) { reduce(v, p, s); };
        auto norm = [](IntVec& v) { make_primitive(v); };
        Echelon<IntVec, decltype(red), decltype(norm)> e(m.rows(), m.rows(), red, norm);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto v = to_integral(m.column(j));
            e.insert(v);
        }
        return e.pivots.size();
    }
    std::uint64_t p = m.field().characteristic();
    auto red = [p](ModVec& v, const ModVec& pv, ModVec& s) { reduce(v, pv, s, p); };
    auto norm = [p](ModVec& v) { monic(v, p); };
    Echelon<ModVec, decltype(red), decltype(norm)> e(m.rows(), m.rows(), red, norm);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto v = to_mod(m.column(j), m.field());
        e.insert(v);
    }
    return e.pivots.size();
}

std::vector<SparseVec> sparse_kernel(const SparseMatrix& m) {
    // Each column is augmented by a unit vector placed after the row indices;
    // a column whose row part reduces to zero yields a kernel vector.
    std::size_t R = m.rows(), C = m.cols();
    std::vector<SparseVec> out;
    Field f = m.field();
    if (f.is_rational()) {
        auto red = [](IntVec& v, const IntVec& p, IntVec& s) { reduce(v, p, s); };
        auto norm = [](IntVec& v) { make_primitive(v); };
        Echelon<IntVec, decltype(red), decltype(norm)> e(R + C, R, red, norm);
        for (std::size_t j = 0; j < C; ++j) {
            mpz_class l;
            auto v = to_integral(m.column(j), &l);
            v.emplace_back(static_cast<std::uint32_t>(R + j), l);
            if (!e.insert(v)) {
                SparseVec k;
                for (auto& [i, c] : v) k.emplace_back(i - static_cast<std::uint32_t>(R), Scalar(mpq_class(c), f));
                out.push_back(std::move(k));
            }
        }
        return out;
    }
    std::uint64_t p = f.characteristic();
    auto red = [p](ModVec& v, const ModVec& pv, ModVec& s) { reduce(v, pv, s, p); };
    auto norm = [p](ModVec& v) { monic(v, p); };
    Echelon<ModVec, decltype(red), decltype(norm)> e(R + C, R, red, norm);
    for (std::size_t j = 0; j < C; ++j) {
        auto v = to_mod(m.column(j), f);
        v.emplace_back(static_cast<std::uint32_t>(R + j), 1);
        if (!e.insert(v)) {
            SparseVec k;
            for (auto& [i, c] : v)
                k.emplace_back(i - static_cast<std::uint32_t>(R), Scalar(mpq_class(static_cast<unsigned long>(c)), f));
            out.push_back(std::move(k));
        }
    }
    return out;
}

std::vector<long> column_blocks(const SparseMatrix& m, std::size_t* count) {
    std::vector<std::size_t> parent(m.rows());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& c = m.column(j);
        for (std::size_t k = 1; k < c.size(); ++k) {
            auto a = find(c[0].first), b = find(c[k].first);
            if (a != b) parent[a] = b;
        }
    }
    std::vector<long> id(m.rows(), -1), out(m.cols(), -1);
    long next = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const auto& c = m.column(j);
        if (c.empty()) continue;
        auto r = find(c[0].first);
        if (id[r] < 0) id[r] = next++;
        out[j] = id[r];
    }
    if (count) *count = static_cast<std::size_t>(next);
    return out;
}

} // namespace mfkit
