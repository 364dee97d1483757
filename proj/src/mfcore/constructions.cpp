#include "mfkit/mfcore/constructions.hpp"

#include <algorithm>
#include <bit>

#include "mfkit/error.hpp"

namespace mfkit {

namespace {

int popcount(unsigned x) { return std::popcount(x); }

// Sign of e_i wedge e_S (and of contracting e_i out of e_S).
int koszul_sign(unsigned mask, unsigned i) { return popcount(mask & ((1u << i) - 1u)) % 2 ? -1 : 1; }

} // namespace

MatrixFactorization koszul_mf(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b) {
    if (a.empty() || a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "koszul_mf needs two sequences of the same positive length");
    std::size_t n = a.size();
    if (n > 16) throw Error(ErrorCode::Precondition, "koszul_mf supports at most 16 factors");
    auto ring = a[0].ring();
    MultiPoly f(ring);
    for (std::size_t i = 0; i < n; ++i) f += a[i] * b[i];

    // Basis: subsets ordered by homological degree n - |S|, then by mask.
    std::vector<unsigned> even, odd;
    for (unsigned s = 0; s < (1u << n); ++s)
        ((static_cast<std::size_t>(popcount(s)) % 2 == n % 2) ? even : odd).push_back(s);
    auto order = [&](unsigned x, unsigned y) {
        int dx = popcount(x), dy = popcount(y);
        return dx != dy ? dx > dy : x < y;
    };
    std::sort(even.begin(), even.end(), order);
    std::sort(odd.begin(), odd.end(), order);
    std::size_t r = even.size();
    std::vector<long> pos(1u << n);
    for (std::size_t i = 0; i < r; ++i) {
        pos[even[i]] = static_cast<long>(i);
        pos[odd[i]] = static_cast<long>(i);
    }
    PolyMatrix p(ring, r, r), q(ring, r, r);
    // delta(e_S) for S odd (column of p) and S even (column of q).
    auto fill = [&](const std::vector<unsigned>& src, PolyMatrix& m) {
        for (std::size_t j = 0; j < r; ++j) {
            unsigned s = src[j];
            for (unsigned i = 0; i < n; ++i) {
                int sg = koszul_sign(s, i);
                if (s & (1u << i)) {
                    if (!b[i].is_zero()) m(static_cast<std::size_t>(pos[s ^ (1u << i)]), j) += b[i] * Scalar(sg);
                } else {
                    if (!a[i].is_zero()) m(static_cast<std::size_t>(pos[s | (1u << i)]), j) += a[i] * Scalar(sg);
                }
            }
        }
    };
    fill(odd, p);
    fill(even, q);
    std::vector<int> grading;
    for (auto s : even) grading.push_back(static_cast<int>(n) - popcount(s));
    for (auto s : odd) grading.push_back(static_cast<int>(n) - popcount(s));
    return MatrixFactorization(f, p, q, grading);
}

MatrixFactorization stabilized_residue_field(const MultiPoly& f) {
    if (!f.constant_term().is_zero())
        throw Error(ErrorCode::Precondition, "stabilized residue field needs f(0) = 0");
    auto ring = f.ring();
    std::size_t n = ring->nvars();
    if (n == 0) throw Error(ErrorCode::Precondition, "stabilized residue field needs at least one variable");
    std::vector<MultiPoly> xs, fs(n, MultiPoly(ring));
    for (std::size_t i = 0; i < n; ++i) xs.push_back(MultiPoly::variable(ring, i));
    for (auto& [m, c] : f.terms()) {
        std::size_t i = 0;
        while (m[i] == 0) ++i;
        Monomial mm(m);
        mm[i] -= 1;
        fs[i].add_term(mm, c);
    }
    return koszul_mf(xs, fs);
}

MatrixFactorization trivial_mf(const MultiPoly& f) {
    auto ring = f.ring();
    PolyMatrix p(ring, 1, 1), q(ring, 1, 1);
    p(0, 0) = MultiPoly(ring, Scalar(1));
    q(0, 0) = f;
    return MatrixFactorization(f, p, q);
}

MatrixFactorization dual(const MatrixFactorization& m) {
    std::size_t r = m.rank();
    std::vector<int> g(2 * r);
    for (std::size_t i = 0; i < r; ++i) {
        g[i] = 1 - m.grading()[r + i];
        g[r + i] = 1 - m.grading()[i];
    }
    return MatrixFactorization(-m.potential(), m.p().transpose(), -m.q().transpose(), g);
}

MatrixFactorization shift(const MatrixFactorization& m) {
    std::size_t r = m.rank();
    std::vector<int> g(2 * r);
    for (std::size_t i = 0; i < r; ++i) {
        g[i] = m.grading()[r + i] + 1;
        g[r + i] = m.grading()[i] + 1;
    }
    return MatrixFactorization(m.potential(), -m.q(), -m.p(), g);
}

MatrixFactorization direct_sum(const MatrixFactorization& m, const MatrixFactorization& n) {
    if (!same_ring(m.ring(), n.ring())) throw Error(ErrorCode::RingMismatch, "direct sum over different rings");
    if (m.potential() != n.potential()) throw Error(ErrorCode::PotentialMismatch, "direct sum of different potentials");
    std::size_t a = m.rank(), b = n.rank();
    PolyMatrix p(m.ring(), a + b, a + b), q(m.ring(), a + b, a + b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) {
            p(i, j) = m.p()(i, j);
            q(i, j) = m.q()(i, j);
        }
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            p(a + i, a + j) = n.p()(i, j);
            q(a + i, a + j) = n.q()(i, j);
        }
    std::vector<int> g;
    g.insert(g.end(), m.grading().begin(), m.grading().begin() + static_cast<long>(a));
    g.insert(g.end(), n.grading().begin(), n.grading().begin() + static_cast<long>(b));
    g.insert(g.end(), m.grading().begin() + static_cast<long>(a), m.grading().end());
    g.insert(g.end(), n.grading().begin() + static_cast<long>(b), n.grading().end());
    return MatrixFactorization(m.potential(), p, q, g);
}

MatrixFactorization extend_ring(const MatrixFactorization& m, const RingPtr& target) {
    std::vector<std::size_t> map;
    for (auto& name : m.ring()->names()) {
        long i = target->index_of(name);
        if (i < 0) throw Error(ErrorCode::RingMismatch, "variable '" + name + "' missing from target ring");
        map.push_back(static_cast<std::size_t>(i));
    }
    return MatrixFactorization(m.potential().embed(target, map), m.p().embed(target, map), m.q().embed(target, map),
                               m.grading());
}

MatrixFactorization ts_tensor(const MatrixFactorization& m, const MatrixFactorization& n,
                              const std::map<std::string, std::string>& rename) {
    std::vector<std::string> nn = n.ring()->names();
    for (auto& name : nn) {
        auto it = rename.find(name);
        if (it != rename.end()) name = it->second;
    }
    auto renamed = make_ring(nn, n.ring()->field());
    auto ring = concat_rings(m.ring(), renamed);
    std::vector<std::size_t> mm(m.ring()->nvars()), nm(n.ring()->nvars());
    for (std::size_t i = 0; i < mm.size(); ++i) mm[i] = i;
    for (std::size_t i = 0; i < nm.size(); ++i) nm[i] = mm.size() + i;
    PolyMatrix dm = m.delta().embed(ring, mm), dn = n.delta().embed(ring, nm);
    std::size_t a = m.rank(), b = n.rank();
    std::size_t A = 2 * a, B = 2 * b;
    auto par = [](std::size_t i, std::size_t r) { return i < r ? 0 : 1; };
    // New basis: even = V0W0, V1W1; odd = V0W1, V1W0.
    std::vector<std::pair<std::size_t, std::size_t>> basis;
    for (int want : {0, 1})
        for (auto [pa, pb] : {std::pair{0, want}, std::pair{1, 1 - want}})
            for (std::size_t i = 0; i < A; ++i)
                for (std::size_t j = 0; j < B; ++j)
                    if (par(i, a) == pa && par(j, b) == pb) basis.emplace_back(i, j);
    std::size_t R = basis.size() / 2;
    std::vector<std::vector<long>> pos(A, std::vector<long>(B));
    for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k].first][basis[k].second] = static_cast<long>(k);
    PolyMatrix delta(ring, 2 * R, 2 * R);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        auto [i, j] = basis[k];
        for (std::size_t i2 = 0; i2 < A; ++i2)
            if (!dm(i2, i).is_zero()) delta(static_cast<std::size_t>(pos[i2][j]), k) += dm(i2, i);
        Scalar sg(par(i, a) ? -1 : 1);
        for (std::size_t j2 = 0; j2 < B; ++j2)
            if (!dn(j2, j).is_zero()) delta(static_cast<std::size_t>(pos[i][j2]), k) += dn(j2, j) * sg;
    }
    PolyMatrix p(ring, R, R), q(ring, R, R);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < R; ++j) {
            p(i, j) = delta(i, R + j);
            q(i, j) = delta(R + i, j);
        }
    std::vector<int> g;
    for (auto [i, j] : basis) g.push_back(m.grading()[i] + n.grading()[j]);
    MultiPoly f = m.potential().embed(ring, mm) + n.potential().embed(ring, nm);
    return MatrixFactorization(f, p, q, g);
}

std::string fresh_variable(const Ring& r, const std::string& base, const std::vector<std::string>& avoid) {
    auto taken = [&](const std::string& s) {
        return r.index_of(s) >= 0 || std::find(avoid.begin(), avoid.end(), s) != avoid.end();
    };
    if (!taken(base)) return base;
    for (int k = 1;; ++k) {
        auto s = base + std::to_string(k);
        if (!taken(s)) return s;
    }
}

MatrixFactorization knorrer_double(const MatrixFactorization& m, const std::string& u, const std::string& v) {
    std::string un = u.empty() ? fresh_variable(*m.ring(), "u") : u;
    std::string vn = v.empty() ? fresh_variable(*m.ring(), "v", {un}) : v;
    auto r = make_ring({un, vn}, m.ring()->field());
    auto k = koszul_mf({MultiPoly::variable(r, 0)}, {MultiPoly::variable(r, 1)});
    return ts_tensor(m, k);
}

} // namespace mfkit
