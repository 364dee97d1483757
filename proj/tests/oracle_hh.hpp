#ifndef MFKIT_TESTS_ORACLE_HH_HPP
#define MFKIT_TESTS_ORACLE_HH_HPP

// Dense reference computation of Koszul-type cohomology of a weighted
// homogeneous potential, one total degree at a time. Basis elements are
// (subset, u power, monomial); every differential raises total degree by deg f.

#include <array>
#include <map>
#include <tuple>
#include <vector>

#include "mfkit/exactalg/poly.hpp"
#include "oracle.hpp"

namespace oracle {

enum class Kind { Wedge, Contract, Cyclic };

using Exps = std::vector<unsigned>;
using Key = std::tuple<unsigned, unsigned, Exps>;

inline void exps_of_degree(const std::vector<long>& w, std::size_t i, long d, Exps& cur, std::vector<Exps>& out) {
    if (i == w.size()) {
        if (d == 0) out.push_back(cur);
        return;
    }
    for (long e = 0; e * w[i] <= d; ++e) {
        cur[i] = static_cast<unsigned>(e);
        exps_of_degree(w, i + 1, d - e * w[i], cur, out);
    }
    cur[i] = 0;
}

struct GradedComplex {
    const mfkit::MultiPoly& f;
    std::vector<long> w;
    long d;
    Kind kind;
    unsigned K;

    long subset_weight(unsigned mask) const {
        long s = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (mask >> i & 1) s += w[i];
        return kind == Kind::Contract ? -s : s;
    }

    // Basis of parity e in total degree t.
    std::vector<Key> basis(int e, long t) const {
        std::vector<Key> out;
        const unsigned n = static_cast<unsigned>(w.size());
        for (unsigned k = 0; k < (kind == Kind::Cyclic ? K : 1u); ++k)
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (__builtin_popcount(mask) % 2 != e) continue;
                long rest = t - subset_weight(mask) - static_cast<long>(k) * d;
                if (rest < 0) continue;
                std::vector<Exps> ex;
                Exps cur(n, 0);
                exps_of_degree(w, 0, rest, cur, ex);
                for (auto& x : ex) out.emplace_back(mask, k, x);
            }
        return out;
    }

    static int sign_below(unsigned mask, std::size_t i) {
        return __builtin_popcount(mask & ((1u << i) - 1)) % 2 ? -1 : 1;
    }

    std::map<Key, mpq_class> apply(const Key& b) const {
        std::map<Key, mpq_class> out;
        auto [mask, k, x] = b;
        for (std::size_t i = 0; i < w.size(); ++i) {
            bool in = mask >> i & 1;
            if (kind == Kind::Contract ? !in : in) continue;
            unsigned tgt = mask ^ (1u << i);
            int s = kind == Kind::Contract ? sign_below(tgt, i) : -sign_below(mask, i);
            for (auto& [m, c] : f.terms()) {
                if (m[i] == 0) continue;
                Exps y = x;
                for (std::size_t j = 0; j < w.size(); ++j) y[j] += m[j] - (j == i ? 1 : 0);
                out[Key{tgt, k, y}] += mpq_class(c.value()) * m[i] * s;
            }
            if (kind == Kind::Cyclic && k + 1 < K && x[i] > 0) {
                Exps y = x;
                --y[i];
                out[Key{tgt, k + 1, y}] += mpq_class(x[i]) * -s;
            }
        }
        return out;
    }

    std::size_t map_rank(int e, long t) const {
        auto src = basis(e, t), dst = basis(1 - e, t + d);
        if (src.empty() || dst.empty()) return 0;
        std::map<Key, std::size_t> row;
        for (std::size_t r = 0; r < dst.size(); ++r) row[dst[r]] = r;
        QMat a(dst.size(), std::vector<mpq_class>(src.size(), 0));
        for (std::size_t c = 0; c < src.size(); ++c)
            for (auto& [k, v] : apply(src[c])) a[row.at(k)][c] += v;
        return rank(a);
    }

    // Folded cohomology summed over total degrees in [lo, hi].
    std::array<std::size_t, 2> cohomology(long lo, long hi) const {
        std::array<std::size_t, 2> h{0, 0};
        for (long t = lo; t <= hi; ++t)
            for (int e = 0; e < 2; ++e)
                h[e] += basis(e, t).size() - map_rank(e, t) - map_rank(1 - e, t - d);
        return h;
    }
};

} // namespace oracle

#endif
