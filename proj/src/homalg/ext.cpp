#include "mfkit/homalg/ext.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "mfkit/error.hpp"
#include "mfkit/mfcore/constructions.hpp"

namespace mfkit {

namespace {

int parity(int n) { return ((n % 2) + 2) % 2; }

void add(GradedDims& g, int n, std::size_t v) { (parity(n) ? g.odd : g.even) += v; }

struct Setup {
    HomComplex h;
    TruncationPlan plan;
};

Setup setup(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg) {
    Setup s{HomComplex(m, n), plan_truncation(m.potential(), cfg)};
    s.plan.set_raise(std::max(m.max_entry_degree(s.plan.weights), n.max_entry_degree(s.plan.weights)));
    return s;
}

template <class T>
Stabilized<T> sweep(const Setup& s, const RunConfig& cfg, const std::function<T(std::int64_t)>& at) {
    auto scaled = [&](std::int64_t D) { return at(s.plan.bound(D)); };
    return stabilize<T>(scaled, std::min(s.plan.D_start, cfg.D_max), cfg.D_max, cfg.window);
}

} // namespace

ExtResult ext_k(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg) {
    auto s = setup(m, n, cfg);
    auto st = sweep<GradedDims>(s, cfg, [&](std::int64_t D) {
        GradedDims g;
        for (int k = s.h.min_degree(); k <= s.h.max_degree(); ++k)
            add(g, k, beta_homology(s.h, k, 1, D, s.plan.weights, s.plan.extra_slack, cfg.field));
        return g;
    });
    return ExtResult{st.value, st.stabilized, st.D_used};
}

ExtResult ext_tate(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg) {
    auto s = setup(m, n, cfg);
    int a = s.h.min_degree();
    auto st = sweep<GradedDims>(s, cfg, [&](std::int64_t D) {
        GradedDims g;
        add(g, a, beta_homology(s.h, a, 0, D, s.plan.weights, s.plan.extra_slack, cfg.field));
        add(g, a - 1, beta_homology(s.h, a - 1, 0, D, s.plan.weights, s.plan.extra_slack, cfg.field));
        return g;
    });
    return ExtResult{st.value, st.stabilized, st.D_used};
}

ExtResult ext_tate_folded(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg) {
    auto s = setup(m, n, cfg);
    std::vector<std::uint32_t> local(s.h.ngens());
    std::array<std::vector<std::uint32_t>, 2> gens;
    for (std::uint32_t g = 0; g < s.h.ngens(); ++g) {
        auto& v = gens[static_cast<std::size_t>(parity(s.h.degree(g)))];
        local[g] = static_cast<std::uint32_t>(v.size());
        v.push_back(g);
    }
    // delta = D + B maps parity e to parity 1 - e.
    std::array<PolyOperator, 2> ops{PolyOperator(gens[0].size(), s.plan.weights),
                                    PolyOperator(gens[1].size(), s.plan.weights)};
    for (int e = 0; e < 2; ++e)
        for (std::uint32_t c = 0; c < gens[static_cast<std::size_t>(e)].size(); ++c) {
            auto g = gens[static_cast<std::size_t>(e)][c];
            for (auto* op : {&s.h.D(), &s.h.B()})
                for (auto& [g2, p] : op->column(g)) ops[static_cast<std::size_t>(e)].add(local[g2], c, p);
        }
    std::int64_t slack = std::max(ops[0].max_raise(), ops[1].max_raise()) + s.plan.extra_slack;
    auto st = sweep<GradedDims>(s, cfg, [&](std::int64_t D) {
        GradedDims g;
        std::size_t nv = s.h.nvars();
        FreeSpace even{gens[0].size(), nv, s.plan.weights}, odd{gens[1].size(), nv, s.plan.weights};
        g.even = truncated_homology(odd, &ops[1], even, &ops[0], D, slack, cfg.field).dim();
        g.odd = truncated_homology(even, &ops[0], odd, &ops[1], D, slack, cfg.field).dim();
        return g;
    });
    return ExtResult{st.value, st.stabilized, st.D_used};
}

BetaModule fit_folded(const std::vector<GradedDims>& dims, std::array<std::size_t, 2> free_rank) {
    BetaModule b;
    b.free_rank = free_rank;
    std::vector<long> ge;  // number of torsion summands of order >= N
    for (std::size_t N = 1; N <= dims.size(); ++N) {
        long de = static_cast<long>(dims[N - 1].even) - (N > 1 ? static_cast<long>(dims[N - 2].even) : 0);
        long dodd = static_cast<long>(dims[N - 1].odd) - (N > 1 ? static_cast<long>(dims[N - 2].odd) : 0);
        long te = de - static_cast<long>(free_rank[0]), to = dodd - static_cast<long>(free_rank[1]);
        if (te != to || te < 0 || (!ge.empty() && te > ge.back()))
            throw Error(ErrorCode::FitInconsistent, "dimension sequence does not fit a finitely generated k[[beta]]-module");
        ge.push_back(te);
    }
    for (std::size_t t = 1; t <= ge.size(); ++t) {
        long cnt = ge[t - 1] - (t < ge.size() ? ge[t] : 0);
        if (t == ge.size() && cnt > 0) b.determined = false;
        for (long k = 0; k < cnt; ++k) b.torsion.emplace_back(t, -1);
    }
    if (!b.determined) b.note = "torsion of order >= N_max cannot be resolved";
    return b;
}

ExtBetaResult ext_beta(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg) {
    auto s = setup(m, n, cfg);
    int a = s.h.min_degree(), b = s.h.max_degree();
    std::size_t NM = std::max<std::size_t>(cfg.N_max, 1);
    // Layout of the sampled data: for each N the degrees a-2(N-1)..b, then
    // the untruncated homology in degrees a-1..b.
    auto at = [&](std::int64_t D) {
        std::vector<std::size_t> v;
        for (std::size_t N = 1; N <= NM; ++N)
            for (int k = a - 2 * static_cast<int>(N - 1); k <= b; ++k)
                v.push_back(beta_homology(s.h, k, N, D, s.plan.weights, s.plan.extra_slack, cfg.field));
        for (int k = a - 1; k <= b; ++k)
            v.push_back(beta_homology(s.h, k, 0, D, s.plan.weights, s.plan.extra_slack, cfg.field));
        return v;
    };
    auto st = sweep<std::vector<std::size_t>>(s, cfg, at);
    const auto& v = st.value;

    std::map<std::pair<std::size_t, int>, long> h;
    std::map<int, long> H;
    std::size_t pos = 0;
    for (std::size_t N = 1; N <= NM; ++N)
        for (int k = a - 2 * static_cast<int>(N - 1); k <= b; ++k) h[{N, k}] = static_cast<long>(v[pos++]);
    for (int k = a - 1; k <= b; ++k) H[k] = static_cast<long>(v[pos++]);
    auto Hval = [&](int k) -> long {
        if (k > b) return 0;
        if (k < a - 1) return H[parity(k) == parity(a) ? a : a - 1];
        return H[k];
    };
    auto hval = [&](std::size_t N, int k) -> long {
        auto it = h.find({N, k});
        return it == h.end() ? 0 : it->second;
    };

    ExtBetaResult r;
    r.stabilized = st.stabilized;
    r.D_used = st.D_used;
    r.N_used = NM;
    auto& mod = r.module;
    mod.free_rank[static_cast<std::size_t>(parity(a))] = static_cast<std::size_t>(H[a]);
    mod.free_rank[static_cast<std::size_t>(parity(a - 1))] = static_cast<std::size_t>(H[a - 1]);

    bool consistent = true;
    std::vector<std::array<long, 2>> S(NM + 1, {0, 0});
    for (std::size_t N = 1; N <= NM; ++N) {
        GradedDims g;
        for (int k = a - 2 * static_cast<int>(N - 1); k <= b; ++k) add(g, k, static_cast<std::size_t>(hval(N, k)));
        r.dims.push_back(g);
        // K(m) = dim ker(beta^N on H_m), recovered from the long exact sequence
        // of 0 -> C --beta^N--> C -> C/beta^N -> 0, downwards from the top degree.
        int twoN = 2 * static_cast<int>(N);
        std::map<int, long> K;
        K[b + 1] = 0;
        for (int mm = b + 1; mm >= a + 1; --mm) {
            long R = hval(N, mm - twoN) - Hval(mm - twoN) + Hval(mm);
            K[mm - 1] = R - K[mm];
            if (K[mm - 1] < 0) consistent = false;
        }
        if (K[a] != 0) consistent = false;
        for (int mm = a + 1; mm <= b; ++mm) S[N][static_cast<std::size_t>(parity(mm))] += K[mm];
    }
    for (int e = 0; e < 2; ++e) {
        std::vector<long> ge;
        for (std::size_t N = 1; N <= NM; ++N) {
            long c = S[N][static_cast<std::size_t>(e)] - S[N - 1][static_cast<std::size_t>(e)];
            if (c < 0 || (!ge.empty() && c > ge.back())) consistent = false;
            ge.push_back(c);
        }
        for (std::size_t t = 1; t <= NM; ++t) {
            long cnt = ge[t - 1] - (t < NM ? ge[t] : 0);
            if (t == NM && cnt > 0) mod.determined = false;
            for (long k = 0; k < cnt; ++k) mod.torsion.emplace_back(t, e);
        }
    }
    std::sort(mod.torsion.begin(), mod.torsion.end());
    r.law_holds = consistent;
    for (std::size_t N = 1; N <= NM && consistent; ++N) {
        long tot = S[N][0] + S[N][1];
        long e = static_cast<long>(N * mod.free_rank[0]) + tot;
        long o = static_cast<long>(N * mod.free_rank[1]) + tot;
        if (e != static_cast<long>(r.dims[N - 1].even) || o != static_cast<long>(r.dims[N - 1].odd))
            r.law_holds = false;
    }
    if (!consistent) {
        mod.determined = false;
        mod.note = "inconsistent dimension sequence";
    } else if (!mod.determined) {
        mod.note = "torsion of order >= N_max cannot be resolved";
    }
    return r;
}

TorsionTest beta_torsion_test(const MatrixFactorization& m, const RunConfig& cfg) {
    TorsionTest t;
    t.tate = ext_tate(m, m, cfg);
    t.stabilized = t.tate.stabilized;
    t.torsion = t.tate.dims == GradedDims{};
    return t;
}

PairingDims pairing_dims(const MatrixFactorization& m, const MatrixFactorization& n, const RunConfig& cfg) {
    PairingDims p;
    p.via_dual = ext_tate(dual(m), dual(n), cfg);
    p.direct = ext_tate(n, m, cfg);
    p.equal = p.via_dual.dims == p.direct.dims;
    return p;
}

} // namespace mfkit
