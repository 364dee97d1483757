#include <random>

#include "doctest.h"
#include "mfkit/error.hpp"
#include "mfkit/exactalg/parse.hpp"
#include "mfkit/homalg/ext.hpp"
#include "mfkit/mfcore/constructions.hpp"
#include "oracle_ext.hpp"

using namespace mfkit;

namespace {

// Applies b after a to every generator and checks the sum of both orders.
bool anticommute(const PolyOperator& a, const PolyOperator& b, std::size_t ngens, std::size_t nvars, bool same) {
    for (std::uint32_t g = 0; g < ngens; ++g) {
        TermList first, out;
        Monomial one(nvars);
        a.apply(g, one, first);
        for (auto& t : first) {
            TermList tl;
            b.apply(t.gen, t.mono, tl);
            for (auto& u : tl) out.push_back(Term{u.gen, u.mono, u.coeff * t.coeff});
        }
        if (!same) {
            first.clear();
            b.apply(g, one, first);
            for (auto& t : first) {
                TermList tl;
                a.apply(t.gen, t.mono, tl);
                for (auto& u : tl) out.push_back(Term{u.gen, u.mono, u.coeff * t.coeff});
            }
        }
        TermIndex idx;
        SparseVec v;
        for (auto& t : out) v.emplace_back(idx.index(t.gen, t.mono), t.coeff);
        if (!normalize_sparse(v).empty()) return false;
    }
    return true;
}

MatrixFactorization structure_sheaf(const MultiPoly& f) {
    // O/(f) as a module: d = f in degree 0 -> -1, homotopy 1.
    auto r = f.ring();
    PolyMatrix p(r, 1, 1), q(r, 1, 1);
    p(0, 0) = MultiPoly(r, Scalar(1));
    q(0, 0) = f;
    return MatrixFactorization(f, p, q, {0, -1});
}

std::vector<std::pair<MatrixFactorization, MatrixFactorization>> pair_family(const MultiPoly& f) {
    auto s = stabilized_residue_field(f), t = trivial_mf(f);
    return {{s, s}, {s, t}, {t, s}, {t, t}};
}

} // namespace

TEST_CASE("Hom complex operator identities") {
    std::mt19937 rng(3);
    for (auto src : {"x^2", "x^3 + y^3", "x*y", "x^2*y + y^4"}) {
        auto f = parse_poly(src);
        for (auto& [m, n] : pair_family(f)) {
            HomComplex h(m, n);
            CHECK(anticommute(h.D(), h.D(), h.ngens(), h.nvars(), true));
            CHECK(anticommute(h.B(), h.B(), h.ngens(), h.nvars(), true));
            CHECK(anticommute(h.D(), h.B(), h.ngens(), h.nvars(), false));
        }
    }
}

TEST_CASE("(D + beta B)^2 vanishes on every truncation") {
    auto f = parse_poly("x^3 + y^3");
    auto s = stabilized_residue_field(f);
    HomComplex h(s, s);
    for (std::size_t N : {1u, 2u, 4u})
        for (int n = h.min_degree() - 2 * static_cast<int>(N); n <= h.max_degree() + 1; ++n) {
            auto a = beta_slice(h, n, N), b = beta_slice(h, n - 1, N), c = beta_slice(h, n - 2, N);
            auto d1 = beta_slice_map(h, a, b), d2 = beta_slice_map(h, b, c);
            Monomial one(h.nvars());
            for (std::uint32_t g = 0; g < a.gens.size(); ++g) {
                TermList t1, t2;
                d1.apply(g, one, t1);
                for (auto& t : t1) {
                    TermList tl;
                    d2.apply(t.gen, t.mono, tl);
                    for (auto& u : tl) t2.push_back(Term{u.gen, u.mono, u.coeff * t.coeff});
                }
                TermIndex idx;
                SparseVec v;
                for (auto& t : t2) v.emplace_back(idx.index(t.gen, t.mono), t.coeff);
                CHECK(normalize_sparse(v).empty());
            }
        }
}

TEST_CASE("Hom between different potentials is rejected") {
    auto a = stabilized_residue_field(parse_poly("x^2"));
    auto b = stabilized_residue_field(parse_poly("x^3"));
    CHECK_THROWS_AS(HomComplex(a, b), Error);
}

TEST_CASE("ext examples") {
    RunConfig cfg;
    auto f = parse_poly("x^2");
    auto s = stabilized_residue_field(f);
    auto e = ext_k(s, s, cfg);
    CHECK(e.stabilized);
    CHECK(e.dims == GradedDims{1, 1});
    CHECK(ext_tate(s, s, cfg).dims == GradedDims{1, 1});
    auto s3 = stabilized_residue_field(parse_poly("x^3"));
    auto e3 = ext_k(s3, s3, cfg);
    CHECK(e3.stabilized);
    CHECK(e3.dims == GradedDims{1, 1});
    // The contractible lift of (1, f) is the zero module.
    auto t = trivial_mf(f);
    CHECK(ext_k(t, t, cfg).dims == GradedDims{0, 0});
    CHECK(ext_tate(t, s, cfg).dims == GradedDims{0, 0});
    CHECK(ext_tate(s, t, cfg).dims == GradedDims{0, 0});
    auto g = parse_polys({"x^2 - 1", "x - 1", "x + 1"});
    auto k1 = koszul_mf({g[1]}, {g[2]});
    auto tk = ext_tate(k1, k1, cfg);
    CHECK(tk.stabilized);
    CHECK(tk.dims == GradedDims{0, 0});
}

TEST_CASE("N = 1 slice equals ambient-ring Ext computed from the modules") {
    RunConfig cfg;
    for (auto src : {"x^2", "x^3", "x^3 + y^3", "x*y", "x^2*y + y^4"}) {
        auto f = parse_poly(src);
        auto fam = pair_family(f);
        if (f.ring()->nvars() == 1) {
            // O/(f) has finite length only in one variable.
            fam.emplace_back(structure_sheaf(f), structure_sheaf(f));
            fam.emplace_back(stabilized_residue_field(f), structure_sheaf(f));
        }
        for (auto& [m, n] : fam) {
            auto e = ext_k(m, n, cfg);
            INFO(src);
            REQUIRE(e.stabilized);
            auto amb = oracle::ambient_ext(m, n, e.D_used, 4);
            CHECK(e.dims.even == amb.dims[0]);
            CHECK(e.dims.odd == amb.dims[1]);
            auto b = ext_beta(m, n, cfg);
            CHECK(b.dims.front() == e.dims);
        }
    }
}

TEST_CASE("beta module fit on the standard pairs") {
    RunConfig cfg;
    auto f = parse_poly("x^2");
    auto s = stabilized_residue_field(f);
    auto r = ext_beta(s, s, cfg);
    CHECK(r.stabilized);
    CHECK(r.law_holds);
    CHECK(r.module.free_rank == std::array<std::size_t, 2>{1, 1});
    CHECK(r.module.torsion.empty());
    for (std::size_t N = 1; N <= 6; ++N) CHECK(r.dims[N - 1] == GradedDims{N, N});
    // O/(x^2) over itself: End = k[x]/x^2 in even degree, killed by beta.
    auto o = structure_sheaf(f);
    auto ro = ext_beta(o, o, cfg);
    CHECK(ro.law_holds);
    CHECK(ro.module.free_rank == std::array<std::size_t, 2>{0, 0});
    CHECK(ro.module.torsion == std::vector<std::pair<std::size_t, int>>{{1, 0}, {1, 0}});
    CHECK(ext_tate(o, o, cfg).dims == GradedDims{0, 0});
}

TEST_CASE("tate value agrees with the folded complex and with the beta free rank") {
    RunConfig cfg;
    for (auto src : {"x^3", "x^3 + y^3", "x*y", "x^2*y + y^4"}) {
        auto f = parse_poly(src);
        for (auto& [m, n] : pair_family(f)) {
            auto t = ext_tate(m, n, cfg);
            CHECK(t.stabilized);
            CHECK(ext_tate_folded(m, n, cfg).dims == t.dims);
            auto b = ext_beta(m, n, cfg);
            CHECK(b.law_holds);
            CHECK(b.module.free_rank == std::array<std::size_t, 2>{t.dims.even, t.dims.odd});
        }
    }
}

TEST_CASE("folded fit recovers torsion orders") {
    std::vector<GradedDims> d;
    for (std::size_t N = 1; N <= 6; ++N) {
        std::size_t tor = std::min<std::size_t>(2, N) + std::min<std::size_t>(3, N);
        d.push_back(GradedDims{N + tor, tor});
    }
    auto b = fit_folded(d, {1, 0});
    CHECK(b.determined);
    CHECK(b.torsion == std::vector<std::pair<std::size_t, int>>{{2, -1}, {3, -1}});
    std::vector<GradedDims> bad{{1, 0}, {1, 3}};
    CHECK_THROWS_AS(fit_folded(bad, {0, 0}), Error);
    std::vector<GradedDims> longt{{1, 1}, {2, 2}};
    CHECK_FALSE(fit_folded(longt, {0, 0}).determined);
}

TEST_CASE("torsion test, duality and pairing") {
    RunConfig cfg;
    auto f = parse_poly("x^3");
    auto s = stabilized_residue_field(f), t = trivial_mf(f);
    CHECK(beta_torsion_test(t, cfg).torsion);
    CHECK_FALSE(beta_torsion_test(s, cfg).torsion);
    CHECK(beta_torsion_test(knorrer_double(t), cfg).torsion);
    auto p = pairing_dims(s, s, cfg);
    CHECK(p.equal);
    CHECK(pairing_dims(t, s, cfg).direct.dims == GradedDims{0, 0});
    auto two = ext_tate(s, direct_sum(s, s), cfg);
    auto one = ext_tate(s, s, cfg);
    CHECK(two.dims == GradedDims{2 * one.dims.even, 2 * one.dims.odd});
}

TEST_CASE("tate End dims multiply under the tensor product") {
    RunConfig cfg;
    auto a = stabilized_residue_field(parse_poly("x^3"));
    auto b = stabilized_residue_field(parse_poly("y^2"));
    auto ea = ext_tate(a, a, cfg).dims, eb = ext_tate(b, b, cfg).dims;
    auto t = ts_tensor(a, b);
    auto et = ext_tate(t, t, cfg).dims;
    CHECK(et.even == ea.even * eb.even + ea.odd * eb.odd);
    CHECK(et.odd == ea.even * eb.odd + ea.odd * eb.even);
}

TEST_CASE("Knorrer invariance and duality on a small family") {
    RunConfig cfg;
    for (auto src : {"x^2", "x^3"}) {
        auto f = parse_poly(src);
        for (auto& [m, n] : pair_family(f)) {
            auto base = ext_tate(m, n, cfg);
            CHECK(ext_tate(knorrer_double(m), knorrer_double(n), cfg).dims == base.dims);
            CHECK(ext_tate(dual(n), dual(m), cfg).dims == base.dims);
        }
    }
}

TEST_CASE("prime field mode agrees on small examples") {
    RunConfig cfg;
    cfg.field = Field::prime(32003);
    ParseOptions o;
    o.field = cfg.field;
    auto f = parse_poly("x^3 + y^3", o);
    auto s = stabilized_residue_field(f);
    CHECK(ext_tate(s, s, cfg).dims == GradedDims{2, 2});
}
