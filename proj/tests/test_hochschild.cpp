#include <random>

#include "doctest.h"
#include "mfkit/error.hpp"
#include "mfkit/exactalg/parse.hpp"
#include "mfkit/exactalg/weights.hpp"
#include "mfkit/hochschild/hkr.hpp"
#include "mfkit/hochschild/jacobian.hpp"
#include "mfkit/hochschild/twisted.hpp"
#include "oracle_hh.hpp"

using namespace mfkit;

namespace {

const std::vector<std::string> family{"x^2", "x^3", "x^4", "x^3 + y^3", "x^2*y + y^4", "x^2 + y^2"};

oracle::GradedComplex graded(const MultiPoly& f, oracle::Kind kind, unsigned K = 1) {
    auto qh = detect_weights(f);
    REQUIRE(qh);
    std::vector<long> w(qh->weights.begin(), qh->weights.end());
    return oracle::GradedComplex{f, w, static_cast<long>(qh->degree), kind, K};
}

std::array<std::size_t, 2> oracle_dims(const MultiPoly& f, oracle::Kind kind, unsigned K = 1) {
    auto g = graded(f, kind, K);
    long sw = 0;
    for (auto x : g.w) sw += x;
    long socle = 0;
    for (auto x : g.w) socle += g.d - 2 * x;
    return g.cohomology(-sw - 1, socle + sw + static_cast<long>(K + 1) * g.d);
}

// Applies op2 after op1 (plus op1 after op2 if given) and tests for zero.
bool composite_vanishes(const TruncOperator& a, const TruncOperator& b, const TruncOperator* c,
                        const TruncOperator* d, std::size_t ngens, std::size_t nvars, std::int64_t deg) {
    for (auto& m : monomials_up_to(nvars, deg))
        for (std::uint32_t g = 0; g < ngens; ++g) {
            TermList out;
            auto run = [&](const TruncOperator& x, const TruncOperator& y) {
                TermList t1;
                x.apply(g, m, t1);
                for (auto& t : t1) {
                    TermList t2;
                    y.apply(t.gen, t.mono, t2);
                    for (auto& u : t2) out.push_back(Term{u.gen, u.mono, u.coeff * t.coeff});
                }
            };
            run(a, b);
            if (c && d) run(*c, *d);
            TermIndex idx;
            SparseVec v;
            for (auto& t : out) v.emplace_back(idx.index(t.gen, t.mono), t.coeff);
            if (!normalize_sparse(v).empty()) return false;
        }
    return true;
}

MultiPoly random_poly(std::mt19937& rng, const RingPtr& r, int terms, int deg) {
    std::uniform_int_distribution<int> c(-3, 3), e(0, deg);
    MultiPoly p(r);
    for (int i = 0; i < terms; ++i) {
        Monomial m(r->nvars());
        for (std::size_t j = 0; j < r->nvars(); ++j) m[j] = static_cast<std::uint32_t>(e(rng));
        p.add_term(m, Scalar(c(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("twisted differentials square to zero and anticommute") {
    std::mt19937 rng(11);
    auto r = make_ring({"x", "y", "z"});
    for (int trial = 0; trial < 6; ++trial) {
        auto f = random_poly(rng, r, 4, 3);
        TwistedComplex w(f, TwistedDifferential::DfWedge, {});
        TwistedComplex c(f, TwistedDifferential::ContractDf, {});
        TwistedComplex dr(f, TwistedDifferential::DeRham, {});
        for (std::size_t p = 0; p + 2 <= 3; ++p) {
            auto n = w.space(p).ngens;
            CHECK(composite_vanishes(*w.op(p), *w.op(p + 1), nullptr, nullptr, n, 3, 3));
            CHECK(composite_vanishes(*dr.op(p), *dr.op(p + 1), nullptr, nullptr, n, 3, 3));
            CHECK(composite_vanishes(*w.op(p), *dr.op(p + 1), dr.op(p), w.op(p + 1), n, 3, 3));
        }
        for (std::size_t p = 2; p <= 3; ++p)
            CHECK(composite_vanishes(*c.op(p), *c.op(p - 1), nullptr, nullptr, c.space(p).ngens, 3, 3));
    }
}

TEST_CASE("milnor number examples") {
    RunConfig cfg;
    CHECK(milnor_number(parse_poly("x^2"), cfg).value == 1);
    CHECK(milnor_number(parse_poly("x^4"), cfg).value == 3);
    auto m = milnor_number(parse_poly("x^3 + y^3"), cfg);
    CHECK(m.stabilized);
    CHECK(m.value == 4);
    CHECK_THROWS_AS(milnor_number(parse_poly("3"), cfg), Error);
    for (unsigned n = 1; n <= 8; ++n) {
        auto r = milnor_number(parse_poly("x^" + std::to_string(n + 1)), cfg);
        CHECK(r.stabilized);
        CHECK(r.value == n);
    }
}

TEST_CASE("milnor number matches the graded oracle and the weight formula") {
    RunConfig cfg;
    for (auto& s : family) {
        auto f = parse_poly(s);
        auto qh = detect_weights(f);
        REQUIRE(qh);
        mpq_class prod = 1;
        for (auto w : qh->weights) {
            mpq_class q(qh->degree - w, w);
            q.canonicalize();
            prod *= q;
        }
        REQUIRE(prod.get_den() == 1);
        auto expect = static_cast<std::size_t>(prod.get_num().get_ui());
        // The Jacobian ring is the polyvector cohomology.
        auto od = oracle_dims(f, oracle::Kind::Contract);
        CHECK(od[0] == expect);
        auto m = milnor_number(f, cfg);
        CHECK(m.stabilized);
        CHECK(m.value == expect);
        CHECK(global_jacobian_dim(f, cfg).value == expect);
    }
}

TEST_CASE("milnor number multiplies under Thom-Sebastiani sums") {
    RunConfig cfg;
    for (auto& a : family)
        for (auto& b : family) {
            auto f = parse_poly(a), g = parse_poly(b);
            auto s = thom_sebastiani_sum(f, g);
            CHECK(s.nvars() == f.nvars() + g.nvars());
            auto m = milnor_number(s, cfg);
            CHECK(m.stabilized);
            CHECK(m.value == milnor_number(f, cfg).value * milnor_number(g, cfg).value);
        }
}

TEST_CASE("global Jacobian dimension counts every critical point") {
    RunConfig cfg;
    auto f = parse_poly("x^3 - 3*x");
    auto g = global_jacobian_dim(f, cfg);
    CHECK(g.stabilized);
    CHECK(g.value == 2);
    CHECK(milnor_number(f, cfg).value == 0);
    auto h = parse_poly("y^3 - 3*y");
    CHECK(global_jacobian_dim(thom_sebastiani_sum(f, h), cfg).value == 4);
    CHECK(global_jacobian_dim(thom_sebastiani_sum(f, parse_poly("y^2")), cfg).value == 2);
    CHECK(global_jacobian_dim(thom_sebastiani_sum(f, parse_poly("y^3")), cfg).value == 4);
    CHECK(global_jacobian_dim(parse_poly("x^2"), cfg).value == 1);
}

TEST_CASE("Hochschild examples") {
    RunConfig cfg;
    auto h = hh_tate(parse_poly("x^3"), cfg);
    CHECK(h.stabilized);
    CHECK(h.dims == GradedDims{0, 2});
    CHECK(hh_tate(parse_poly("x^2 + y^2"), cfg).dims == GradedDims{1, 0});
    CHECK(hh_tate(parse_poly("x^3 + y^3"), cfg).dims == GradedDims{4, 0});
    CHECK(hh_cochain_tate(parse_poly("x^3"), cfg).dims == GradedDims{2, 0});
    CHECK(hh_cochain_tate(parse_poly("x^2 + y^2"), cfg).dims == GradedDims{1, 0});
}

TEST_CASE("Hochschild dims agree with the graded oracle and differ by a parity shift") {
    RunConfig cfg;
    for (auto& s : family) {
        auto f = parse_poly(s);
        std::size_t mu = milnor_number(f, cfg).value;
        auto h = hh_tate(f, cfg), c = hh_cochain_tate(f, cfg);
        CHECK(h.stabilized);
        CHECK(c.stabilized);
        auto oh = oracle_dims(f, oracle::Kind::Wedge), oc = oracle_dims(f, oracle::Kind::Contract);
        CHECK(h.dims == GradedDims{oh[0], oh[1]});
        CHECK(c.dims == GradedDims{oc[0], oc[1]});
        bool odd = f.nvars() % 2;
        CHECK(h.dims == (odd ? GradedDims{0, mu} : GradedDims{mu, 0}));
        CHECK(c.dims == GradedDims{mu, 0});
    }
}

TEST_CASE("cochain sign flag does not change dimensions") {
    RunConfig cfg;
    cfg.cochain_sign = 1;
    CHECK(hh_cochain_tate(parse_poly("x^2*y + y^4"), cfg).dims == GradedDims{5, 0});
}

TEST_CASE("cyclic homology truncations") {
    RunConfig cfg;
    cfg.K = 3;
    for (auto& s : family) {
        auto f = parse_poly(s);
        auto hc = hc_tate(f, cfg);
        REQUIRE(hc.size() == 3);
        CHECK(hc[0].dims == hh_tate(f, cfg).dims);
        for (unsigned K = 1; K <= 3; ++K) {
            auto o = oracle_dims(f, oracle::Kind::Cyclic, K);
            CHECK(hc[K - 1].stabilized);
            CHECK(hc[K - 1].dims == GradedDims{o[0], o[1]});
        }
    }
    cfg.K = 2;
    CHECK(hc_tate(parse_poly("x^2"), cfg)[1].dims == GradedDims{0, 2});
    CHECK(hc_tate(parse_poly("x^3"), cfg)[1].dims == GradedDims{0, 4});
    cfg.K = 0;
    CHECK_THROWS_AS(hc_tate(parse_poly("x^2"), cfg), Error);
}

TEST_CASE("supported Hochschild homology over k[[beta]]") {
    RunConfig cfg;
    auto b3 = hh_beta(parse_poly("x^3"), cfg);
    CHECK(b3.stabilized);
    CHECK(b3.module.free_rank == std::array<std::size_t, 2>{0, 2});
    CHECK_FALSE(b3.torsion_bounded);
    auto b2 = hh_beta(parse_poly("x^2"), cfg);
    CHECK(b2.stabilized);
    auto t2 = hh_tate(parse_poly("x^2"), cfg).dims;
    CHECK(b2.module.free_rank == std::array<std::size_t, 2>{t2.even, t2.odd});
    auto pt = hh_beta(MultiPoly(make_ring({})), cfg);
    CHECK(pt.stabilized);
    CHECK(pt.module.free_rank == std::array<std::size_t, 2>{1, 0});
    CHECK(pt.module.torsion.empty());
    CHECK(pt.module.determined);
    for (auto s : {"x^3 + y^3", "x^2 + y^2", "x^2*y + y^4"}) {
        auto f = parse_poly(s);
        auto b = hh_beta(f, cfg);
        auto t = hh_tate(f, cfg).dims;
        CHECK(b.stabilized);
        CHECK(b.module.free_rank == std::array<std::size_t, 2>{t.even, t.odd});
        // A finite stage sees the Jacobian ring in both parities.
        CHECK(b.stage_homology.even == b.stage_homology.odd);
    }
    cfg.N_max = 1;
    CHECK_THROWS_AS(hh_beta(parse_poly("x^2"), cfg), Error);
}

TEST_CASE("cyclic bar operator") {
    auto r = make_ring({"x", "y"});
    auto a1 = parse_poly_in("x + 2*y", r), a2 = parse_poly_in("y^2", r), f = parse_poly_in("x*y", r);
    auto b1 = cyclic_bar_B(BarWord{a1}, f);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0].coeff == Scalar(-1));
    CHECK(b1[0].word == BarWord{a1, f});
    auto b2 = cyclic_bar_B(BarWord{a1, a2}, f);
    REQUIRE(b2.size() == 2);
    CHECK(b2[0].coeff == Scalar(-1));
    CHECK(b2[0].word == BarWord{a1, f, a2});
    CHECK(b2[1].coeff == Scalar(1));
    CHECK(b2[1].word == BarWord{a1, a2, f});
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        BarWord w;
        for (int i = 0; i < 1 + trial % 4; ++i) w.push_back(random_poly(rng, r, 2, 2));
        auto g = random_poly(rng, r, 3, 2);
        CHECK(expand(cyclic_bar_B(cyclic_bar_B(w, g), g)).empty());
    }
}

TEST_CASE("HKR intertwines B with -df wedge") {
    auto r = make_ring({"x"});
    auto x = parse_poly_in("x", r), f = parse_poly_in("x^2", r);
    auto lhs = hkr_map(cyclic_bar_B(BarWord{x}, f));
    CHECK(lhs == wedge(Scalar(-1) * Form::exterior_derivative(f), hkr_map(BarWord{x})));
    CHECK(lhs.to_string() == "(-2*x^2)*dx");
    auto one = parse_poly_in("1", r);
    BarWord w{x, one};
    CHECK(hkr_map(w).is_zero());
    CHECK(hkr_map(cyclic_bar_B(w, f)).is_zero());
    for (auto s : {"x^2", "x^3", "x*y", "x^3 + y^3", "x^2*y + y^4"}) {
        auto res = hkr_intertwine_check(parse_poly(s), 3, 3);
        CHECK(res.ok);
        CHECK(res.counterexample.empty());
    }
    CHECK(hkr_intertwine_check(parse_poly("x^3 + y^3"), 3, 3).words == 10 + 100 + 1000);
    ParseOptions o;
    o.field = Field::prime(7);
    CHECK_THROWS_AS(hkr_intertwine_check(parse_poly("x^2", o), 2, 2), Error);
}

TEST_CASE("wedge product signs") {
    auto r = make_ring({"x", "y", "z"});
    auto dx = Form::exterior_derivative(parse_poly_in("x", r));
    auto dy = Form::exterior_derivative(parse_poly_in("y", r));
    auto dz = Form::exterior_derivative(parse_poly_in("z", r));
    CHECK(wedge(dy, dx) == Scalar(-1) * wedge(dx, dy));
    CHECK(wedge(dx, dx).is_zero());
    CHECK(wedge(wedge(dz, dx), dy) == wedge(dx, wedge(dy, dz)));
    CHECK(wedge(dy, wedge(dz, dx)) == wedge(dx, wedge(dy, dz)));
    CHECK(wedge(dz, wedge(dy, dx)) == Scalar(-1) * wedge(dx, wedge(dy, dz)));
}

TEST_CASE("socle pairing") {
    auto p2 = socle_pairing(parse_poly("x^2"));
    CHECK(p2.basis.size() == 1);
    CHECK(p2.nondegenerate);
    CHECK(p2.matrix(0, 0) == Scalar(1));
    auto p3 = socle_pairing(parse_poly("x^3"));
    REQUIRE(p3.basis.size() == 2);
    CHECK(p3.matrix(0, 0).is_zero());
    CHECK(p3.matrix(0, 1) == Scalar(1));
    CHECK(p3.matrix(1, 0) == Scalar(1));
    CHECK(p3.matrix(1, 1).is_zero());
    CHECK(p3.nondegenerate);
    RunConfig cfg;
    for (auto s : {"x^4", "x^3 + y^3", "x^2*y + y^4", "x^2 + y^2 + z^2"}) {
        auto f = parse_poly(s);
        auto sp = socle_pairing(f);
        CHECK(sp.basis.size() == milnor_number(f, cfg).value);
        CHECK(sp.nondegenerate);
        for (std::size_t a = 0; a < sp.basis.size(); ++a)
            for (std::size_t b = 0; b < sp.basis.size(); ++b) CHECK(sp.matrix(a, b) == sp.matrix(b, a));
    }
    CHECK_THROWS_AS(socle_pairing(parse_poly("x^3 - 3*x")), Error);
    CHECK_THROWS_AS(socle_pairing(parse_poly("x^2*y")), Error);
}

TEST_CASE("Jacobian ring arithmetic") {
    auto f = parse_poly("x^3 + y^3");
    JacobianRing J(f);
    CHECK(J.dim() == 4);
    CHECK(J.basis().front() == Monomial(2));
    for (std::size_t i = 0; i < 2; ++i)
        for (auto& c : J.normal_form(f.derivative(i))) CHECK(c.is_zero());
    std::mt19937 rng(2);
    for (int t = 0; t < 10; ++t) {
        std::uniform_int_distribution<std::size_t> pick(0, J.dim() - 1);
        auto a = pick(rng), b = pick(rng);
        CHECK(J.multiply(a, b) == J.multiply(b, a));
    }
    // Weights may be supplied explicitly.
    JacobianRing K(parse_poly("x^2*y + y^4"), Weights{3, 2});
    CHECK(K.dim() == 5);
    CHECK(K.socle_degree() == 6);
    CHECK_THROWS_AS(JacobianRing(parse_poly("x^2*y + y^4"), Weights{1, 1}), Error);
}

TEST_CASE("non-isolated potentials never report a stabilized value") {
    RunConfig cfg;
    auto f = parse_poly("x^2*y");
    CHECK_FALSE(milnor_number(f, cfg).stabilized);
    CHECK_FALSE(global_jacobian_dim(f, cfg).stabilized);
    CHECK_FALSE(hh_tate(f, cfg).stabilized);
    CHECK_FALSE(hh_cochain_tate(f, cfg).stabilized);
}

TEST_CASE("prime field mode") {
    RunConfig cfg;
    cfg.field = Field::prime(32003);
    ParseOptions o;
    o.field = cfg.field;
    auto f = parse_poly("x^3 + y^3", o);
    CHECK(milnor_number(f, cfg).value == 4);
    CHECK(hh_tate(f, cfg).dims == GradedDims{4, 0});
    CHECK(socle_pairing(f).nondegenerate);
}
