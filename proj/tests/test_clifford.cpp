#include <random>

#include "doctest.h"
#include "mfkit/clifford/end_algebra.hpp"
#include "mfkit/error.hpp"
#include "mfkit/exactalg/parse.hpp"
#include "mfkit/mfcore/constructions.hpp"

using namespace mfkit;

namespace {

// Chevalley representation on the exterior algebra with a beta variable:
// e_j acts as (e_j wedge) - beta * (contraction with Q e_j).
using ExtVec = std::map<std::pair<std::uint32_t, std::uint32_t>, mpq_class>;

ExtVec act_generator(const QuadraticForm& q, std::size_t j, const ExtVec& v) {
    ExtVec out;
    auto put = [&](std::uint32_t m, std::uint32_t k, const mpq_class& c) {
        out[{m, k}] += c;
        if (out[{m, k}] == 0) out.erase({m, k});
    };
    for (auto& [key, c] : v) {
        auto [m, k] = key;
        if (!(m >> j & 1)) {
            int s = __builtin_popcount(m & ((1u << j) - 1)) % 2 ? -1 : 1;
            put(m | (1u << j), k, c * s);
        }
        for (std::size_t l = 0; l < q.dim(); ++l)
            if (m >> l & 1) {
                int s = __builtin_popcount(m & ((1u << l) - 1)) % 2 ? -1 : 1;
                put(m & ~(1u << l), k + 1, -c * q(j, l).value() * s);
            }
    }
    return out;
}

ExtVec act(const QuadraticForm& q, const CliffordElement& a, const ExtVec& v) {
    ExtVec out;
    for (auto& [key, c] : a.terms) {
        ExtVec w = v;
        for (std::size_t j = q.dim(); j-- > 0;)
            if (key.first >> j & 1) w = act_generator(q, j, w);
        for (auto& [k2, c2] : w) {
            auto& slot = out[{k2.first, k2.second + key.second}];
            slot += c2 * c.value();
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

QuadraticForm random_form(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> v(-3, 3);
    Matrix Q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Q(i, j) = Scalar(mpq_class(v(rng), 2));
            Q(j, i) = Q(i, j);
        }
    return QuadraticForm(Q);
}

} // namespace

TEST_CASE("quadratic forms from quadrics") {
    auto q = QuadraticForm::from_quadric(parse_poly("x*y + z^2"));
    CHECK(q(0, 1) == Scalar(mpq_class(1, 2)));
    CHECK(q(1, 0) == Scalar(mpq_class(1, 2)));
    CHECK(q(2, 2) == Scalar(1));
    CHECK(q.nondegenerate());
    auto r = make_ring({"x", "y", "z"});
    CHECK(q.polynomial(r) == parse_poly_in("x*y + z^2", r));
    CHECK_FALSE(QuadraticForm::from_quadric(parse_poly("x^2 + 2*x*y + y^2")).nondegenerate());
    CHECK_THROWS_AS(QuadraticForm::from_quadric(parse_poly("x^2 + y")), Error);
    Matrix bad(2, 2);
    bad(0, 1) = Scalar(1);
    CHECK_THROWS_AS(QuadraticForm{bad}, Error);
    auto h = QuadraticForm::hyperbolic(2);
    CHECK(h.polynomial(make_ring({"x1", "x2", "y1", "y2"})).to_string() == "x1*y1 + x2*y2");
}

TEST_CASE("Clifford products") {
    auto q = QuadraticForm::from_quadric(parse_poly("3*x^2 + x*y + y^2"));
    CliffordAlgebra C(q);
    CHECK(C.rank() == 4);
    auto e1 = C.generator(0), e2 = C.generator(1);
    CHECK(C.mul(e1, e1) == C.scale(C.beta(), Scalar(-3)));
    CHECK(C.mul(e1, e2) == C.basis(0b11));
    auto e21 = C.mul(e2, e1);
    auto expect = C.scale(C.basis(0b11), Scalar(-1));
    expect += C.scale(C.beta(), Scalar(-1));
    CHECK(e21 == expect);
    CHECK(e21.to_string() == "-beta - e1*e2");
    CHECK(C.mul(C.basis(0b11), C.basis(0b11)).to_string() == "-3*beta^2 - e1*e2*beta");
    CliffordAlgebra other(QuadraticForm::from_quadric(parse_poly("x^2")));
    CHECK_THROWS_AS(clifford_mul(C, e1, other.generator(0)), Error);
    CHECK(clifford_mul(C, e1, e2) == C.basis(0b11));
}

TEST_CASE("Clifford algebra is associative and graded; products match the exterior representation") {
    std::mt19937 rng(7);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto q = random_form(rng, n);
        CliffordAlgebra C(q);
        const std::uint32_t G = 1u << n;
        for (std::uint32_t a = 0; a < G; ++a)
            for (std::uint32_t b = 0; b < G; ++b) {
                auto ab = C.mul(C.basis(a), C.basis(b));
                for (auto& [key, c] : ab.terms) {
                    CHECK(CliffordAlgebra::parity(key.first) == (CliffordAlgebra::parity(a) + CliffordAlgebra::parity(b)) % 2);
                    CHECK(CliffordAlgebra::internal_degree(key.first, key.second) ==
                          CliffordAlgebra::internal_degree(a, 0) + CliffordAlgebra::internal_degree(b, 0));
                }
                ExtVec one{{{0u, 0u}, 1}};
                CHECK(act(q, ab, one) == act(q, C.basis(a), act(q, C.basis(b), one)));
                for (std::uint32_t c = 0; c < G; ++c) {
                    auto l = C.mul(ab, C.basis(c));
                    auto r = C.mul(C.basis(a), C.mul(C.basis(b), C.basis(c)));
                    CHECK(l == r);
                }
            }
    }
}

TEST_CASE("u-resolution identities") {
    std::mt19937 rng(3);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto q = random_form(rng, n);
        UResolution P(q, 3);
        auto rep = P.check_identities(3);
        CHECK(rep.d_squared);
        CHECK(rep.anticommute);
        CHECK(rep.clifford);
        // v (v w) = -Q(v, v) beta w for a random v.
        std::uniform_int_distribution<int> c(-2, 2);
        std::vector<Scalar> v(n);
        for (auto& x : v) x = Scalar(c(rng));
        auto qvv = q.pair(v, v);
        for (auto& b : P.basis_up_to(2)) {
            auto lhs = P.action(v, P.action(v, b));
            UResolution::Element rhs;
            for (auto& [k, x] : P.beta(b)) rhs.emplace(k, -qvv * x);
            if (qvv.is_zero()) rhs.clear();
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("End algebra of the quadric matches the Clifford algebra") {
    auto c1 = compare_clifford(QuadraticForm::from_quadric(parse_poly("x^2")), 4, 8);
    CHECK(c1.equal);
    CHECK(c1.end.dims[0] == GradedDims{1, 1});
    CHECK(c1.end.dims[3] == GradedDims{4, 4});
    CHECK(c1.end.products.at({0, 0}).to_string() == "-beta");
    auto h = compare_clifford(QuadraticForm::from_quadric(parse_poly("x*y")), 4, 8);
    CHECK(h.equal);
    CHECK(h.end.dims[0] == GradedDims{2, 2});
    auto anti = h.end.products.at({0, 1});
    anti += h.end.products.at({1, 0});
    CHECK(anti.to_string() == "-beta");
    for (auto s : {"x^2 + y^2", "x^2 - 2*y^2 + 5*z^2", "x*y + z^2"}) CHECK(compare_clifford(QuadraticForm::from_quadric(parse_poly(s)), 3, 4).equal);
    CHECK_THROWS_AS(mf_end_algebra(QuadraticForm::from_quadric(parse_poly("x^2 + 2*x*y + y^2")), 2, 2), Error);
}

TEST_CASE("N = 1 End dims agree with ext over the ambient quadric") {
    RunConfig cfg;
    for (auto s : {"x^2", "x*y", "x^2 + y^2 + z^2"}) {
        auto f = parse_poly(s);
        auto end = mf_end_algebra(QuadraticForm::from_quadric(f), 3, 2);
        auto st = stabilized_residue_field(f);
        CHECK(ext_k(st, st, cfg).dims == end.dims[0]);
        auto b = ext_beta(st, st, cfg);
        for (std::size_t N = 1; N <= 3; ++N) CHECK(b.dims[N - 1] == end.dims[N - 1]);
    }
}

TEST_CASE("Clifford comparison is invariant under congruence") {
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> v(-2, 2);
    auto q = QuadraticForm::from_quadric(parse_poly("x^2 + x*y - y^2 + 3*z^2"));
    auto base = compare_clifford(q, 2, 3);
    REQUIRE(base.equal);
    int done = 0;
    while (done < 4) {
        Matrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = Scalar(v(rng));
        if (exact_rank_kernel(A).rank < 3) continue;
        auto c = compare_clifford(q.congruent(A), 2, 3);
        CHECK(c.equal);
        CHECK(c.end.dims == base.end.dims);
        ++done;
    }
}

TEST_CASE("hyperbolic forms are trivial") {
    for (std::size_t r : {1u, 2u}) {
        auto h = hyperbolic_triviality(r, 4, 8);
        CHECK(h.stabilized);
        CHECK(h.tate == GradedDims{1, 0});
        CHECK(h.trivial);
        auto h2 = hyperbolic_triviality(r, 3, 10);
        CHECK(h2.tate == h.tate);
    }
    CHECK_THROWS_AS(hyperbolic_triviality(1, 1, 4), Error);
    RunConfig cfg;
    auto f = parse_polys({"x*y", "x", "y"});
    auto L = koszul_mf({f[2]}, {f[1]});
    CHECK(ext_tate(L, L, cfg).dims == GradedDims{1, 0});
}

TEST_CASE("metabolic Knorrer check") {
    RunConfig cfg;
    auto s2 = stabilized_residue_field(parse_poly("x^2"));
    auto c = metabolic_knorrer_check(s2, 1, cfg);
    CHECK(c.preserved);
    CHECK(c.base.dims == GradedDims{1, 1});
    auto t = metabolic_knorrer_check(trivial_mf(parse_poly("x^3")), 2, cfg);
    CHECK(t.preserved);
    CHECK(t.doubled.dims == GradedDims{0, 0});
    CHECK(metabolic_knorrer_check(stabilized_residue_field(parse_poly("x^3")), 2, cfg).preserved);
}
