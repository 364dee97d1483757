#include "mfkit/clifford/end_algebra.hpp"

#include <functional>

#include "mfkit/error.hpp"
#include "mfkit/exactalg/truncated.hpp"
#include "mfkit/mfcore/constructions.hpp"

namespace mfkit {

namespace {

using Element = UResolution::Element;

void put(Element& e, const UResolution::Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = e.emplace(k, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

Element sum(Element a, const Element& b, const Scalar& s = Scalar(1)) {
    for (auto& [k, c] : b) put(a, k, c * s);
    return a;
}

int below(std::uint32_t mask, std::size_t i) { return __builtin_popcount(mask & ((std::uint32_t{1} << i) - 1)) % 2 ? -1 : 1; }

Monomial times_var(const Monomial& m, std::size_t i) {
    Monomial r = m;
    ++r[i];
    return r;
}

} // namespace

UResolution::UResolution(const QuadraticForm& q, std::size_t N) : q_(q), N_(N) {
    if (N < 1) throw Error(ErrorCode::Precondition, "the u-truncation must be at least 1");
    if (q.dim() > 16) throw Error(ErrorCode::Precondition, "quadratic form too large");
}

Element UResolution::basis(std::uint32_t mask, std::uint32_t k, const Monomial& m) {
    Element e;
    e.emplace(Key{mask, k, m}, Scalar(1));
    return e;
}

std::vector<Element> UResolution::basis_up_to(std::int64_t D) const {
    std::vector<Element> out;
    auto monos = monomials_up_to(dim(), D);
    for (std::uint32_t k = 0; k < N_; ++k)
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << dim()); ++mask)
            for (auto& m : monos) out.push_back(basis(mask, k, m));
    return out;
}

Element UResolution::differential(const Element& e) const {
    Element out;
    const std::size_t n = dim();
    for (auto& [key, c] : e) {
        for (std::size_t l = 0; l < n; ++l)
            if (key.mask >> l & 1)
                put(out, Key{key.mask & ~(std::uint32_t{1} << l), key.k, times_var(key.mono, l)}, c * Scalar(below(key.mask, l)));
        if (key.k == 0) continue;
        // dq/2 = sum_i (sum_j Q_ij x_j) dx_i.
        for (std::size_t i = 0; i < n; ++i) {
            if (key.mask >> i & 1) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!q_(i, j).is_zero())
                    put(out, Key{key.mask | (std::uint32_t{1} << i), key.k - 1, times_var(key.mono, j)},
                        c * q_(i, j) * Scalar(below(key.mask, i)));
        }
    }
    return out;
}

Element UResolution::action(const std::vector<Scalar>& v, const Element& e) const {
    Element out;
    const std::size_t n = dim();
    std::vector<Scalar> qv(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qv[i] += q_(i, j) * v[j];
    for (auto& [key, c] : e) {
        for (std::size_t l = 0; l < n; ++l)
            if (key.mask >> l & 1)
                put(out, Key{key.mask & ~(std::uint32_t{1} << l), key.k, key.mono}, c * v[l] * Scalar(below(key.mask, l)));
        if (key.k == 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (!(key.mask >> i & 1))
                put(out, Key{key.mask | (std::uint32_t{1} << i), key.k - 1, key.mono}, -(c * qv[i]) * Scalar(below(key.mask, i)));
    }
    return out;
}

Element UResolution::action(std::size_t j, const Element& e) const {
    std::vector<Scalar> v(dim(), Scalar(0));
    v.at(j) = Scalar(1);
    return action(v, e);
}

Element UResolution::beta(const Element& e) const {
    Element out;
    for (auto& [key, c] : e)
        if (key.k > 0) put(out, Key{key.mask, key.k - 1, key.mono}, c);
    return out;
}

Element UResolution::times_q(const Element& e) const {
    Element out;
    for (auto& [key, c] : e)
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (!q_(i, j).is_zero()) put(out, Key{key.mask, key.k, times_var(times_var(key.mono, i), j)}, c * q_(i, j));
    return out;
}

Scalar UResolution::augmentation(const Element& e) const {
    auto it = e.find(Key{0, 0, Monomial(dim())});
    return it == e.end() ? Scalar(0) : it->second;
}

UResolution::IdentityReport UResolution::check_identities(std::int64_t D) const {
    IdentityReport r{true, true, true};
    const std::size_t n = dim();
    for (auto& b : basis_up_to(D)) {
        auto db = differential(b);
        if (differential(db) != times_q(beta(b))) r.d_squared = false;
        auto bb = beta(b);
        std::vector<Element> vb(n);
        for (std::size_t j = 0; j < n; ++j) {
            vb[j] = action(j, b);
            if (!sum(action(j, db), differential(vb[j])).empty()) r.anticommute = false;
        }
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                auto lhs = sum(action(j, vb[k]), action(k, vb[j]));
                if (lhs != sum(Element{}, bb, Scalar(-2) * q_(j, k))) r.clifford = false;
            }
    }
    return r;
}

EndAlgebra mf_end_algebra(const QuadraticForm& q, std::size_t N, std::int64_t D) {
    if (!q.nondegenerate()) throw Error(ErrorCode::Precondition, "the quadratic form must be nondegenerate");
    UResolution P(q, N);
    CliffordAlgebra alg(q);
    const std::size_t n = q.dim();
    const Field field = q.field();
    EndAlgebra out;
    out.identities = P.check_identities(D);
    const Monomial one(n);
    // Generators dx_J u^[k] with k < N, indexed k * 2^n + J.
    const std::uint32_t G = std::uint32_t{1} << n;
    for (std::size_t t = 1; t <= N; ++t) {
        // Hom(P_{<t}, k) with phi -> phi d; the dual of d reduced modulo (x).
        SparseMatrix A(t * G, field);
        std::array<std::size_t, 2> count{0, 0};
        for (std::uint32_t k = 0; k < t; ++k)
            for (std::uint32_t J = 0; J < G; ++J) {
                ++count[CliffordAlgebra::parity(J)];
                SparseVec v;
                for (auto& [key, c] : P.differential(UResolution::basis(J, k, one)))
                    if (key.mono == one) v.emplace_back(key.k * G + key.mask, c);
                A.add_column(normalize_sparse(std::move(v)));
            }
        // d is odd, so the cohomology in each parity loses the full rank.
        std::size_t rk = sparse_rank(A);
        GradedDims g{count[0] - rk, count[1] - rk};
        auto expect = alg.truncated_dims(t);
        if (g.even != expect.first || g.odd != expect.second)
            throw Error(ErrorCode::Precondition, "End dims do not show the free pattern; raise N or D");
        out.dims.push_back(g);
    }
    // Functional of e_J beta^k: augmentation after v_J d/du^k, tested on all generators.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cols;
    for (std::uint32_t k = 0; k < N; ++k)
        for (std::uint32_t J = 0; J < G; ++J) cols.emplace_back(J, k);
    auto functional = [&](const std::function<Element(const Element&)>& op) {
        std::vector<Scalar> f;
        for (auto& [J, k] : cols) f.push_back(P.augmentation(op(UResolution::basis(J, k, one))));
        return f;
    };
    Matrix Phi(cols.size(), cols.size(), field);
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto [J, k] = cols[c];
        auto f = functional([&, J = J, k = k](const Element& e) {
            Element x = e;
            for (std::uint32_t i = 0; i < k; ++i) x = P.beta(x);
            for (std::size_t j = n; j-- > 0;)
                if (J >> j & 1) x = P.action(j, x);
            return x;
        });
        for (std::size_t r = 0; r < cols.size(); ++r) Phi(r, c) = f[r];
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto f = functional([&](const Element& e) { return P.action(a, P.action(b, e)); });
            auto x = solve_linear(Phi, f);
            if (!x) throw Error(ErrorCode::Precondition, "generator product is not in the span of the Clifford basis");
            auto el = alg.zero();
            for (std::size_t c = 0; c < cols.size(); ++c) el.add(cols[c].first, cols[c].second, (*x)[c]);
            out.products.emplace(std::make_pair(a, b), std::move(el));
        }
    return out;
}

CliffordComparison compare_clifford(const QuadraticForm& q, std::size_t N, std::int64_t D) {
    CliffordComparison cmp;
    cmp.end = mf_end_algebra(q, N, D);
    CliffordAlgebra alg(q);
    cmp.dims_match = cmp.end.dims.size() == N;
    for (std::size_t t = 1; t <= cmp.end.dims.size(); ++t) {
        auto e = alg.truncated_dims(t);
        if (cmp.end.dims[t - 1] != GradedDims{e.first, e.second}) cmp.dims_match = false;
    }
    cmp.relations_hold = true;
    const std::size_t n = q.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const auto& ab = cmp.end.products.at({a, b});
            auto rel = ab;
            rel += cmp.end.products.at({b, a});
            auto expect = alg.scale(alg.beta(), Scalar(-2) * q(a, b));
            if (!(rel == expect)) cmp.relations_hold = false;
            if (!(ab == alg.mul(alg.generator(a), alg.generator(b)))) cmp.relations_hold = false;
        }
    cmp.equal = cmp.dims_match && cmp.relations_hold && cmp.end.identities.ok();
    return cmp;
}

HyperbolicResult hyperbolic_triviality(std::size_t r, std::size_t N, std::int64_t D, Field field, int window) {
    if (r < 1) throw Error(ErrorCode::Precondition, "the Lagrangian rank must be at least 1");
    if (N < 2) throw Error(ErrorCode::Precondition, "N must be at least 2 to separate free and torsion parts");
    const std::uint32_t G = std::uint32_t{1} << r;
    auto dims_at = [&](std::size_t t, std::int64_t bound) {
        // Generators gamma_J beta^k by parity of |J|.
        std::array<std::vector<std::pair<std::uint32_t, std::uint32_t>>, 2> gens;
        std::vector<std::uint32_t> pos(t * G);
        for (std::uint32_t k = 0; k < t; ++k)
            for (std::uint32_t J = 0; J < G; ++J) {
                auto& g = gens[CliffordAlgebra::parity(J)];
                pos[k * G + J] = static_cast<std::uint32_t>(g.size());
                g.emplace_back(J, k);
            }
        auto make = [&](int e) {
            return FunctionOperator(
                [&, e, t](std::uint32_t gen, const Monomial& m, TermList& out) {
                    auto [J, k] = gens[e][gen];
                    if (k + 1 >= t) return;
                    for (std::size_t l = 0; l < r; ++l)
                        if (J >> l & 1)
                            out.push_back(Term{pos[(k + 1) * G + (J & ~(std::uint32_t{1} << l))], times_var(m, l),
                                               Scalar(-below(J, l))});
                },
                1);
        };
        FunctionOperator d0 = make(0), d1 = make(1);
        FreeSpace s0{gens[0].size(), r, {}}, s1{gens[1].size(), r, {}};
        GradedDims g;
        g.even = truncated_homology(s1, &d1, s0, &d0, bound, 0, field).dim();
        g.odd = truncated_homology(s0, &d0, s1, &d1, bound, 0, field).dim();
        return g;
    };
    HyperbolicResult res;
    std::vector<std::vector<GradedDims>> seen;
    auto at = [&](std::int64_t bound) {
        std::vector<GradedDims> v;
        for (std::size_t t = 1; t <= N; ++t) v.push_back(dims_at(t, bound));
        seen.push_back(v);
        const auto& a = v[N - 1];
        const auto& b = v[N - 2];
        return GradedDims{a.even - b.even, a.odd - b.odd};
    };
    auto st = stabilize<GradedDims>(at, 1, D, window);
    res.tate = st.value;
    res.stabilized = st.stabilized;
    res.D_used = st.D_used;
    res.dims = seen.empty() ? std::vector<GradedDims>{} : seen.back();
    res.trivial = res.stabilized && res.tate == GradedDims{1, 0};
    return res;
}

MetabolicCheck metabolic_knorrer_check(const MatrixFactorization& m, const MatrixFactorization& n, std::size_t r,
                                       const RunConfig& cfg) {
    MetabolicCheck c;
    c.base = ext_tate(m, n, cfg);
    MatrixFactorization a = m, b = n;
    for (std::size_t i = 0; i < r; ++i) {
        a = knorrer_double(a);
        b = knorrer_double(b);
    }
    c.doubled = ext_tate(a, b, cfg);
    c.preserved = c.base.stabilized && c.doubled.stabilized && c.base.dims == c.doubled.dims;
    return c;
}

MetabolicCheck metabolic_knorrer_check(const MatrixFactorization& m, std::size_t r, const RunConfig& cfg) {
    return metabolic_knorrer_check(m, m, r, cfg);
}

} // namespace mfkit
