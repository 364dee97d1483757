#include "mfkit/hochschild/twisted.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "mfkit/error.hpp"
#include "mfkit/mfcore/constructions.hpp"

namespace mfkit {

ExteriorBasis::ExteriorBasis(std::size_t n) : n_(n), by_degree_(n + 1), pos_(std::size_t{1} << n) {
    if (n > 20) throw Error(ErrorCode::Precondition, "too many variables for an exterior basis");
    for (std::uint32_t m = 0; m < pos_.size(); ++m) {
        auto& v = by_degree_[std::popcount(m)];
        pos_[m] = static_cast<std::uint32_t>(v.size());
        v.push_back(m);
    }
}

int insertion_sign(std::uint32_t mask, std::size_t i) {
    std::uint32_t below = mask & ((std::uint32_t{1} << i) - 1);
    return std::popcount(below) % 2 ? -1 : 1;
}

namespace {

std::int64_t weight_sum(const Weights& w, std::size_t n) {
    if (w.empty()) return static_cast<std::int64_t>(n);
    return std::accumulate(w.begin(), w.end(), std::int64_t{0});
}

std::vector<MultiPoly> partials(const MultiPoly& f) {
    std::vector<MultiPoly> d;
    for (std::size_t i = 0; i < f.nvars(); ++i) d.push_back(f.derivative(i));
    return d;
}

} // namespace

TwistedComplex::TwistedComplex(const MultiPoly& f, TwistedDifferential kind, Weights w, int sign)
    : f_(f), kind_(kind), w_(std::move(w)), basis_(f.nvars()) {
    const std::size_t n = f.nvars();
    auto df = partials(f);
    ops_.resize(n + 1);
    for (std::size_t p = 0; p <= n; ++p) {
        if (target(p) < 0) continue;
        const auto& src = basis_.of_degree(p);
        if (kind_ == TwistedDifferential::DfWedge) {
            auto op = std::make_unique<PolyOperator>(src.size(), w_);
            for (std::uint32_t j = 0; j < src.size(); ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    if (src[j] >> i & 1) continue;
                    auto t = basis_.index(src[j] | (std::uint32_t{1} << i));
                    op->add(t, j, df[i] * Scalar(-insertion_sign(src[j], i)));
                }
            ops_[p] = std::move(op);
        } else if (kind_ == TwistedDifferential::ContractDf) {
            auto op = std::make_unique<PolyOperator>(src.size(), w_);
            for (std::uint32_t j = 0; j < src.size(); ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(src[j] >> i & 1)) continue;
                    auto rest = src[j] & ~(std::uint32_t{1} << i);
                    op->add(basis_.index(rest), j, df[i] * Scalar(sign * insertion_sign(rest, i)));
                }
            ops_[p] = std::move(op);
        } else {
            const ExteriorBasis* b = &basis_;
            auto fn = [b, p, n](std::uint32_t gen, const Monomial& m, TermList& out) {
                std::uint32_t mask = b->of_degree(p)[gen];
                for (std::size_t i = 0; i < n; ++i) {
                    if ((mask >> i & 1) || m[i] == 0) continue;
                    Monomial q = m;
                    --q[i];
                    out.push_back(Term{b->index(mask | (std::uint32_t{1} << i)), q,
                                       Scalar(static_cast<long>(m[i]) * insertion_sign(mask, i))});
                }
            };
            ops_[p] = std::make_unique<FunctionOperator>(fn, 0);
        }
    }
}

FreeSpace TwistedComplex::space(std::size_t p) const { return FreeSpace{basis_.of_degree(p).size(), nvars(), w_}; }

long TwistedComplex::target(std::size_t p) const {
    long t = kind_ == TwistedDifferential::ContractDf ? static_cast<long>(p) - 1 : static_cast<long>(p) + 1;
    return t < 0 || t > static_cast<long>(nvars()) ? -1 : t;
}

std::int64_t TwistedComplex::max_raise() const {
    std::int64_t r = 0;
    for (auto& op : ops_)
        if (op) r = std::max(r, op->max_raise());
    return r;
}

namespace {

void require_nonconstant(const MultiPoly& f) {
    if (f.is_constant()) throw Error(ErrorCode::Precondition, "the potential must be non-constant");
}

TruncationPlan plan_for(const MultiPoly& f, const RunConfig& cfg) {
    auto plan = plan_truncation(f, cfg);
    plan.set_raise(std::max<std::int64_t>(f.degree(plan.weights), 1));
    return plan;
}

template <class T>
Stabilized<T> sweep(const TruncationPlan& plan, const RunConfig& cfg, const std::function<T(std::int64_t)>& at) {
    auto scaled = [&](std::int64_t D) { return at(plan.bound(D)); };
    return stabilize<T>(scaled, std::min(plan.D_start, cfg.D_max), cfg.D_max, cfg.window);
}

// Folded cohomology of a twisted complex truncated at weighted degree B.
GradedDims folded(const TwistedComplex& tc, std::int64_t B, std::int64_t slack, Field field) {
    GradedDims g;
    const std::size_t n = tc.nvars();
    for (std::size_t p = 0; p <= n; ++p) {
        FreeSpace in{};
        const TruncOperator* d_in = nullptr;
        for (std::size_t q = 0; q <= n; ++q)
            if (tc.target(q) == static_cast<long>(p)) {
                in = tc.space(q);
                d_in = tc.op(q);
            }
        auto h = truncated_homology(in, d_in, tc.space(p), tc.op(p), B, slack, field);
        (p % 2 ? g.odd : g.even) += h.dim();
    }
    return g;
}

ExtResult twisted_tate(const MultiPoly& f, const RunConfig& cfg, TwistedDifferential kind) {
    require_nonconstant(f);
    auto plan = plan_for(f, cfg);
    TwistedComplex tc(f, kind, plan.weights, cfg.cochain_sign);
    std::int64_t slack = weight_sum(plan.weights, f.nvars()) + plan.extra_slack;
    auto st = sweep<GradedDims>(plan, cfg, [&](std::int64_t B) { return folded(tc, B, slack, cfg.field); });
    return ExtResult{st.value, st.stabilized, st.D_used};
}

} // namespace

CountResult milnor_number(const MultiPoly& f, const RunConfig& cfg) {
    require_nonconstant(f);
    auto plan = plan_for(f, cfg);
    auto df = partials(f);
    const std::size_t n = f.nvars();
    auto at = [&](std::int64_t B) -> std::size_t {
        auto monos = monomials_up_to(n, B, plan.weights);
        TermIndex idx(plan.weights);
        for (auto& m : monos) idx.index(0, m);
        SparseMatrix sm(monos.size(), cfg.field);
        for (auto& m : monos)
            for (auto& d : df) {
                SparseVec v;
                for (auto& [mm, c] : d.terms()) {
                    Monomial t = mm * m;
                    if (t.degree(plan.weights) <= B) v.emplace_back(*idx.find(0, t), c);
                }
                if (!v.empty()) sm.add_column(normalize_sparse(std::move(v)));
            }
        return monos.size() - sparse_rank(sm);
    };
    auto st = sweep<std::size_t>(plan, cfg, at);
    return CountResult{st.value, st.stabilized, st.D_used};
}

CountResult global_jacobian_dim(const MultiPoly& f, const RunConfig& cfg) {
    require_nonconstant(f);
    auto plan = plan_for(f, cfg);
    const std::size_t n = f.nvars();
    PolyOperator J(n, plan.weights);
    for (std::size_t i = 0; i < n; ++i) J.add(0, static_cast<std::uint32_t>(i), f.derivative(i));
    FreeSpace in{n, n, plan.weights}, mid{1, n, plan.weights};
    auto at = [&](std::int64_t B) -> std::size_t {
        return truncated_homology(in, &J, mid, nullptr, B, plan.extra_slack, cfg.field).dim();
    };
    auto st = sweep<std::size_t>(plan, cfg, at);
    return CountResult{st.value, st.stabilized, st.D_used};
}

ExtResult hh_tate(const MultiPoly& f, const RunConfig& cfg) { return twisted_tate(f, cfg, TwistedDifferential::DfWedge); }

ExtResult hh_cochain_tate(const MultiPoly& f, const RunConfig& cfg) {
    return twisted_tate(f, cfg, TwistedDifferential::ContractDf);
}

std::vector<ExtResult> hc_tate(const MultiPoly& f, const RunConfig& cfg) {
    require_nonconstant(f);
    if (cfg.K < 1) throw Error(ErrorCode::Precondition, "the u-truncation K must be at least 1");
    auto plan = plan_for(f, cfg);
    const std::size_t n = f.nvars();
    const Weights& w = plan.weights;
    auto df = partials(f);
    std::int64_t deg = std::max<std::int64_t>(f.degree(w), 1);
    std::vector<ExtResult> out;
    for (std::size_t K = 1; K <= cfg.K; ++K) {
        // Generators of parity e: (mask, u power) with |mask| = e mod 2.
        std::array<std::vector<std::pair<std::uint32_t, std::uint32_t>>, 2> gens;
        std::vector<std::uint32_t> pos((std::size_t{1} << n) * K);
        for (std::uint32_t k = 0; k < K; ++k)
            for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) {
                auto& g = gens[std::popcount(m) % 2];
                pos[k * (std::size_t{1} << n) + m] = static_cast<std::uint32_t>(g.size());
                g.emplace_back(m, k);
            }
        auto make_op = [&](int e) {
            auto fn = [&, e, K](std::uint32_t gen, const Monomial& m, TermList& tl) {
                auto [mask, k] = gens[e][gen];
                for (std::size_t i = 0; i < n; ++i) {
                    if (mask >> i & 1) continue;
                    std::uint32_t t = mask | (std::uint32_t{1} << i);
                    int s = insertion_sign(mask, i);
                    for (auto& [mm, c] : df[i].terms())
                        tl.push_back(Term{pos[k * (std::size_t{1} << n) + t], mm * m, c * Scalar(-s)});
                    if (k + 1 < K && m[i] > 0) {
                        Monomial q = m;
                        --q[i];
                        tl.push_back(Term{pos[(k + 1) * (std::size_t{1} << n) + t], q,
                                          Scalar(static_cast<long>(m[i]) * s)});
                    }
                }
            };
            return FunctionOperator(fn, deg);
        };
        FunctionOperator d0 = make_op(0), d1 = make_op(1);
        FreeSpace s0{gens[0].size(), n, w}, s1{gens[1].size(), n, w};
        std::int64_t slack = weight_sum(w, n) + static_cast<std::int64_t>(K) * deg + plan.extra_slack;
        auto at = [&](std::int64_t B) {
            GradedDims g;
            g.even = truncated_homology(s1, &d1, s0, &d0, B, slack, cfg.field).dim();
            g.odd = truncated_homology(s0, &d0, s1, &d1, B, slack, cfg.field).dim();
            return g;
        };
        auto st = sweep<GradedDims>(plan, cfg, at);
        out.push_back(ExtResult{st.value, st.stabilized, st.D_used});
    }
    return out;
}

namespace {

// Forms with coefficients in k[x]/(x1^S..xn^S).
class Stage {
public:
    Stage(const MultiPoly& f, const ExteriorBasis& b, std::size_t S) : df_(partials(f)), b_(b), S_(S), n_(f.nvars()) {
        box_ = 1;
        for (std::size_t i = 0; i < n_; ++i) box_ *= S;
    }
    std::size_t box() const { return box_; }
    std::size_t dim(std::size_t p) const { return b_.of_degree(p).size() * box_; }
    std::uint32_t index(std::uint32_t gen, const Monomial& m) const {
        std::size_t r = 0;
        for (std::size_t i = n_; i-- > 0;) r = r * S_ + m[i];
        return static_cast<std::uint32_t>(gen * box_ + r);
    }
    Monomial mono(std::size_t r) const {
        Monomial m(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            m[i] = static_cast<std::uint32_t>(r % S_);
            r /= S_;
        }
        return m;
    }
    bool inside(const Monomial& m) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (m[i] >= S_) return false;
        return true;
    }
    // -df wedge from degree p to p + 1.
    SparseMatrix delta(std::size_t p, Field field) const {
        SparseMatrix sm(dim(p + 1), field);
        const auto& src = b_.of_degree(p);
        for (std::uint32_t j = 0; j < src.size(); ++j)
            for (std::size_t r = 0; r < box_; ++r) {
                Monomial m = mono(r);
                SparseVec v;
                for (std::size_t i = 0; i < n_; ++i) {
                    if (src[j] >> i & 1) continue;
                    auto t = b_.index(src[j] | (std::uint32_t{1} << i));
                    int s = insertion_sign(src[j], i);
                    for (auto& [mm, c] : df_[i].terms()) {
                        Monomial q = mm * m;
                        if (inside(q)) v.emplace_back(index(t, q), c * Scalar(-s));
                    }
                }
                sm.add_column(normalize_sparse(std::move(v)));
            }
        return sm;
    }

private:
    std::vector<MultiPoly> df_;
    const ExteriorBasis& b_;
    std::size_t S_, n_, box_;
};

struct StageData {
    GradedDims colimit;
    GradedDims stage;
    std::size_t torsion = 0;
};

StageData stage_data(const MultiPoly& f, std::size_t S, Field field) {
    const std::size_t n = f.nvars();
    ExteriorBasis b(n);
    Stage lo(f, b, S), hi(f, b, 2 * S);
    StageData d;
    std::vector<std::size_t> rank_lo(n + 1, 0);
    std::vector<SparseMatrix> dlo, dhi;
    for (std::size_t p = 0; p < n; ++p) {
        dlo.push_back(lo.delta(p, field));
        dhi.push_back(hi.delta(p, field));
        rank_lo[p] = sparse_rank(dlo[p]);
    }
    Monomial shift(std::vector<std::uint32_t>(n, static_cast<std::uint32_t>(S)));
    for (std::size_t p = 0; p <= n; ++p) {
        std::vector<SparseVec> Z;
        if (p < n) {
            Z = sparse_kernel(dlo[p]);
        } else {
            for (std::uint32_t j = 0; j < lo.dim(p); ++j) Z.push_back({{j, Scalar(1)}});
        }
        std::size_t boundaries_lo = p > 0 ? rank_lo[p - 1] : 0;
        std::size_t h_stage = Z.size() - boundaries_lo;
        // Classes of stage S mapped into stage 2S, modulo boundaries there.
        SparseMatrix all(hi.dim(p), field), bd(hi.dim(p), field);
        if (p > 0)
            for (std::size_t j = 0; j < dhi[p - 1].cols(); ++j) {
                all.add_column(dhi[p - 1].column(j));
                bd.add_column(dhi[p - 1].column(j));
            }
        for (auto& z : Z) {
            SparseVec v;
            for (auto& [i, c] : z) {
                std::uint32_t gen = static_cast<std::uint32_t>(i / lo.box());
                v.emplace_back(hi.index(gen, lo.mono(i % lo.box()) * shift), c);
            }
            all.add_column(normalize_sparse(std::move(v)));
        }
        std::size_t h_colim = sparse_rank(all) - sparse_rank(bd);
        bool odd = (p + n) % 2;
        (odd ? d.colimit.odd : d.colimit.even) += h_colim;
        (odd ? d.stage.odd : d.stage.even) += h_stage;
        d.torsion += (p < n ? rank_lo[p] : 0) + (h_stage - h_colim);
    }
    return d;
}

} // namespace

HHBetaResult hh_beta(const MultiPoly& f, const RunConfig& cfg) {
    if (cfg.S < 1) throw Error(ErrorCode::Precondition, "the support exponent S must be at least 1");
    if (cfg.N_max < 2) throw Error(ErrorCode::Precondition, "N_max must be at least 2");
    if (!f.constant_term().is_zero())
        throw Error(ErrorCode::Precondition, "the potential must vanish at the origin");
    std::vector<StageData> seen;
    auto at = [&](std::int64_t S) {
        seen.push_back(stage_data(f, static_cast<std::size_t>(S), cfg.field));
        return seen.back().colimit;
    };
    auto st = stabilize<GradedDims>(at, 1, static_cast<std::int64_t>(cfg.S), cfg.window);
    HHBetaResult r;
    r.module.free_rank = {st.value.even, st.value.odd};
    r.stabilized = st.stabilized;
    r.S_used = static_cast<std::size_t>(st.D_used);
    r.stage_homology = seen.back().stage;
    r.order1_torsion = seen.back().torsion;
    r.torsion_bounded = std::all_of(seen.begin(), seen.end(),
                                    [&](const StageData& d) { return d.torsion == seen.back().torsion; });
    r.module.determined = r.torsion_bounded && r.stabilized;
    if (r.torsion_bounded) {
        for (std::size_t i = 0; i < r.order1_torsion; ++i) r.module.torsion.emplace_back(1, -1);
    } else {
        r.module.note = "order-one beta torsion of unbounded rank";
    }
    return r;
}

MultiPoly thom_sebastiani_sum(const MultiPoly& f, const MultiPoly& g) {
    const Ring& rf = *f.ring();
    std::vector<std::string> names = rf.names();
    for (auto& nm : g.ring()->names()) {
        bool clash = std::find(names.begin(), names.end(), nm) != names.end();
        names.push_back(clash ? fresh_variable(rf, nm, names) : nm);
    }
    auto ring = make_ring(names, rf.field());
    std::vector<std::size_t> mf(f.nvars()), mg(g.nvars());
    std::iota(mf.begin(), mf.end(), 0);
    std::iota(mg.begin(), mg.end(), f.nvars());
    return f.embed(ring, mf) + g.embed(ring, mg);
}

} // namespace mfkit
