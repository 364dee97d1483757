#include "mfkit/homalg/hom_complex.hpp"

#include <algorithm>
#include <map>

#include "mfkit/error.hpp"
#include "mfkit/exactalg/weights.hpp"

namespace mfkit {

HomComplex::HomComplex(const MatrixFactorization& source, const MatrixFactorization& target)
    : nsrc_(source.total_rank()),
      ntgt_(target.total_rank()),
      nvars_(source.ring()->nvars()),
      D_(source.total_rank() * target.total_rank()),
      B_(source.total_rank() * target.total_rank()),
      f_(source.potential()) {
    if (!same_ring(source.ring(), target.ring()))
        throw Error(ErrorCode::RingMismatch, "Hom between factorizations over different rings");
    if (source.potential() != target.potential())
        throw Error(ErrorCode::PotentialMismatch, "Hom between factorizations of different potentials");
    const auto& gv = source.grading();
    const auto& gw = target.grading();
    deg_.resize(nsrc_ * ntgt_);
    for (std::size_t i = 0; i < ntgt_; ++i)
        for (std::size_t j = 0; j < nsrc_; ++j) deg_[gen(i, j)] = gw[i] - gv[j];
    lo_ = *std::min_element(deg_.begin(), deg_.end());
    hi_ = *std::max_element(deg_.begin(), deg_.end());
    auto dv = source.d_part(), bv = source.b_part();
    auto dw = target.d_part(), bw = target.b_part();
    auto build = [&](PolyOperator& op, const PolyMatrix& w, const PolyMatrix& v) {
        for (std::size_t i = 0; i < ntgt_; ++i)
            for (std::size_t j = 0; j < nsrc_; ++j) {
                auto g = gen(i, j);
                for (std::size_t i2 = 0; i2 < ntgt_; ++i2)
                    if (!w(i2, i).is_zero()) op.add(gen(i2, j), g, w(i2, i));
                Scalar sg(deg_[g] % 2 == 0 ? -1 : 1);
                for (std::size_t j2 = 0; j2 < nsrc_; ++j2)
                    if (!v(j, j2).is_zero()) op.add(gen(i, j2), g, v(j, j2) * sg);
            }
    };
    build(D_, dw, dv);
    build(B_, bw, bv);
}

BetaSlice beta_slice(const HomComplex& h, int n, std::size_t N) {
    BetaSlice s;
    s.degree = n;
    for (std::uint32_t t = 0;; ++t) {
        if (N > 0 && t >= N) break;
        int k = n + 2 * static_cast<int>(t);
        if (k > h.max_degree()) break;
        if (k < h.min_degree()) continue;
        for (std::uint32_t g = 0; g < h.ngens(); ++g)
            if (h.degree(g) == k) s.gens.emplace_back(g, t);
    }
    return s;
}

PolyOperator beta_slice_map(const HomComplex& h, const BetaSlice& from, const BetaSlice& to, const Weights& w) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> idx;
    for (std::uint32_t k = 0; k < to.gens.size(); ++k) idx[to.gens[k]] = k;
    PolyOperator op(from.gens.size(), w);
    for (std::uint32_t c = 0; c < from.gens.size(); ++c) {
        auto [g, t] = from.gens[c];
        for (auto& [g2, p] : h.D().column(g)) {
            auto it = idx.find({g2, t});
            if (it != idx.end()) op.add(it->second, c, p);
        }
        for (auto& [g2, p] : h.B().column(g)) {
            auto it = idx.find({g2, t + 1});
            if (it != idx.end()) op.add(it->second, c, p);
        }
    }
    return op;
}

std::size_t beta_homology(const HomComplex& h, int n, std::size_t N, std::int64_t D, const Weights& w,
                          std::int64_t extra_slack, Field f) {
    auto in = beta_slice(h, n + 1, N), mid = beta_slice(h, n, N), out = beta_slice(h, n - 1, N);
    if (mid.gens.empty()) return 0;
    auto op_in = beta_slice_map(h, in, mid, w);
    auto op_out = beta_slice_map(h, mid, out, w);
    FreeSpace sin{in.gens.size(), h.nvars(), w}, smid{mid.gens.size(), h.nvars(), w};
    auto r = truncated_homology(sin, &op_in, smid, &op_out, D, op_in.max_raise() + extra_slack, f);
    return r.dim();
}

void TruncationPlan::set_raise(std::int64_t max_raise) {
    extra_slack = homogeneous ? 0 : std::max<std::int64_t>(max_raise, 1);
    D_start = std::max<std::int64_t>(1, (max_raise + step - 1) / step);
}

TruncationPlan plan_truncation(const MultiPoly& f, const RunConfig& cfg) {
    TruncationPlan p;
    if (cfg.weights) {
        p.weights = *cfg.weights;
    } else if (auto qh = detect_weights(f)) {
        p.weights = qh->weights;
    } else {
        p.weights = Weights(f.nvars(), 1);
    }
    if (p.weights.size() != f.nvars())
        throw Error(ErrorCode::DimensionMismatch, "weights must list one entry per variable");
    for (auto w : p.weights)
        if (w < 1) throw Error(ErrorCode::Precondition, "weights must be positive");
    p.step = p.weights.empty() ? 1 : *std::max_element(p.weights.begin(), p.weights.end());
    p.homogeneous = f.is_zero() || f.is_homogeneous(p.weights);
    p.set_raise(1);
    return p;
}

} // namespace mfkit
