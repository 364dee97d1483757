#include "mfkit/exactalg/truncated.hpp"

#include <algorithm>

namespace mfkit {

void PolyOperator::add(std::uint32_t target, std::uint32_t source, const MultiPoly& p) {
    if (p.is_zero()) return;
    auto& col = cols_.at(source);
    for (auto& [t, q] : col)
        if (t == target) {
            q += p;
            raise_ = std::max(raise_, q.degree(w_));
            return;
        }
    col.emplace_back(target, p);
    raise_ = std::max(raise_, p.degree(w_));
}

void PolyOperator::apply(std::uint32_t gen, const Monomial& m, TermList& out) const {
    for (auto& [t, p] : cols_[gen])
        for (auto& [mm, c] : p.terms()) out.push_back(Term{t, mm * m, c});
}

void SumOperator::apply(std::uint32_t gen, const Monomial& m, TermList& out) const {
    for (auto* op : ops_) op->apply(gen, m, out);
}

std::int64_t SumOperator::max_raise() const {
    std::int64_t r = 0;
    for (auto* op : ops_) r = std::max(r, op->max_raise());
    return r;
}

std::uint32_t TermIndex::index(std::uint32_t gen, const Monomial& m) {
    auto [it, inserted] = map_.emplace(Key{gen, m}, static_cast<std::uint32_t>(degree_.size()));
    if (inserted) degree_.push_back(m.degree(w_));
    return it->second;
}

std::optional<std::uint32_t> TermIndex::find(std::uint32_t gen, const Monomial& m) const {
    auto it = map_.find(Key{gen, m});
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<std::uint32_t, Monomial>> truncated_basis(const FreeSpace& s, std::int64_t D) {
    std::vector<std::pair<std::uint32_t, Monomial>> out;
    auto monos = monomials_up_to(s.nvars, D, s.weights);
    out.reserve(monos.size() * s.ngens);
    for (std::uint32_t g = 0; g < s.ngens; ++g)
        for (auto& m : monos) out.emplace_back(g, m);
    return out;
}

SparseMatrix image_matrix(const TruncOperator& op, const std::vector<std::pair<std::uint32_t, Monomial>>& basis,
                          TermIndex& idx, Field f) {
    std::vector<SparseVec> cols;
    cols.reserve(basis.size());
    TermList tl;
    for (auto& [g, m] : basis) {
        tl.clear();
        op.apply(g, m, tl);
        SparseVec v;
        v.reserve(tl.size());
        for (auto& t : tl) v.emplace_back(idx.index(t.gen, t.mono), t.coeff);
        cols.push_back(std::move(v));
    }
    SparseMatrix sm(idx.size(), f);
    for (auto& c : cols) sm.add_column(std::move(c));
    return sm;
}

TruncatedHomology truncated_homology(const FreeSpace& in, const TruncOperator* d_in, const FreeSpace& mid,
                                     const TruncOperator* d_out, std::int64_t D, std::int64_t slack, Field f) {
    TruncatedHomology h;
    auto mid_basis = truncated_basis(mid, D);
    std::size_t rank_out = 0;
    if (d_out && !mid_basis.empty()) {
        TermIndex out_idx;
        rank_out = sparse_rank(image_matrix(*d_out, mid_basis, out_idx, f));
    }
    h.cycles = mid_basis.size() - rank_out;
    if (d_in && in.ngens > 0) {
        auto in_basis = truncated_basis(in, D + slack);
        TermIndex mid_idx(mid.weights);
        SparseMatrix img = image_matrix(*d_in, in_basis, mid_idx, f);
        std::size_t rank_all = sparse_rank(img);
        // Projection onto coordinates of degree > D.
        std::vector<std::uint32_t> remap(mid_idx.size(), UINT32_MAX);
        std::uint32_t hi = 0;
        for (std::uint32_t i = 0; i < mid_idx.size(); ++i)
            if (mid_idx.degree(i) > D) remap[i] = hi++;
        SparseMatrix proj(hi, f);
        for (std::size_t j = 0; j < img.cols(); ++j) {
            SparseVec v;
            for (auto& [i, c] : img.column(j))
                if (remap[i] != UINT32_MAX) v.emplace_back(remap[i], c);
            proj.add_column(std::move(v));
        }
        std::size_t rank_hi = sparse_rank(proj);
        h.boundaries = rank_all - rank_hi;
    }
    return h;
}

} // namespace mfkit
