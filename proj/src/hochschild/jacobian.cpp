#include "mfkit/hochschild/jacobian.hpp"

#include <algorithm>

#include "mfkit/error.hpp"
#include "mfkit/exactalg/weights.hpp"

namespace mfkit {

JacobianRing::JacobianRing(const MultiPoly& f, const std::optional<Weights>& weights) : f_(f) {
    const std::size_t n = f.nvars();
    if (f.is_constant()) throw Error(ErrorCode::Precondition, "the potential must be non-constant");
    if (weights) {
        w_ = *weights;
        if (w_.size() != n) throw Error(ErrorCode::DimensionMismatch, "weights must list one entry per variable");
        if (std::any_of(w_.begin(), w_.end(), [](std::int64_t x) { return x < 1; }))
            throw Error(ErrorCode::Precondition, "weights must be positive");
        if (!f.is_homogeneous(w_))
            throw Error(ErrorCode::Precondition, "the potential is not quasi-homogeneous for the given weights");
    } else {
        auto qh = detect_weights(f);
        if (!qh) throw Error(ErrorCode::Precondition, "the potential is not quasi-homogeneous");
        w_ = qh->weights;
    }
    d_ = f.degree(w_);
    s_ = 0;
    std::int64_t wmax = 0;
    for (auto w : w_) {
        s_ += d_ - 2 * w;
        wmax = std::max(wmax, w);
    }
    if (s_ < 0) throw Error(ErrorCode::Precondition, "the critical point is not isolated");
    std::vector<MultiPoly> df;
    for (std::size_t i = 0; i < n; ++i) df.push_back(f.derivative(i));
    for (std::int64_t t = 0; t <= s_ + wmax; ++t) {
        Slice sl;
        sl.monos = monomials_of_degree(n, t, w_);
        if (sl.monos.empty()) continue;
        std::map<Monomial, std::size_t> row;
        for (std::size_t r = 0; r < sl.monos.size(); ++r) row[sl.monos[r]] = r;
        std::vector<std::vector<Scalar>> gens;
        for (std::size_t i = 0; i < n; ++i) {
            if (df[i].is_zero()) continue;
            for (auto& m : monomials_of_degree(n, t - (d_ - w_[i]), w_)) {
                std::vector<Scalar> col(sl.monos.size(), Scalar(0));
                for (auto& [mm, c] : df[i].terms()) col[row.at(mm * m)] += c;
                gens.push_back(std::move(col));
            }
        }
        // Greedy choice: ideal generators first, then monomials in order.
        const std::size_t R = sl.monos.size(), G = gens.size();
        Matrix probe(R, G + R, f.ring()->field());
        for (std::size_t j = 0; j < G; ++j)
            for (std::size_t r = 0; r < R; ++r) probe(r, j) = gens[j][r];
        for (std::size_t r = 0; r < R; ++r) probe(r, G + r) = Scalar(1);
        std::vector<std::size_t> chosen;
        for (auto c : exact_rank_kernel(probe).pivot_columns)
            if (c >= G) chosen.push_back(c - G);
        if (t > s_ && !chosen.empty()) throw Error(ErrorCode::Precondition, "the critical point is not isolated");
        sl.first = basis_.size();
        sl.count = chosen.size();
        sl.system = Matrix(R, chosen.size() + G, f.ring()->field());
        for (std::size_t k = 0; k < chosen.size(); ++k) {
            sl.system(chosen[k], k) = Scalar(1);
            basis_.push_back(sl.monos[chosen[k]]);
        }
        for (std::size_t j = 0; j < G; ++j)
            for (std::size_t r = 0; r < R; ++r) sl.system(r, chosen.size() + j) = gens[j][r];
        if (t == s_) {
            if (sl.count != 1) throw Error(ErrorCode::Precondition, "the socle is not one-dimensional");
            socle_ = sl.first;
        }
        slices_.emplace(t, std::move(sl));
    }
    if (!slices_.count(s_)) throw Error(ErrorCode::Precondition, "the socle is not one-dimensional");
}

std::vector<Scalar> JacobianRing::normal_form(const MultiPoly& p) const {
    std::vector<Scalar> out(basis_.size(), Scalar(0));
    std::map<std::int64_t, MultiPoly> parts;
    for (auto& [m, c] : p.terms()) {
        auto t = m.degree(w_);
        if (t > s_) continue;
        parts.try_emplace(t, f_.ring()).first->second.add_term(m, c);
    }
    for (auto& [t, q] : parts) {
        auto it = slices_.find(t);
        if (it == slices_.end()) continue;
        const Slice& sl = it->second;
        std::vector<Scalar> b(sl.monos.size(), Scalar(0));
        for (std::size_t r = 0; r < sl.monos.size(); ++r) b[r] = q.coefficient(sl.monos[r]);
        auto x = solve_linear(sl.system, b);
        if (!x) throw Error(ErrorCode::Precondition, "normal form failed");
        for (std::size_t k = 0; k < sl.count; ++k) out[sl.first + k] = (*x)[k];
    }
    return out;
}

std::vector<Scalar> JacobianRing::multiply(std::size_t a, std::size_t b) const {
    return normal_form(MultiPoly::term(f_.ring(), basis_[a] * basis_[b], Scalar(1)));
}

SoclePairing socle_pairing(const MultiPoly& f, const std::optional<Weights>& weights) {
    JacobianRing J(f, weights);
    SoclePairing sp;
    sp.basis = J.basis();
    sp.socle = J.basis()[J.socle_index()];
    const std::size_t mu = J.dim();
    sp.matrix = Matrix(mu, mu, f.ring()->field());
    for (std::size_t a = 0; a < mu; ++a)
        for (std::size_t b = 0; b < mu; ++b) sp.matrix(a, b) = J.multiply(a, b)[J.socle_index()];
    sp.nondegenerate = exact_rank_kernel(sp.matrix).rank == mu;
    return sp;
}

} // namespace mfkit
