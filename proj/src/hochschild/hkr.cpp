#include "mfkit/hochschild/hkr.hpp"

#include <bit>
#include <sstream>

#include "mfkit/error.hpp"

namespace mfkit {

BarChain cyclic_bar_B(const BarWord& w, const MultiPoly& f) {
    BarChain out;
    const std::size_t m = w.size();
    for (std::size_t i = 1; i <= m; ++i) {
        BarWord v(w.begin(), w.begin() + static_cast<long>(i));
        v.push_back(f);
        v.insert(v.end(), w.begin() + static_cast<long>(i), w.end());
        out.push_back(BarTerm{Scalar(i % 2 ? -1 : 1), std::move(v)});
    }
    return out;
}

BarChain cyclic_bar_B(const BarChain& c, const MultiPoly& f) {
    BarChain out;
    for (auto& t : c)
        for (auto& u : cyclic_bar_B(t.word, f)) out.push_back(BarTerm{t.coeff * u.coeff, std::move(u.word)});
    return out;
}

std::map<std::vector<Monomial>, Scalar> expand(const BarChain& c) {
    std::map<std::vector<Monomial>, Scalar> out;
    for (auto& t : c) {
        std::vector<std::pair<std::vector<Monomial>, Scalar>> partial{{{}, t.coeff}};
        for (auto& a : t.word) {
            std::vector<std::pair<std::vector<Monomial>, Scalar>> next;
            for (auto& [w, s] : partial)
                for (auto& [m, c2] : a.terms()) {
                    auto v = w;
                    v.push_back(m);
                    next.emplace_back(std::move(v), s * c2);
                }
            partial = std::move(next);
        }
        for (auto& [w, s] : partial) {
            auto [it, ins] = out.emplace(w, s);
            if (!ins) it->second += s;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

Form Form::function(const MultiPoly& g) {
    Form f(g.ring());
    f.add(0, g);
    return f;
}

Form Form::exterior_derivative(const MultiPoly& g) {
    Form f(g.ring());
    for (std::size_t i = 0; i < g.nvars(); ++i) f.add(std::uint32_t{1} << i, g.derivative(i));
    return f;
}

void Form::add(std::uint32_t mask, const MultiPoly& c) {
    if (c.is_zero()) return;
    auto [it, ins] = terms_.emplace(mask, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Form& Form::operator+=(const Form& o) {
    for (auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

Form operator*(const Scalar& c, const Form& f) {
    Form out(f.ring_);
    for (auto& [m, p] : f.terms_) out.add(m, p * c);
    return out;
}

Form wedge(const Form& a, const Form& b) {
    Form out(a.ring_);
    for (auto& [ma, pa] : a.terms_)
        for (auto& [mb, pb] : b.terms_) {
            if (ma & mb) continue;
            // Sorting dx_A dx_B: one transposition per pair j in A, i in B with j > i.
            int inv = 0;
            for (std::uint32_t r = mb; r; r &= r - 1) {
                std::uint32_t i = static_cast<std::uint32_t>(std::countr_zero(r));
                inv += std::popcount(ma >> (i + 1));
            }
            out.add(ma | mb, (pa * pb) * Scalar(inv % 2 ? -1 : 1));
        }
    return out;
}

std::string Form::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, p] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.to_string() << ")";
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            if (m >> i & 1) os << "*d" << ring_->name(i);
    }
    return os.str();
}

Form hkr_map(const BarWord& w) {
    if (w.empty()) throw Error(ErrorCode::Precondition, "bar words have at least one factor");
    Form out = Form::function(w[0]);
    mpz_class fact = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        out = wedge(out, Form::exterior_derivative(w[i]));
        fact *= static_cast<unsigned long>(i);
    }
    return Scalar(mpq_class(1, fact), w[0].ring()->field()) * out;
}

Form hkr_map(const BarChain& c) {
    if (c.empty()) throw Error(ErrorCode::Precondition, "empty bar chain");
    Form out(c[0].word.at(0).ring());
    for (auto& t : c) out += t.coeff * hkr_map(t.word);
    return out;
}

HkrCheck hkr_intertwine_check(const MultiPoly& f, std::size_t m_max, std::int64_t deg_max) {
    if (!f.ring()->field().is_rational())
        throw Error(ErrorCode::FieldMismatch, "the HKR normalization requires characteristic 0");
    HkrCheck r;
    auto monos = monomials_up_to(f.nvars(), deg_max);
    Form minus_df = Scalar(-1) * Form::exterior_derivative(f);
    std::vector<BarWord> layer{{}};
    for (std::size_t m = 1; m <= m_max; ++m) {
        std::vector<BarWord> next;
        for (auto& w : layer)
            for (auto& mono : monos) {
                BarWord v = w;
                v.push_back(MultiPoly::term(f.ring(), mono, Scalar(1)));
                next.push_back(std::move(v));
            }
        layer = std::move(next);
        for (auto& w : layer) {
            ++r.words;
            Form lhs = hkr_map(cyclic_bar_B(w, f));
            Form rhs = wedge(minus_df, hkr_map(w));
            if (lhs == rhs) continue;
            r.ok = false;
            if (r.counterexample.empty()) {
                std::ostringstream os;
                for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " (x) " : "") << w[i].to_string();
                r.counterexample = os.str();
            }
        }
    }
    return r;
}

} // namespace mfkit
