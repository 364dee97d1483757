#include "mfkit/exactalg/weights.hpp"

#include <numeric>

#include "mfkit/exactalg/matrix.hpp"

namespace mfkit {

std::optional<QuasiHomogeneity> detect_weights(const MultiPoly& f) {
    std::size_t n = f.nvars();
    if (f.is_zero() || n == 0) return std::nullopt;
    Weights ones(n, 1);
    if (f.is_homogeneous(ones) && f.degree() > 0) return QuasiHomogeneity{ones, f.degree()};
    // Solve sum_i w_i e_i = 1 over the exponent vectors of f.
    std::vector<Monomial> ms;
    for (auto& [m, c] : f.terms()) ms.push_back(m);
    Matrix a(ms.size(), n);
    std::vector<Scalar> rhs(ms.size(), Scalar(1));
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Scalar(static_cast<long>(ms[i][j]));
    auto sol = solve_linear(a, rhs);
    if (!sol) return std::nullopt;
    if (exact_rank_kernel(a).rank != n) {
        // Underdetermined: take the minimal-norm solution a^T y with a a^T y = 1.
        const std::size_t m = ms.size();
        Matrix aat(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t j = 0; j < n; ++j) aat(i, k) += a(i, j) * a(k, j);
        auto y = solve_linear(aat, rhs);
        if (!y) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            Scalar x(0);
            for (std::size_t i = 0; i < m; ++i) x += a(i, j) * (*y)[i];
            (*sol)[j] = x;
        }
    }
    mpz_class l = 1;
    for (auto& w : *sol) {
        if (sgn(w.value()) <= 0) return std::nullopt;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), w.value().get_den_mpz_t());
    }
    Weights w;
    for (auto& x : *sol) w.push_back(mpz_class(x.value() * l).get_si());
    std::int64_t g = 0;
    for (auto x : w) g = std::gcd(g, x);
    for (auto& x : w) x /= g;
    return QuasiHomogeneity{w, l.get_si() / g};
}

} // namespace mfkit
