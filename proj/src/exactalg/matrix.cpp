#include "mfkit/exactalg/matrix.hpp"

#include "mfkit/error.hpp"

namespace mfkit {

Matrix::Matrix(std::size_t rows, std::size_t cols, Field f)
    : rows_(rows), cols_(cols), field_(f), e_(rows * cols, Scalar(mpq_class(0), f)) {}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(rows_, o.cols_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
    std::vector<Scalar> r(rows_, Scalar(mpq_class(0), field_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

namespace {

// Upper echelon form as rational rows plus pivot columns.
struct Echelon {
    std::vector<std::vector<mpq_class>> rows;
    std::vector<std::size_t> pivots;
};

Echelon bareiss(const Matrix& m) {
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<mpz_class>> a(R, std::vector<mpz_class>(C));
    for (std::size_t i = 0; i < R; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < C; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
        for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).value().get_num() * (l / m(i, j).value().get_den());
    }
    Echelon e;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        e.pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<mpq_class> row(C);
        for (std::size_t j = 0; j < C; ++j) row[j] = mpq_class(a[i][j]);
        e.rows.push_back(std::move(row));
    }
    return e;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

Echelon gauss_modp(const Matrix& m) {
    std::uint64_t p = m.field().characteristic();
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<std::uint64_t>> a(R, std::vector<std::uint64_t>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) a[i][j] = m(i, j).in_field(m.field()).value().get_num().get_ui();
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = r;
        while (piv < R && a[piv][c] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[r]);
        std::uint64_t inv = powmod(a[r][c], p - 2, p);
        for (std::size_t j = c; j < C; ++j) a[r][j] = mulmod(a[r][j], inv, p);
        for (std::size_t i = r + 1; i < R; ++i) {
            std::uint64_t f = a[i][c];
            if (!f) continue;
            for (std::size_t j = c; j < C; ++j) a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
        }
        e.pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<mpq_class> row(C);
        for (std::size_t j = 0; j < C; ++j) row[j] = mpq_class(static_cast<unsigned long>(a[i][j]));
        e.rows.push_back(std::move(row));
    }
    return e;
}

Echelon echelon(const Matrix& m) { return m.field().is_rational() ? bareiss(m) : gauss_modp(m); }

// Back substitution for U x = rhs with the given free-variable values.
std::vector<Scalar> back_substitute(const Echelon& e, std::size_t C, std::vector<mpq_class> x,
                                    const std::vector<mpq_class>* rhs, Field f) {
    std::uint64_t p = f.characteristic();
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
        std::size_t pc = e.pivots[k];
        mpq_class s = rhs ? (*rhs)[k] : mpq_class(0);
        for (std::size_t j = pc + 1; j < C; ++j)
            if (e.rows[k][j] != 0) s -= e.rows[k][j] * x[j];
        if (p == 0) {
            x[pc] = s / e.rows[k][pc];
        } else {
            x[pc] = Scalar(s, f).value();
        }
    }
    std::vector<Scalar> out;
    out.reserve(C);
    for (auto& v : x) out.emplace_back(v, f);
    return out;
}

} // namespace

RankKernel exact_rank_kernel(const Matrix& m) {
    Echelon e = echelon(m);
    RankKernel rk;
    rk.rank = e.pivots.size();
    rk.pivot_columns = e.pivots;
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    for (std::size_t fcol = 0; fcol < m.cols(); ++fcol) {
        if (is_pivot[fcol]) continue;
        std::vector<mpq_class> x(m.cols(), 0);
        x[fcol] = 1;
        rk.kernel.push_back(back_substitute(e, m.cols(), std::move(x), nullptr, m.field()));
    }
    return rk;
}

std::optional<std::vector<Scalar>> solve_linear(const Matrix& m, const std::vector<Scalar>& b) {
    if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length mismatch");
    Matrix aug(m.rows(), m.cols() + 1, m.field());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = echelon(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    std::vector<mpq_class> rhs;
    for (auto& row : e.rows) rhs.push_back(row[m.cols()]);
    std::vector<mpq_class> x(m.cols(), 0);
    return back_substitute(e, m.cols(), std::move(x), &rhs, m.field());
}

} // namespace mfkit
