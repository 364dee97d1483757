#ifndef MFKIT_EXACTALG_TRUNCATED_HPP
#define MFKIT_EXACTALG_TRUNCATED_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mfkit/exactalg/poly.hpp"
#include "mfkit/exactalg/sparse.hpp"

namespace mfkit {

// Basis element gen * x^mono of a free k[x]-module, with a coefficient.
struct Term {
    std::uint32_t gen;
    Monomial mono;
    Scalar coeff;
};
using TermList = std::vector<Term>;

// Free module of finite rank over k[x1..xn]; truncations are by (weighted)
// polynomial degree of the coefficient.
struct FreeSpace {
    std::size_t ngens = 0;
    std::size_t nvars = 0;
    Weights weights;
};

// k-linear map between free modules, given on monomial basis elements.
class TruncOperator {
public:
    virtual ~TruncOperator() = default;
    virtual void apply(std::uint32_t gen, const Monomial& m, TermList& out) const = 0;
    // Upper bound on the (weighted) degree increase.
    virtual std::int64_t max_raise() const = 0;
};

// O-linear map given by a sparse matrix of polynomials.
class PolyOperator : public TruncOperator {
public:
    PolyOperator(std::size_t source_gens, Weights w = {}) : cols_(source_gens), w_(std::move(w)) {}
    // Adds p to the entry (target, source).
    void add(std::uint32_t target, std::uint32_t source, const MultiPoly& p);
    void apply(std::uint32_t gen, const Monomial& m, TermList& out) const override;
    std::int64_t max_raise() const override { return raise_; }
    std::size_t source_gens() const { return cols_.size(); }
    const std::vector<std::pair<std::uint32_t, MultiPoly>>& column(std::uint32_t source) const { return cols_[source]; }

private:
    std::vector<std::vector<std::pair<std::uint32_t, MultiPoly>>> cols_;
    Weights w_;
    std::int64_t raise_ = 0;
};

// Arbitrary linear operator from a callback (for differential operators).
class FunctionOperator : public TruncOperator {
public:
    using Fn = std::function<void(std::uint32_t, const Monomial&, TermList&)>;
    FunctionOperator(Fn fn, std::int64_t raise) : fn_(std::move(fn)), raise_(raise) {}
    void apply(std::uint32_t gen, const Monomial& m, TermList& out) const override { fn_(gen, m, out); }
    std::int64_t max_raise() const override { return raise_; }

private:
    Fn fn_;
    std::int64_t raise_;
};

// Sum of operators with the same source and target.
class SumOperator : public TruncOperator {
public:
    explicit SumOperator(std::vector<const TruncOperator*> ops) : ops_(std::move(ops)) {}
    void apply(std::uint32_t gen, const Monomial& m, TermList& out) const override;
    std::int64_t max_raise() const override;

private:
    std::vector<const TruncOperator*> ops_;
};

// Lazily assigned coordinates for (gen, monomial) pairs.
class TermIndex {
public:
    explicit TermIndex(Weights w = {}) : w_(std::move(w)) {}
    std::uint32_t index(std::uint32_t gen, const Monomial& m);
    std::optional<std::uint32_t> find(std::uint32_t gen, const Monomial& m) const;
    std::size_t size() const { return degree_.size(); }
    std::int64_t degree(std::uint32_t idx) const { return degree_[idx]; }

private:
    struct Key {
        std::uint32_t gen;
        Monomial mono;
        bool operator==(const Key& o) const { return gen == o.gen && mono == o.mono; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.mono.hash() * 31u + k.gen; }
    };
    Weights w_;
    std::unordered_map<Key, std::uint32_t, KeyHash> map_;
    std::vector<std::int64_t> degree_;
};

// All basis elements (gen, monomial) of degree <= D.
std::vector<std::pair<std::uint32_t, Monomial>> truncated_basis(const FreeSpace& s, std::int64_t D);

// Applies op to each basis element; columns are indexed through idx.
SparseMatrix image_matrix(const TruncOperator& op, const std::vector<std::pair<std::uint32_t, Monomial>>& basis,
                          TermIndex& idx, Field f);

struct TruncatedHomology {
    std::size_t cycles = 0;
    std::size_t boundaries = 0;
    std::size_t dim() const { return cycles - boundaries; }
};

// Homology at `mid` of  in --d_in--> mid --d_out--> out, truncated at degree D:
// cycles are the kernel of d_out on mid^{<=D}; boundaries are the image of
// in^{<=D+slack} intersected with mid^{<=D}. Null operators are zero maps.
TruncatedHomology truncated_homology(const FreeSpace& in, const TruncOperator* d_in, const FreeSpace& mid,
                                     const TruncOperator* d_out, std::int64_t D, std::int64_t slack, Field f);

// Result of sweeping the truncation bound until `window` consecutive bounds agree.
template <class T>
struct Stabilized {
    T value{};
    bool stabilized = false;
    std::int64_t D_used = 0;
    std::vector<T> history;
};

template <class T>
Stabilized<T> stabilize(const std::function<T(std::int64_t)>& at, std::int64_t D_start, std::int64_t D_max,
                        int window = 3) {
    Stabilized<T> s;
    int run = 0;
    for (std::int64_t D = D_start; D <= D_max; ++D) {
        T v = at(D);
        if (!s.history.empty() && v == s.history.back())
            ++run;
        else
            run = 1;
        s.history.push_back(v);
        s.value = v;
        s.D_used = D;
        if (run >= window) {
            s.stabilized = true;
            break;
        }
    }
    return s;
}

} // namespace mfkit

#endif
