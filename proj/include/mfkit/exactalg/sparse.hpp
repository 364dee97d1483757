#ifndef MFKIT_EXACTALG_SPARSE_HPP
#define MFKIT_EXACTALG_SPARSE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mfkit/exactalg/scalar.hpp"

namespace mfkit {

// Sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

// Adds duplicates, drops zeros and sorts.
SparseVec normalize_sparse(SparseVec v);

// Column-major sparse matrix; columns are the images of source basis vectors.
class SparseMatrix {
public:
    explicit SparseMatrix(std::size_t rows = 0, Field f = Field()) : rows_(rows), field_(f) {}

    void add_column(SparseVec v);
    void set_rows(std::size_t r) { rows_ = r; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    Field field() const { return field_; }
    const SparseVec& column(std::size_t j) const { return cols_[j]; }
    std::size_t nonzeros() const;

private:
    std::size_t rows_;
    Field field_;
    std::vector<SparseVec> cols_;
};

// Rank by incremental sparse echelon. Over Q rows are kept integral and
// divided by their content after each fraction-free reduction step.
std::size_t sparse_rank(const SparseMatrix& m);

// Kernel basis (vectors indexed by column).
std::vector<SparseVec> sparse_kernel(const SparseMatrix& m);

// Connected components of the row/column incidence graph; returns the
// component id of every column (-1 for zero columns).
std::vector<long> column_blocks(const SparseMatrix& m, std::size_t* count = nullptr);

} // namespace mfkit

#endif
