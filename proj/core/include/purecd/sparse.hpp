#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace purecd {

using Index = std::int64_t;

struct Triplet {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

// Immutable sparse matrix stored in both compressed-column and compressed-row
// form. Column access drives the per-coordinate solver updates, row access
// drives residual refreshes and matvec; keeping both costs 2x memory and is
// built once up front. Explicit zeros are dropped at construction and
// duplicate (row, col) pairs are rejected.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(Index rows, Index cols, std::span<const Triplet> entries);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index nnz() const { return static_cast<Index>(csc_vals_.size()); }

  std::span<const Index> col_rows(Index i) const;
  std::span<const double> col_vals(Index i) const;
  std::span<const Index> row_cols(Index j) const;
  std::span<const double> row_vals(Index j) const;

  Index col_nnz(Index i) const;
  Index row_nnz(Index j) const;

  // Cached squared Euclidean column norms.
  const std::vector<double>& col_sq_norms() const { return col_sq_norms_; }
  // Cached nonzero count per row.
  const std::vector<Index>& row_support() const { return row_support_; }

  // Visits (row, value) for every stored entry of column i.
  template <typename Visitor>
  void col_gather(Index i, Visitor&& visit) const {
    auto rs = col_rows(i);
    auto vs = col_vals(i);
    for (std::size_t t = 0; t < rs.size(); ++t) visit(rs[t], vs[t]);
  }

  // out[j] += delta * A[j, i] over the support of column i.
  void col_axpy(Index i, double delta, std::span<double> out) const;

  // A * x via the row form.
  std::vector<double> matvec(std::span<const double> x) const;
  // A^T * y via the column form.
  std::vector<double> matvec_transpose(std::span<const double> y) const;

  std::vector<Triplet> to_triplets() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> csc_ptr_;
  std::vector<Index> csc_rows_;
  std::vector<double> csc_vals_;
  std::vector<Index> csr_ptr_;
  std::vector<Index> csr_cols_;
  std::vector<double> csr_vals_;
  std::vector<double> col_sq_norms_;
  std::vector<Index> row_support_;
};

}  // namespace purecd
