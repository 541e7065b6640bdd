#include "purecd/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace purecd {

namespace {

void check_dim(Index rows, Index cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("sparse: negative dimension");
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols,
                                         std::span<const Triplet> entries) {
  check_dim(rows, cols);
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;

  std::vector<Triplet> kept;
  kept.reserve(entries.size());
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::out_of_range("sparse: triplet index out of range");
    if (t.value == 0.0) continue;
    kept.push_back(t);
  }

  auto by_col = [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  };
  std::sort(kept.begin(), kept.end(), by_col);
  for (std::size_t t = 1; t < kept.size(); ++t) {
    if (kept[t].col == kept[t - 1].col && kept[t].row == kept[t - 1].row)
      throw std::invalid_argument("sparse: duplicate entry at (" +
                                  std::to_string(kept[t].row) + ", " +
                                  std::to_string(kept[t].col) + ")");
  }

  const Index nz = static_cast<Index>(kept.size());
  m.csc_ptr_.assign(static_cast<std::size_t>(cols) + 1, 0);
  m.csc_rows_.resize(nz);
  m.csc_vals_.resize(nz);
  for (const Triplet& t : kept) ++m.csc_ptr_[static_cast<std::size_t>(t.col) + 1];
  for (Index i = 0; i < cols; ++i)
    m.csc_ptr_[static_cast<std::size_t>(i) + 1] += m.csc_ptr_[static_cast<std::size_t>(i)];
  for (Index t = 0; t < nz; ++t) {
    m.csc_rows_[t] = kept[t].row;
    m.csc_vals_[t] = kept[t].value;
  }

  auto by_row = [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  };
  std::sort(kept.begin(), kept.end(), by_row);
  m.csr_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.csr_cols_.resize(nz);
  m.csr_vals_.resize(nz);
  for (const Triplet& t : kept) ++m.csr_ptr_[static_cast<std::size_t>(t.row) + 1];
  for (Index j = 0; j < rows; ++j)
    m.csr_ptr_[static_cast<std::size_t>(j) + 1] += m.csr_ptr_[static_cast<std::size_t>(j)];
  for (Index t = 0; t < nz; ++t) {
    m.csr_cols_[t] = kept[t].col;
    m.csr_vals_[t] = kept[t].value;
  }

  m.col_sq_norms_.assign(static_cast<std::size_t>(cols), 0.0);
  for (Index i = 0; i < cols; ++i) {
    double s = 0.0;
    for (Index t = m.csc_ptr_[i]; t < m.csc_ptr_[i + 1]; ++t)
      s += m.csc_vals_[t] * m.csc_vals_[t];
    m.col_sq_norms_[i] = s;
  }
  m.row_support_.assign(static_cast<std::size_t>(rows), 0);
  for (Index j = 0; j < rows; ++j) m.row_support_[j] = m.csr_ptr_[j + 1] - m.csr_ptr_[j];

  return m;
}

std::span<const Index> SparseMatrix::col_rows(Index i) const {
  if (i < 0 || i >= cols_) throw std::out_of_range("sparse: column index out of range");
  return {csc_rows_.data() + csc_ptr_[i], static_cast<std::size_t>(csc_ptr_[i + 1] - csc_ptr_[i])};
}

std::span<const double> SparseMatrix::col_vals(Index i) const {
  if (i < 0 || i >= cols_) throw std::out_of_range("sparse: column index out of range");
  return {csc_vals_.data() + csc_ptr_[i], static_cast<std::size_t>(csc_ptr_[i + 1] - csc_ptr_[i])};
}

std::span<const Index> SparseMatrix::row_cols(Index j) const {
  if (j < 0 || j >= rows_) throw std::out_of_range("sparse: row index out of range");
  return {csr_cols_.data() + csr_ptr_[j], static_cast<std::size_t>(csr_ptr_[j + 1] - csr_ptr_[j])};
}

std::span<const double> SparseMatrix::row_vals(Index j) const {
  if (j < 0 || j >= rows_) throw std::out_of_range("sparse: row index out of range");
  return {csr_vals_.data() + csr_ptr_[j], static_cast<std::size_t>(csr_ptr_[j + 1] - csr_ptr_[j])};
}

Index SparseMatrix::col_nnz(Index i) const {
  if (i < 0 || i >= cols_) throw std::out_of_range("sparse: column index out of range");
  return csc_ptr_[i + 1] - csc_ptr_[i];
}

Index SparseMatrix::row_nnz(Index j) const {
  if (j < 0 || j >= rows_) throw std::out_of_range("sparse: row index out of range");
  return csr_ptr_[j + 1] - csr_ptr_[j];
}

void SparseMatrix::col_axpy(Index i, double delta, std::span<double> out) const {
  if (i < 0 || i >= cols_) throw std::out_of_range("sparse: column index out of range");
  if (static_cast<Index>(out.size()) != rows_)
    throw std::invalid_argument("sparse: col_axpy output has wrong length");
  if (delta == 0.0) return;
  for (Index t = csc_ptr_[i]; t < csc_ptr_[i + 1]; ++t)
    out[csc_rows_[t]] += delta * csc_vals_[t];
}

std::vector<double> SparseMatrix::matvec(std::span<const double> x) const {
  if (static_cast<Index>(x.size()) != cols_)
    throw std::invalid_argument("sparse: matvec input has wrong length");
  std::vector<double> y(static_cast<std::size_t>(rows_), 0.0);
  for (Index j = 0; j < rows_; ++j) {
    double s = 0.0;
    for (Index t = csr_ptr_[j]; t < csr_ptr_[j + 1]; ++t) s += csr_vals_[t] * x[csr_cols_[t]];
    y[j] = s;
  }
  return y;
}

std::vector<double> SparseMatrix::matvec_transpose(std::span<const double> y) const {
  if (static_cast<Index>(y.size()) != rows_)
    throw std::invalid_argument("sparse: matvec_transpose input has wrong length");
  std::vector<double> x(static_cast<std::size_t>(cols_), 0.0);
  for (Index i = 0; i < cols_; ++i) {
    double s = 0.0;
    for (Index t = csc_ptr_[i]; t < csc_ptr_[i + 1]; ++t) s += csc_vals_[t] * y[csc_rows_[t]];
    x[i] = s;
  }
  return x;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(csc_vals_.size());
  for (Index i = 0; i < cols_; ++i)
    for (Index t = csc_ptr_[i]; t < csc_ptr_[i + 1]; ++t)
      out.push_back({csc_rows_[t], i, csc_vals_[t]});
  return out;
}

}  // namespace purecd
