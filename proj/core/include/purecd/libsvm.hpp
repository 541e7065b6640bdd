#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "purecd/sparse.hpp"

namespace purecd {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Dataset {
  SparseMatrix matrix;
  std::vector<double> labels;
};

// Text format: one sample per line, "<label> <index>:<value> ...", indices
// 1-based and strictly increasing within a line, '#' starts a comment.
// Feature count is the largest index seen. Blank lines are skipped; a line
// holding only a label is a structurally empty row and is kept.
Dataset parse_libsvm(std::istream& in);
Dataset parse_libsvm_file(const std::string& path);

struct PreprocessResult {
  SparseMatrix matrix;
  std::vector<double> labels;
  // Original ids of the surviving rows/columns, in output order.
  std::vector<Index> kept_rows;
  std::vector<Index> kept_cols;
};

// Drops structurally empty rows and columns, then scales every surviving row
// to unit Euclidean norm. Labels are filtered alongside the rows. Applying it
// twice is a fixed point up to roundoff.
PreprocessResult preprocess(const SparseMatrix& a, std::span<const double> labels);

}  // namespace purecd
