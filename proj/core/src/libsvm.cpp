#include "purecd/libsvm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace purecd {

namespace {

const char* skip_ws(const char* p, const char* end) {
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  return p;
}

const char* token_end(const char* p, const char* end) {
  while (p < end && *p != ' ' && *p != '\t') ++p;
  return p;
}

double parse_double(const char* first, const char* last, std::size_t line, const char* what) {
  if (first < last && *first == '+') ++first;
  double v = 0.0;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(first, last) + "'");
  return v;
}

Index parse_index(const char* first, const char* last, std::size_t line) {
  if (first < last && *first == '+') ++first;
  Index v = 0;
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    throw ParseError(line, "malformed feature index '" + std::string(first, last) + "'");
  return v;
}

}  // namespace

Dataset parse_libsvm(std::istream& in) {
  std::vector<Triplet> entries;
  std::vector<double> labels;
  Index max_col = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const char* p = line.data();
    const char* end = line.data() + line.size();
    p = skip_ws(p, end);
    if (p == end) continue;

    const char* tok = token_end(p, end);
    labels.push_back(parse_double(p, tok, lineno, "label"));
    const Index row = static_cast<Index>(labels.size()) - 1;

    Index prev_col = 0;
    p = skip_ws(tok, end);
    while (p < end) {
      tok = token_end(p, end);
      const char* colon = p;
      while (colon < tok && *colon != ':') ++colon;
      if (colon == tok)
        throw ParseError(lineno, "expected index:value, got '" + std::string(p, tok) + "'");
      const Index col = parse_index(p, colon, lineno);
      if (col < 1) throw ParseError(lineno, "feature index must be >= 1");
      if (col <= prev_col)
        throw ParseError(lineno, "feature indices must be strictly increasing");
      const double value = parse_double(colon + 1, tok, lineno, "feature value");
      entries.push_back({row, col - 1, value});
      prev_col = col;
      max_col = std::max(max_col, col);
      p = skip_ws(tok, end);
    }
  }

  Dataset d;
  d.matrix = SparseMatrix::from_triplets(static_cast<Index>(labels.size()), max_col, entries);
  d.labels = std::move(labels);
  return d;
}

Dataset parse_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_libsvm(in);
}

PreprocessResult preprocess(const SparseMatrix& a, std::span<const double> labels) {
  if (!labels.empty() && static_cast<Index>(labels.size()) != a.rows())
    throw std::invalid_argument("preprocess: label count does not match row count");

  PreprocessResult r;
  std::vector<Index> row_map(static_cast<std::size_t>(a.rows()), -1);
  std::vector<Index> col_map(static_cast<std::size_t>(a.cols()), -1);
  for (Index j = 0; j < a.rows(); ++j) {
    if (a.row_support()[j] == 0) continue;
    row_map[j] = static_cast<Index>(r.kept_rows.size());
    r.kept_rows.push_back(j);
    if (!labels.empty()) r.labels.push_back(labels[j]);
  }
  for (Index i = 0; i < a.cols(); ++i) {
    if (a.col_nnz(i) == 0) continue;
    col_map[i] = static_cast<Index>(r.kept_cols.size());
    r.kept_cols.push_back(i);
  }

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(a.nnz()));
  for (Index j = 0; j < a.rows(); ++j) {
    if (row_map[j] < 0) continue;
    auto vals = a.row_vals(j);
    auto cols = a.row_cols(j);
    double sq = 0.0;
    for (double v : vals) sq += v * v;
    const double scale = 1.0 / std::sqrt(sq);
    for (std::size_t t = 0; t < vals.size(); ++t)
      entries.push_back({row_map[j], col_map[cols[t]], vals[t] * scale});
  }
  r.matrix = SparseMatrix::from_triplets(static_cast<Index>(r.kept_rows.size()),
                                         static_cast<Index>(r.kept_cols.size()), entries);
  return r;
}

}  // namespace purecd
