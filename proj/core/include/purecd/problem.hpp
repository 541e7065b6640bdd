#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "purecd/prox.hpp"
#include "purecd/sparse.hpp"

namespace purecd {

// Differentiable term accessed through oracles only: full value, one gradient
// coordinate, and a per-coordinate smoothness bound beta_i >= 0 (coordinate i
// of the gradient is beta_i-Lipschitz along e_i).
struct SmoothOracle {
  std::function<double(std::span<const double>)> value;
  std::function<double(std::span<const double>, Index)> grad_coord;
  std::vector<double> beta;
};

// Composite objective  f(x) + g(x) + h(A x)  held in primal-dual form: g and
// the conjugate h* are separable prox-friendly functions, f is an optional
// smooth oracle. h itself is recovered from h* where a value is needed.
struct ProblemSpec {
  SparseMatrix a;
  SeparableFunction g;
  SeparableFunction hstar;
  std::optional<SmoothOracle> f;

  ProblemSpec(SparseMatrix matrix, SeparableFunction g_fun, SeparableFunction hstar_fun,
              std::optional<SmoothOracle> f_fun = std::nullopt)
      : a(std::move(matrix)), g(std::move(g_fun)), hstar(std::move(hstar_fun)),
        f(std::move(f_fun)) {
    if (g.dim() != a.cols())
      throw std::invalid_argument("problem: g dimension must match column count");
    if (hstar.dim() != a.rows())
      throw std::invalid_argument("problem: h* dimension must match row count");
    if (f) {
      if (!f->value || !f->grad_coord)
        throw std::invalid_argument("problem: smooth oracle is missing a callback");
      if (static_cast<Index>(f->beta.size()) != a.cols())
        throw std::invalid_argument("problem: beta must have one entry per column");
      for (double b : f->beta)
        if (!(b >= 0.0)) throw std::invalid_argument("problem: beta entries must be >= 0");
    }
  }

  Index primal_dim() const { return a.cols(); }
  Index dual_dim() const { return a.rows(); }

  double smooth_value(std::span<const double> x) const { return f ? f->value(x) : 0.0; }
  double grad_coord(std::span<const double> x, Index i) const {
    return f ? f->grad_coord(x, i) : 0.0;
  }
  double beta(Index i) const { return f ? f->beta[i] : 0.0; }

  // Target vector of the data-fitting or constraint term, when h* carries one.
  std::span<const double> offsets() const {
    const auto k = hstar.kind();
    if (k == FunKind::ls_conjugate || k == FunKind::linear_conjugate)
      return hstar.offsets();
    return {};
  }
};

}  // namespace purecd
