#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "purecd/sparse.hpp"

namespace purecd {

enum class FunKind {
  zero,              // 0
  l1,                // lambda * |u|
  sq_l2,             // (lambda / 2) * u^2
  ls_conjugate,      // u^2 / 2 + b_j * u   (convex conjugate of (t - b_j)^2 / 2)
  linear_conjugate,  // b_j * u             (convex conjugate of the indicator of {b_j})
  box_indicator,     // 0 on [lo, hi], +inf outside
};

// Coordinatewise-separable convex function over a fixed number of coordinates.
// Each coordinate shares the kind; ls_conjugate and linear_conjugate carry a
// per-coordinate offset.
class SeparableFunction {
 public:
  SeparableFunction() : SeparableFunction(zero(0)) {}

  static SeparableFunction zero(Index dim);
  static SeparableFunction l1(Index dim, double lambda);
  static SeparableFunction sq_l2(Index dim, double lambda);
  static SeparableFunction ls_conjugate(std::vector<double> offsets);
  static SeparableFunction linear_conjugate(std::vector<double> offsets);
  static SeparableFunction box_indicator(Index dim, double lo, double hi);

  // argmin_u  phi_coord(u) + (u - v)^2 / (2 * gamma),  gamma > 0.
  // The soft-threshold tie |v| == gamma * lambda maps to exactly 0. A NaN
  // input to a projection is a hard error instead of silently picking a bound.
  double prox(Index coord, double gamma, double v) const;

  // phi_coord(u) as an extended real (+inf outside an indicator's set).
  double value(Index coord, double u) const;

  // Value at z of the convex conjugate of this function's coordinate, i.e.
  // sup_y { z * y - phi_coord(y) }. Lets h(A x) be evaluated when only h* is
  // stored.
  double conjugate_value(Index coord, double z) const;

  Index dim() const { return dim_; }
  FunKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& offsets() const { return offsets_; }

 private:
  SeparableFunction(FunKind kind, Index dim) : kind_(kind), dim_(dim) {}

  void check_coord(Index coord) const;

  FunKind kind_;
  Index dim_ = 0;
  double lambda_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> offsets_;
};

// Samples the Fenchel-Young inequality h(t) + h*(y) >= t * y for a claimed
// conjugate pair; equality_samples are (t, y) points expected to be tight
// (y a subgradient of h at t) and must close the inequality to tol.
bool conjugate_pair_check(const std::function<double(double)>& h,
                          const std::function<double(double)>& h_conj,
                          std::span<const std::pair<double, double>> samples,
                          std::span<const std::pair<double, double>> equality_samples = {},
                          double tol = 1e-8);

}  // namespace purecd
