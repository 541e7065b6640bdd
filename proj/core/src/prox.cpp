#include "purecd/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace purecd {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SeparableFunction SeparableFunction::zero(Index dim) {
  if (dim < 0) throw std::invalid_argument("prox: negative dimension");
  return SeparableFunction(FunKind::zero, dim);
}

SeparableFunction SeparableFunction::l1(Index dim, double lambda) {
  if (dim < 0) throw std::invalid_argument("prox: negative dimension");
  if (!(lambda >= 0.0)) throw std::invalid_argument("prox: l1 weight must be >= 0");
  SeparableFunction f(FunKind::l1, dim);
  f.lambda_ = lambda;
  return f;
}

SeparableFunction SeparableFunction::sq_l2(Index dim, double lambda) {
  if (dim < 0) throw std::invalid_argument("prox: negative dimension");
  if (!(lambda >= 0.0)) throw std::invalid_argument("prox: sq_l2 weight must be >= 0");
  SeparableFunction f(FunKind::sq_l2, dim);
  f.lambda_ = lambda;
  return f;
}

SeparableFunction SeparableFunction::ls_conjugate(std::vector<double> offsets) {
  SeparableFunction f(FunKind::ls_conjugate, static_cast<Index>(offsets.size()));
  f.offsets_ = std::move(offsets);
  return f;
}

SeparableFunction SeparableFunction::linear_conjugate(std::vector<double> offsets) {
  SeparableFunction f(FunKind::linear_conjugate, static_cast<Index>(offsets.size()));
  f.offsets_ = std::move(offsets);
  return f;
}

SeparableFunction SeparableFunction::box_indicator(Index dim, double lo, double hi) {
  if (dim < 0) throw std::invalid_argument("prox: negative dimension");
  if (std::isnan(lo) || std::isnan(hi) || !(lo <= hi))
    throw std::invalid_argument("prox: box bounds must satisfy lo <= hi");
  SeparableFunction f(FunKind::box_indicator, dim);
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

void SeparableFunction::check_coord(Index coord) const {
  if (coord < 0 || coord >= dim_) throw std::out_of_range("prox: coordinate out of range");
}

double SeparableFunction::prox(Index coord, double gamma, double v) const {
  check_coord(coord);
  if (!(gamma > 0.0)) throw std::invalid_argument("prox: step must be > 0");
  switch (kind_) {
    case FunKind::zero:
      return v;
    case FunKind::l1:
      return std::copysign(std::max(std::abs(v) - gamma * lambda_, 0.0), v);
    case FunKind::sq_l2:
      return v / (1.0 + gamma * lambda_);
    case FunKind::ls_conjugate:
      return (v - gamma * offsets_[coord]) / (1.0 + gamma);
    case FunKind::linear_conjugate:
      return v - gamma * offsets_[coord];
    case FunKind::box_indicator:
      if (std::isnan(v)) throw std::invalid_argument("prox: NaN input to projection");
      return std::clamp(v, lo_, hi_);
  }
  throw std::logic_error("prox: unknown kind");
}

double SeparableFunction::value(Index coord, double u) const {
  check_coord(coord);
  switch (kind_) {
    case FunKind::zero:
      return 0.0;
    case FunKind::l1:
      return lambda_ * std::abs(u);
    case FunKind::sq_l2:
      return 0.5 * lambda_ * u * u;
    case FunKind::ls_conjugate:
      return 0.5 * u * u + offsets_[coord] * u;
    case FunKind::linear_conjugate:
      return offsets_[coord] * u;
    case FunKind::box_indicator:
      if (std::isnan(u)) throw std::invalid_argument("prox: NaN input to indicator");
      return (u < lo_ || u > hi_) ? kInf : 0.0;
  }
  throw std::logic_error("prox: unknown kind");
}

double SeparableFunction::conjugate_value(Index coord, double z) const {
  check_coord(coord);
  switch (kind_) {
    case FunKind::zero:
      return z == 0.0 ? 0.0 : kInf;
    case FunKind::l1:
      return std::abs(z) <= lambda_ ? 0.0 : kInf;
    case FunKind::sq_l2:
      if (lambda_ == 0.0) return z == 0.0 ? 0.0 : kInf;
      return 0.5 * z * z / lambda_;
    case FunKind::ls_conjugate: {
      const double d = z - offsets_[coord];
      return 0.5 * d * d;
    }
    case FunKind::linear_conjugate:
      return z == offsets_[coord] ? 0.0 : kInf;
    case FunKind::box_indicator:
      return std::max(z * lo_, z * hi_);
  }
  throw std::logic_error("prox: unknown kind");
}

bool conjugate_pair_check(const std::function<double(double)>& h,
                          const std::function<double(double)>& h_conj,
                          std::span<const std::pair<double, double>> samples,
                          std::span<const std::pair<double, double>> equality_samples,
                          double tol) {
  for (const auto& [t, y] : samples) {
    const double gap = h(t) + h_conj(y) - t * y;
    if (std::isnan(gap) || gap < -tol) return false;
  }
  for (const auto& [t, y] : equality_samples) {
    const double gap = h(t) + h_conj(y) - t * y;
    if (!(std::abs(gap) <= tol)) return false;
  }
  return true;
}

}  // namespace purecd
