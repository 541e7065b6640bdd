#include "purecd/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace purecd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// max over t in [lo, hi] of slope * t - fun_coord(t). The objective is
// concave, so the max sits at an endpoint, a stationary point, or a kink;
// all candidates are enumerated per kind.
double sup_linear_minus(const SeparableFunction& fun, Index coord, double slope,
                        double lo, double hi) {
  std::array<double, 4> cand{lo, hi, lo, lo};
  std::size_t count = 2;
  switch (fun.kind()) {
    case FunKind::zero:
    case FunKind::linear_conjugate:
      break;
    case FunKind::l1:
      cand[count++] = 0.0;
      break;
    case FunKind::sq_l2:
      if (fun.lambda() > 0.0) cand[count++] = slope / fun.lambda();
      break;
    case FunKind::ls_conjugate:
      cand[count++] = slope - fun.offsets()[coord];
      break;
    case FunKind::box_indicator: {
      const double l = std::max(lo, fun.lo());
      const double h = std::min(hi, fun.hi());
      if (l > h) return -kInf;
      cand = {l, h, l, l};
      count = 2;
      break;
    }
  }
  double best = -kInf;
  for (std::size_t t = 0; t < count; ++t) {
    const double u = std::clamp(cand[t], lo, hi);
    const double v = slope * u - fun.value(coord, u);
    best = std::max(best, v);
  }
  return best;
}

double separable_value(const SeparableFunction& fun, std::span<const double> u) {
  double s = 0.0;
  for (Index i = 0; i < fun.dim(); ++i) s += fun.value(i, u[i]);
  return s;
}

}  // namespace

double objective(const ProblemSpec& problem, std::span<const double> x) {
  return objective(problem, x, problem.a.matvec(x));
}

double objective(const ProblemSpec& problem, std::span<const double> x,
                 std::span<const double> ax) {
  if (static_cast<Index>(x.size()) != problem.primal_dim() ||
      static_cast<Index>(ax.size()) != problem.dual_dim())
    throw std::invalid_argument("metrics: objective input has wrong length");
  double s = problem.smooth_value(x) + separable_value(problem.g, x);
  for (Index j = 0; j < problem.dual_dim(); ++j)
    s += problem.hstar.conjugate_value(j, ax[j]);
  return s;
}

double partial_objective(const ProblemSpec& problem, std::span<const double> x) {
  if (static_cast<Index>(x.size()) != problem.primal_dim())
    throw std::invalid_argument("metrics: objective input has wrong length");
  return problem.smooth_value(x) + separable_value(problem.g, x);
}

double restricted_gap(const ProblemSpec& problem, std::span<const double> xbar,
                      std::span<const double> ybar, const Reference& ref,
                      double radius) {
  if (problem.f)
    throw std::invalid_argument("metrics: restricted gap needs a problem with no smooth term");
  if (!(radius > 0.0)) throw std::invalid_argument("metrics: gap radius must be > 0");
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();
  if (static_cast<Index>(xbar.size()) != n || static_cast<Index>(ybar.size()) != m ||
      static_cast<Index>(ref.x.size()) != n || static_cast<Index>(ref.y.size()) != m)
    throw std::invalid_argument("metrics: restricted gap input has wrong length");

  double gap = separable_value(problem.g, xbar) + separable_value(problem.hstar, ybar);

  const std::vector<double> ax = problem.a.matvec(xbar);
  for (Index j = 0; j < m; ++j)
    gap += sup_linear_minus(problem.hstar, j, ax[j], ref.y[j] - radius, ref.y[j] + radius);

  const std::vector<double> aty = problem.a.matvec_transpose(ybar);
  for (Index i = 0; i < n; ++i)
    gap += sup_linear_minus(problem.g, i, -aty[i], ref.x[i] - radius, ref.x[i] + radius);

  return gap;
}

double kkt_residual(const ProblemSpec& problem, std::span<const double> x,
                    std::span<const double> y) {
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();
  if (static_cast<Index>(x.size()) != n || static_cast<Index>(y.size()) != m)
    throw std::invalid_argument("metrics: kkt input has wrong length");

  const std::vector<double> aty = problem.a.matvec_transpose(y);
  const std::vector<double> ax = problem.a.matvec(x);
  double sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double r = x[i] - problem.g.prox(i, 1.0, x[i] - (problem.grad_coord(x, i) + aty[i]));
    sq += r * r;
  }
  for (Index j = 0; j < m; ++j) {
    const double r = y[j] - problem.hstar.prox(j, 1.0, y[j] + ax[j]);
    sq += r * r;
  }
  return std::sqrt(sq);
}

double distance_to(std::span<const double> x, std::span<const double> ref,
                   std::span<const double> weights) {
  if (x.size() != ref.size())
    throw std::invalid_argument("metrics: distance inputs have different lengths");
  if (!weights.empty() && weights.size() != x.size())
    throw std::invalid_argument("metrics: weight vector has wrong length");
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - ref[i];
    sq += (weights.empty() ? 1.0 : weights[i]) * d * d;
  }
  return std::sqrt(sq);
}

double weighted_distance(std::span<const double> x, std::span<const double> y,
                         const Reference& ref, const SamplingLaw& law,
                         const StepSizes& steps) {
  if (x.size() != ref.x.size() || y.size() != ref.y.size())
    throw std::invalid_argument("metrics: distance inputs have different lengths");
  const double half_pmin = 0.5 * law.p_min();
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - ref.x[i];
    sq += half_pmin * d * d / (steps.tau[i] * law.p()[i]);
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double d = y[j] - ref.y[j];
    sq += half_pmin * d * d / (steps.sigma[j] * law.pi()[j]);
  }
  return std::sqrt(sq);
}

double feasibility(const ProblemSpec& problem, std::span<const double> x) {
  return feasibility_from_product(problem, problem.a.matvec(x));
}

double feasibility_from_product(const ProblemSpec& problem, std::span<const double> ax) {
  auto b = problem.offsets();
  if (b.empty()) return 0.0;
  if (ax.size() != b.size())
    throw std::invalid_argument("metrics: feasibility input has wrong length");
  double sq = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double d = ax[j] - b[j];
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace purecd
