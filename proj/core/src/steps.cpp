#include "purecd/steps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace purecd {

StepSizes heuristic_steps(const SparseMatrix& a, const SamplingLaw& law, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("steps: gamma must lie in (0, 1)");
  if (law.dim() != a.cols())
    throw std::invalid_argument("steps: sampling law does not match the matrix");

  double max_norm_sq = 0.0;
  for (double s : a.col_sq_norms()) max_norm_sq = std::max(max_norm_sq, s);
  if (!(max_norm_sq > 0.0)) throw std::invalid_argument("steps: matrix has no nonzeros");
  const double big_m = std::sqrt(max_norm_sq);

  StepSizes s;
  s.gamma = gamma;
  s.sigma.resize(static_cast<std::size_t>(a.rows()));
  for (Index j = 0; j < a.rows(); ++j) s.sigma[j] = 1.0 / (law.theta()[j] * big_m);
  s.tau.resize(static_cast<std::size_t>(a.cols()));
  for (Index i = 0; i < a.cols(); ++i) {
    const double norm_sq = a.col_sq_norms()[i];
    if (!(norm_sq > 0.0))
      throw std::invalid_argument("steps: column " + std::to_string(i) +
                                  " is zero; preprocess the matrix first");
    s.tau[i] = gamma * big_m / norm_sq;
  }
  return s;
}

std::vector<double> tau_bounds(const ProblemSpec& problem, const SamplingLaw& law,
                               std::span<const double> sigma) {
  const SparseMatrix& a = problem.a;
  if (law.dim() != a.cols())
    throw std::invalid_argument("steps: sampling law does not match the matrix");
  if (static_cast<Index>(sigma.size()) != a.rows())
    throw std::invalid_argument("steps: sigma must have one entry per row");

  const double p_min = law.p_min();
  std::vector<double> bounds(static_cast<std::size_t>(a.cols()));
  for (Index i = 0; i < a.cols(); ++i) {
    const double p_i = law.p()[i];
    double coupling = 0.0;
    auto rows = a.col_rows(i);
    auto vals = a.col_vals(i);
    for (std::size_t t = 0; t < rows.size(); ++t)
      coupling += law.pi()[rows[t]] * sigma[rows[t]] * vals[t] * vals[t];
    const double denom = problem.beta(i) * p_i + (1.0 / p_min) * p_i * coupling;
    bounds[i] = denom > 0.0 ? (2.0 * p_i - p_min) / denom
                            : std::numeric_limits<double>::infinity();
  }
  return bounds;
}

StepCheck check_steps(const ProblemSpec& problem, const SamplingLaw& law,
                      const StepSizes& steps) {
  if (static_cast<Index>(steps.tau.size()) != problem.a.cols())
    throw std::invalid_argument("steps: tau must have one entry per column");
  for (double t : steps.tau)
    if (!(t > 0.0)) throw std::invalid_argument("steps: tau entries must be > 0");
  for (double s : steps.sigma)
    if (!(s > 0.0)) throw std::invalid_argument("steps: sigma entries must be > 0");

  StepCheck check;
  check.bounds = tau_bounds(problem, law, steps.sigma);
  check.slack.resize(check.bounds.size());
  check.admissible = true;
  double worst = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < static_cast<Index>(check.bounds.size()); ++i) {
    check.slack[i] = check.bounds[i] - steps.tau[i];
    if (!(steps.tau[i] < check.bounds[i])) check.admissible = false;
    const double rel = std::isinf(check.bounds[i])
                           ? std::numeric_limits<double>::infinity()
                           : check.slack[i] / check.bounds[i];
    if (rel < worst) {
      worst = rel;
      check.tightest = i;
    }
  }
  check.min_relative_slack = worst;
  return check;
}

}  // namespace purecd
