#pragma once

#include <span>
#include <vector>

#include "purecd/problem.hpp"
#include "purecd/sampling.hpp"

namespace purecd {

struct StepSizes {
  std::vector<double> tau;    // per primal coordinate
  std::vector<double> sigma;  // per dual coordinate
  double gamma = 0.0;         // safety factor the policy was built with, if any
};

// Row/column-norm policy: with M = max_i ||A_i||, sigma_j = 1 / (theta_j * M)
// and tau_i = gamma * M / ||A_i||^2, 0 < gamma < 1. Under uniform sampling
// this sits a factor gamma inside the admissible region. Zero columns are an
// error (preprocess removes them).
StepSizes heuristic_steps(const SparseMatrix& a, const SamplingLaw& law, double gamma);

// Largest admissible tau_i (exclusive) for the given sigma:
//   (2 p_i - p_min) / (beta_i p_i + p_min^{-1} p_i sum_j pi_j sigma_j A_ji^2).
std::vector<double> tau_bounds(const ProblemSpec& problem, const SamplingLaw& law,
                               std::span<const double> sigma);

struct StepCheck {
  bool admissible = false;
  std::vector<double> bounds;      // per-coordinate exclusive tau bound
  std::vector<double> slack;       // bounds[i] - tau[i]
  Index tightest = -1;             // argmin of relative slack
  double min_relative_slack = 0.0; // slack[tightest] / bounds[tightest]
};

// Strict per-coordinate verification tau_i < bound_i. Every coordinate must
// clear its bound; ties and violations are reported through the slack fields.
StepCheck check_steps(const ProblemSpec& problem, const SamplingLaw& law,
                      const StepSizes& steps);

}  // namespace purecd
