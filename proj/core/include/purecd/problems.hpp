#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "purecd/metrics.hpp"
#include "purecd/problem.hpp"

namespace purecd {

// lambda ||x||_1 + (1/2) ||A x - b||^2, posed with the quadratic on the dual side.
ProblemSpec make_lasso(SparseMatrix a, std::vector<double> b, double lambda);

// (lambda/2) ||x||^2 + (1/2) ||A x - b||^2.
ProblemSpec make_ridge(SparseMatrix a, std::vector<double> b, double lambda);

// min g(x) subject to A x = b.
ProblemSpec make_linconstrained(SparseMatrix a, std::vector<double> b, SeparableFunction g);

struct ReferenceResult {
  Reference reference;
  double kkt_residual = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;
};

// High-accuracy anchor computed by the deterministic full-step method with
// tau = sigma = 0.9 / ||A||, iterated until the prox fixed-point residual
// drops below tol. A warm start that already satisfies the tolerance returns
// immediately. Non-convergence within the budget is reported, not thrown.
ReferenceResult reference_solution(const ProblemSpec& problem, double tol = 1e-10,
                                   std::int64_t max_iters = 1000000,
                                   std::span<const double> x0 = {},
                                   std::span<const double> y0 = {});

}  // namespace purecd
