#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "purecd/problem.hpp"
#include "purecd/rng.hpp"
#include "purecd/sampling.hpp"

namespace purecd {

// Iterates of the deterministic or block-coordinate reference methods. The
// deterministic method keeps its bar-sequence directly in (x, y); the
// random-block method keeps the coordinatewise iterates there.
struct BaselineState {
  std::int64_t k = 0;
  std::vector<double> x;
  std::vector<double> y;
};

BaselineState make_baseline_state(const ProblemSpec& problem,
                                  std::span<const double> x0 = {},
                                  std::span<const double> y0 = {});

// Deterministic full primal-dual iteration with scalar steps:
//   x+ = prox_tau_g(x - tau (grad f(x) + A^T y))
//   y+ = prox_sigma_h*(y + sigma A (2 x+ - x)).
void vu_condat_step(const ProblemSpec& problem, double tau, double sigma,
                    BaselineState& state);

// Random-block triangular primal-dual iteration: full bar computation per
// iteration (its cost limitation), then one primal coordinate and the dual
// rows coupled to it are committed:
//   ybar = prox_sigma_h*(y + sigma A x)
//   xbar = prox_tau_g(x - tau (grad f(x) + A^T ybar))
//   yhat = ybar + sigma A (xbar - x)
//   draw i; keep xbar_i and yhat on the support of column i.
// With a single primal coordinate this coincides with the sparse solver's
// update at theta == 1.
void tripd_bc_step(const ProblemSpec& problem, const SamplingLaw& law, double tau,
                   double sigma, BaselineState& state, Rng& rng);

// Largest singular value of A by power iteration on A^T A: 50 iterations or
// relative change below 1e-6, deterministic start. Zero matrix gives 0.
double operator_norm(const SparseMatrix& a, int max_iters = 50, double tol = 1e-6);

// Scalar steps tau = sigma = 0.9 / ||A|| used for baseline runs.
std::pair<double, double> baseline_steps(const SparseMatrix& a);

}  // namespace purecd
