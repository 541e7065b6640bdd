#pragma once

#include <span>
#include <vector>

#include "purecd/problem.hpp"
#include "purecd/sampling.hpp"
#include "purecd/steps.hpp"

namespace purecd {

// A solved primal-dual pair used as the anchor for suboptimality, distance,
// and gap-box metrics.
struct Reference {
  std::vector<double> x;
  std::vector<double> y;
  double objective = 0.0;
};

// f(x) + g(x) + h(A x) as an extended real; h is recovered from h*, so an
// indicator-type h is exact (+inf off its set). Overload taking ax skips the
// internal matvec when the product is already known.
double objective(const ProblemSpec& problem, std::span<const double> x);
double objective(const ProblemSpec& problem, std::span<const double> x,
                 std::span<const double> ax);

// Objective without the h term. For equality-constrained problems this is the
// quantity whose gap the ergodic averages control.
double partial_objective(const ProblemSpec& problem, std::span<const double> x);

// Duality gap restricted to the box [ref +- radius] in both blocks, evaluated
// at (xbar, ybar). The inner sup separates per coordinate and each scalar
// piece is maximized in closed form over a candidate set. Requires a problem
// with no smooth term (the decomposition needs every term separable).
double restricted_gap(const ProblemSpec& problem, std::span<const double> xbar,
                      std::span<const double> ybar, const Reference& ref,
                      double radius = 10.0);

// Norm of the fixed-point residual of the prox steps at unit step size:
//   r_x = x - prox_g(x - (grad f(x) + A^T y)),  r_y = y - prox_h*(y + A x).
double kkt_residual(const ProblemSpec& problem, std::span<const double> x,
                    std::span<const double> y);

// sqrt(sum_i w_i (x_i - ref_i)^2); empty weights mean all ones.
double distance_to(std::span<const double> x, std::span<const double> ref,
                   std::span<const double> weights = {});

// Distance in the solver's convergence norm:
//   sqrt( p_min/2 ||x - x*||^2_{1/(tau p)} + p_min/2 ||y - y*||^2_{1/(sigma pi)} ).
double weighted_distance(std::span<const double> x, std::span<const double> y,
                         const Reference& ref, const SamplingLaw& law,
                         const StepSizes& steps);

// ||A x - b|| against the offsets carried by h*; 0 when h* has none.
double feasibility(const ProblemSpec& problem, std::span<const double> x);
double feasibility_from_product(const ProblemSpec& problem, std::span<const double> ax);

}  // namespace purecd
