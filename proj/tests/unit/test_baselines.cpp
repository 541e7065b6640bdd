#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "purecd/baselines.hpp"
#include "purecd/metrics.hpp"
#include "purecd/problems.hpp"
#include "purecd/sampling.hpp"
#include "purecd/solver.hpp"
#include "purecd/steps.hpp"
#include "test_util.hpp"

using purecd::BaselineState;
using purecd::Index;
using purecd::ProblemSpec;
using purecd::Rng;
using purecd::SamplingLaw;
using purecd::SeparableFunction;
using purecd::SparseMatrix;
using purecd::StepSizes;
using purecd::Triplet;

namespace {

// scalar least squares min_x (1/2)(2x - 2)^2 posed through h* with offset 2
ProblemSpec scalar_problem() {
  const SparseMatrix a =
      SparseMatrix::from_triplets(1, 1, std::vector<Triplet>{{0, 0, 2.0}});
  return ProblemSpec(a, SeparableFunction::zero(1),
                     SeparableFunction::ls_conjugate(std::vector<double>{2.0}));
}

double inf_norm_diff(const std::vector<double>& u, const std::vector<double>& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(u[i] - v[i]));
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("baselines");

TEST_CASE("full-step scalar hand trace") {
  // tau = sigma = 0.2 from the origin:
  //   k=1: x = 0, y = (0 - 0.4) / 1.2 = -1/3
  //   k=2: x = 2/15, y = ((-1/3 + 8/75) - 0.4) / 1.2 = -47/90
  const ProblemSpec problem = scalar_problem();
  BaselineState s = purecd::make_baseline_state(problem);
  purecd::vu_condat_step(problem, 0.2, 0.2, s);
  CHECK(s.x[0] == 0.0);
  CHECK(s.y[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  purecd::vu_condat_step(problem, 0.2, 0.2, s);
  CHECK(s.x[0] == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
  CHECK(s.y[0] == doctest::Approx(-47.0 / 90.0).epsilon(1e-13));
  CHECK(s.k == 2);
}

TEST_CASE("full-step method holds a saddle point") {
  const ProblemSpec problem = scalar_problem();
  BaselineState s = purecd::make_baseline_state(problem, std::vector<double>{1.0},
                                                std::vector<double>{0.0});
  for (int t = 0; t < 100; ++t) purecd::vu_condat_step(problem, 0.2, 0.2, s);
  CHECK(s.x[0] == 1.0);
  CHECK(s.y[0] == 0.0);
}

TEST_CASE("block method holds a saddle point") {
  const ProblemSpec problem = scalar_problem();
  const SamplingLaw law = SamplingLaw::uniform(problem.a);
  BaselineState s = purecd::make_baseline_state(problem, std::vector<double>{1.0},
                                                std::vector<double>{0.0});
  Rng rng(2);
  for (int t = 0; t < 100; ++t) purecd::tripd_bc_step(problem, law, 0.2, 0.2, s, rng);
  CHECK(s.x[0] == 1.0);
  CHECK(s.y[0] == 0.0);
}

TEST_CASE("full-step method reaches the reference on a small problem") {
  const std::vector<Triplet> entries{{0, 0, 1.0}, {1, 1, 0.8}};
  const SparseMatrix a = SparseMatrix::from_triplets(2, 2, entries);
  const ProblemSpec problem = purecd::make_lasso(a, std::vector<double>{1.0, -0.5}, 0.1);
  const auto ref = purecd::reference_solution(problem, 1e-10);
  REQUIRE(ref.converged);

  const auto [tau, sigma] = purecd::baseline_steps(problem.a);
  BaselineState s = purecd::make_baseline_state(problem);
  for (int t = 0; t < 200; ++t) purecd::vu_condat_step(problem, tau, sigma, s);
  const double obj = purecd::objective(problem, s.x);
  CHECK(obj - ref.reference.objective <= 1e-6);
  CHECK(obj - ref.reference.objective >= -1e-9);
}

TEST_CASE("block method with one primal coordinate equals the sparse solver") {
  Rng setup(71);
  std::vector<Triplet> entries;
  for (Index j = 0; j < 5; ++j) {
    const double mag = 0.3 + setup.next_double();
    entries.push_back({j, 0, setup.next_below(2) == 0 ? mag : -mag});
  }
  const SparseMatrix a = SparseMatrix::from_triplets(5, 1, entries);
  std::vector<double> b = testutil::random_vec(setup, 5, -1.0, 1.0);
  const ProblemSpec problem(a, SeparableFunction::l1(1, 0.3),
                            SeparableFunction::ls_conjugate(b));
  const SamplingLaw law = SamplingLaw::uniform(a);
  const double tau = 0.05;
  const double sigma = 0.4;

  BaselineState block = purecd::make_baseline_state(problem);
  purecd::SolverState sparse = purecd::make_state(problem);
  const StepSizes steps{std::vector<double>{tau}, std::vector<double>(5, sigma), 0.0};
  Rng r1(123), r2(123);
  for (int t = 0; t < 300; ++t) {
    purecd::tripd_bc_step(problem, law, tau, sigma, block, r1);
    purecd::step(problem, law, steps, sparse, r2);
    REQUIRE(inf_norm_diff(block.x, sparse.x) <= 1e-12);
    REQUIRE(inf_norm_diff(block.y, sparse.y) <= 1e-12);
  }
}

TEST_CASE("block method converges on a small problem") {
  Rng setup(73);
  const SparseMatrix a = testutil::random_sparse(setup, 6, 4, 0.6);
  std::vector<double> b = testutil::random_vec(setup, 6, -1.0, 1.0);
  const ProblemSpec problem = purecd::make_lasso(a, b, 0.1);
  const auto ref = purecd::reference_solution(problem, 1e-10);
  REQUIRE(ref.converged);

  const SamplingLaw law = SamplingLaw::uniform(problem.a);
  const auto [tau, sigma] = purecd::baseline_steps(problem.a);
  BaselineState s = purecd::make_baseline_state(problem);
  Rng rng(17);
  for (int t = 0; t < 10000; ++t) purecd::tripd_bc_step(problem, law, tau, sigma, s, rng);
  CHECK(purecd::objective(problem, s.x) - ref.reference.objective <= 1e-4);
}

TEST_CASE("operator norm on known matrices") {
  const SparseMatrix diag =
      SparseMatrix::from_triplets(2, 2, std::vector<Triplet>{{0, 0, 3.0}, {1, 1, 1.0}});
  CHECK(purecd::operator_norm(diag) == doctest::Approx(3.0).epsilon(1e-5));

  const SparseMatrix scalar =
      SparseMatrix::from_triplets(1, 1, std::vector<Triplet>{{0, 0, -7.0}});
  CHECK(purecd::operator_norm(scalar) == doctest::Approx(7.0).epsilon(1e-12));

  const SparseMatrix zero = SparseMatrix::from_triplets(2, 2, std::vector<Triplet>{});
  CHECK(purecd::operator_norm(zero) == 0.0);
}

TEST_CASE("operator norm agrees with a long power iteration") {
  Rng rng(79);
  const SparseMatrix a = testutil::random_sparse(rng, 8, 6, 0.5);
  const double fast = purecd::operator_norm(a);
  const double slow = purecd::operator_norm(a, 5000, 1e-14);
  CHECK(fast == doctest::Approx(slow).epsilon(1e-3));
  // a singular value is bounded by the Frobenius norm
  double frob_sq = 0.0;
  for (double sq : a.col_sq_norms()) frob_sq += sq;
  CHECK(slow <= std::sqrt(frob_sq) * (1.0 + 1e-12));
  double max_col = 0.0;
  for (double sq : a.col_sq_norms()) max_col = std::max(max_col, sq);
  CHECK(slow >= std::sqrt(max_col) * (1.0 - 1e-6));
}

TEST_CASE("default baseline steps scale with the operator norm") {
  Rng rng(83);
  const SparseMatrix a = testutil::random_sparse(rng, 7, 5, 0.5);
  const auto [tau, sigma] = purecd::baseline_steps(a);
  CHECK(tau == sigma);
  const double norm = purecd::operator_norm(a);
  CHECK(tau == doctest::Approx(0.9 / norm).epsilon(1e-15));
  CHECK(tau * sigma * norm * norm == doctest::Approx(0.81).epsilon(1e-12));
}

TEST_CASE("full-step iterates contract in the primal-dual metric") {
  // with f = 0 and tau sigma ||A||^2 < 1 the distance
  //   ||dx||^2 / tau - 2 <A dx, dy> + ||dy||^2 / sigma
  // to the saddle point never increases
  Rng setup(89);
  const SparseMatrix a = testutil::random_sparse(setup, 7, 5, 0.6);
  std::vector<double> b = testutil::random_vec(setup, 7, -1.0, 1.0);
  const ProblemSpec problem = purecd::make_lasso(a, b, 0.05);
  const auto ref = purecd::reference_solution(problem, 1e-11);
  REQUIRE(ref.converged);

  const auto [tau, sigma] = purecd::baseline_steps(problem.a);
  auto metric = [&](const BaselineState& s) {
    std::vector<double> dx(s.x.size());
    std::vector<double> dy(s.y.size());
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = s.x[i] - ref.reference.x[i];
    for (std::size_t j = 0; j < dy.size(); ++j) dy[j] = s.y[j] - ref.reference.y[j];
    const auto adx = problem.a.matvec(dx);
    double v = 0.0;
    for (double d : dx) v += d * d / tau;
    for (double d : dy) v += d * d / sigma;
    for (std::size_t j = 0; j < dy.size(); ++j) v -= 2.0 * adx[j] * dy[j];
    return v;
  };

  BaselineState s = purecd::make_baseline_state(problem);
  double prev = metric(s);
  const double slack = 1e-12 * (1.0 + prev);
  for (int t = 0; t < 100; ++t) {
    purecd::vu_condat_step(problem, tau, sigma, s);
    const double cur = metric(s);
    CHECK(cur <= prev + slack);
    prev = cur;
  }
}

TEST_CASE("baseline validation") {
  const ProblemSpec problem = scalar_problem();
  BaselineState s = purecd::make_baseline_state(problem);
  CHECK_THROWS_AS(purecd::vu_condat_step(problem, 0.0, 0.2, s), std::invalid_argument);
  CHECK_THROWS_AS(purecd::vu_condat_step(problem, 0.2, -1.0, s), std::invalid_argument);
  CHECK_THROWS_AS((void)purecd::make_baseline_state(problem, std::vector<double>(2, 0.0)),
                  std::invalid_argument);
  const SparseMatrix zero = SparseMatrix::from_triplets(1, 1, std::vector<Triplet>{});
  CHECK_THROWS_AS((void)purecd::baseline_steps(zero), std::invalid_argument);
}

TEST_SUITE_END();
