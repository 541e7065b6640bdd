#include "purecd/problems.hpp"

#include <stdexcept>

#include "purecd/baselines.hpp"

namespace purecd {

namespace {

void check_builder_args(const SparseMatrix& a, const std::vector<double>& b, double lambda) {
  if (static_cast<Index>(b.size()) != a.rows())
    throw std::invalid_argument("problems: b must have one entry per row");
  if (!(lambda > 0.0)) throw std::invalid_argument("problems: lambda must be > 0");
}

}  // namespace

ProblemSpec make_lasso(SparseMatrix a, std::vector<double> b, double lambda) {
  check_builder_args(a, b, lambda);
  const Index n = a.cols();
  return ProblemSpec(std::move(a), SeparableFunction::l1(n, lambda),
                     SeparableFunction::ls_conjugate(std::move(b)));
}

ProblemSpec make_ridge(SparseMatrix a, std::vector<double> b, double lambda) {
  check_builder_args(a, b, lambda);
  const Index n = a.cols();
  return ProblemSpec(std::move(a), SeparableFunction::sq_l2(n, lambda),
                     SeparableFunction::ls_conjugate(std::move(b)));
}

ProblemSpec make_linconstrained(SparseMatrix a, std::vector<double> b, SeparableFunction g) {
  if (static_cast<Index>(b.size()) != a.rows())
    throw std::invalid_argument("problems: b must have one entry per row");
  if (g.dim() != a.cols())
    throw std::invalid_argument("problems: g dimension must match column count");
  return ProblemSpec(std::move(a), std::move(g),
                     SeparableFunction::linear_conjugate(std::move(b)));
}

ReferenceResult reference_solution(const ProblemSpec& problem, double tol,
                                   std::int64_t max_iters, std::span<const double> x0,
                                   std::span<const double> y0) {
  if (!(tol > 0.0)) throw std::invalid_argument("problems: tolerance must be > 0");
  if (max_iters <= 0) throw std::invalid_argument("problems: iteration budget must be > 0");

  BaselineState state = make_baseline_state(problem, x0, y0);
  ReferenceResult out;
  out.kkt_residual = kkt_residual(problem, state.x, state.y);
  out.reference.x = state.x;
  out.reference.y = state.y;
  if (out.kkt_residual < tol) {
    out.converged = true;
    out.reference.objective = objective(problem, out.reference.x);
    return out;
  }

  const auto [tau, sigma] = baseline_steps(problem.a);
  double best = out.kkt_residual;
  for (std::int64_t k = 0; k < max_iters; ++k) {
    vu_condat_step(problem, tau, sigma, state);
    const double res = kkt_residual(problem, state.x, state.y);
    if (res < best) {
      best = res;
      out.reference.x = state.x;
      out.reference.y = state.y;
    }
    if (res < tol) {
      out.converged = true;
      out.iterations = state.k;
      break;
    }
  }
  if (!out.converged) out.iterations = state.k;
  out.kkt_residual = best;
  out.reference.objective = objective(problem, out.reference.x);
  return out;
}

}  // namespace purecd
