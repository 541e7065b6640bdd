#include "purecd/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace purecd {

BaselineState make_baseline_state(const ProblemSpec& problem, std::span<const double> x0,
                                  std::span<const double> y0) {
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();
  if (!x0.empty() && static_cast<Index>(x0.size()) != n)
    throw std::invalid_argument("baselines: x0 has wrong length");
  if (!y0.empty() && static_cast<Index>(y0.size()) != m)
    throw std::invalid_argument("baselines: y0 has wrong length");
  BaselineState s;
  s.x.assign(static_cast<std::size_t>(n), 0.0);
  s.y.assign(static_cast<std::size_t>(m), 0.0);
  if (!x0.empty()) s.x.assign(x0.begin(), x0.end());
  if (!y0.empty()) s.y.assign(y0.begin(), y0.end());
  return s;
}

void vu_condat_step(const ProblemSpec& problem, double tau, double sigma,
                    BaselineState& s) {
  if (!(tau > 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("baselines: steps must be > 0");
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();

  const std::vector<double> aty = problem.a.matvec_transpose(s.y);
  std::vector<double> x_next(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    x_next[i] =
        problem.g.prox(i, tau, s.x[i] - tau * (problem.grad_coord(s.x, i) + aty[i]));

  std::vector<double> extrapolated(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) extrapolated[i] = 2.0 * x_next[i] - s.x[i];
  const std::vector<double> az = problem.a.matvec(extrapolated);
  for (Index j = 0; j < m; ++j)
    s.y[j] = problem.hstar.prox(j, sigma, s.y[j] + sigma * az[j]);

  s.x = std::move(x_next);
  s.k += 1;
}

void tripd_bc_step(const ProblemSpec& problem, const SamplingLaw& law, double tau,
                   double sigma, BaselineState& s, Rng& rng) {
  if (!(tau > 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("baselines: steps must be > 0");
  if (law.dim() != problem.primal_dim())
    throw std::invalid_argument("baselines: sampling law does not match the problem");
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();

  const std::vector<double> ax = problem.a.matvec(s.x);
  std::vector<double> ybar(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j)
    ybar[j] = problem.hstar.prox(j, sigma, s.y[j] + sigma * ax[j]);

  const std::vector<double> aty = problem.a.matvec_transpose(ybar);
  std::vector<double> xbar(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    xbar[i] =
        problem.g.prox(i, tau, s.x[i] - tau * (problem.grad_coord(s.x, i) + aty[i]));

  const Index i = law.draw(rng);
  const double delta = xbar[i] - s.x[i];
  s.x[i] = xbar[i];
  problem.a.col_gather(i, [&](Index j, double aji) {
    s.y[j] = ybar[j] + sigma * delta * aji;
  });
  s.k += 1;
}

double operator_norm(const SparseMatrix& a, int max_iters, double tol) {
  if (a.nnz() == 0) return 0.0;
  const Index n = a.cols();
  Rng rng(0x9E3779B97F4A7C15ULL);
  std::vector<double> v(static_cast<std::size_t>(n));
  double norm = 0.0;
  for (double& vi : v) {
    vi = rng.next_double() - 0.5;
    norm += vi * vi;
  }
  norm = std::sqrt(norm);
  for (double& vi : v) vi /= norm;

  double value = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const std::vector<double> av = a.matvec(v);
    std::vector<double> w = a.matvec_transpose(av);
    double wnorm = 0.0;
    for (double wi : w) wnorm += wi * wi;
    wnorm = std::sqrt(wnorm);
    if (wnorm == 0.0) return 0.0;
    const double next = std::sqrt(wnorm);  // ||A^T A v|| -> sigma_max^2
    for (std::size_t t = 0; t < w.size(); ++t) v[t] = w[t] / wnorm;
    if (it > 0 && std::abs(next - value) <= tol * std::max(next, 1.0)) {
      value = next;
      break;
    }
    value = next;
  }
  return value;
}

std::pair<double, double> baseline_steps(const SparseMatrix& a) {
  const double norm = operator_norm(a);
  if (!(norm > 0.0)) throw std::invalid_argument("baselines: matrix has no nonzeros");
  const double s = 0.9 / norm;
  return {s, s};
}

}  // namespace purecd
