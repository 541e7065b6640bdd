#include "purecd/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace purecd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_law_and_steps(const ProblemSpec& problem, const SamplingLaw& law,
                         const StepSizes& steps) {
  if (law.dim() != problem.primal_dim())
    throw std::invalid_argument("solver: sampling law does not match the problem");
  if (static_cast<Index>(steps.tau.size()) != problem.primal_dim() ||
      static_cast<Index>(steps.sigma.size()) != problem.dual_dim())
    throw std::invalid_argument("solver: step sizes do not match the problem");
}

// The dual average starts from the full first bar vector, so the first step
// materializes it once; afterwards only touched rows are ever written.
void init_dual_bar(const ProblemSpec& problem, const StepSizes& steps, SolverState& s) {
  if (!s.ybar_last.empty()) return;
  const Index m = problem.dual_dim();
  s.ybar_last.resize(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j)
    s.ybar_last[j] = problem.hstar.prox(j, steps.sigma[j], s.y[j] + steps.sigma[j] * s.a[j]);
}

}  // namespace

SolverState make_state(const ProblemSpec& problem, std::span<const double> x0,
                       std::span<const double> y0) {
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();
  if (!x0.empty() && static_cast<Index>(x0.size()) != n)
    throw std::invalid_argument("solver: x0 has wrong length");
  if (!y0.empty() && static_cast<Index>(y0.size()) != m)
    throw std::invalid_argument("solver: y0 has wrong length");

  SolverState s;
  s.x.assign(static_cast<std::size_t>(n), 0.0);
  s.y.assign(static_cast<std::size_t>(m), 0.0);
  if (!x0.empty()) s.x.assign(x0.begin(), x0.end());
  if (!y0.empty()) s.y.assign(y0.begin(), y0.end());
  s.a = problem.a.matvec(s.x);
  s.sum_x.assign(static_cast<std::size_t>(n), 0.0);
  s.sum_y.assign(static_cast<std::size_t>(m), 0.0);
  s.last_x.assign(static_cast<std::size_t>(n), 0);
  s.last_y.assign(static_cast<std::size_t>(m), 0);
  return s;
}

void step(const ProblemSpec& problem, const SamplingLaw& law, const StepSizes& steps,
          SolverState& s, Rng& rng) {
  check_law_and_steps(problem, law, steps);
  init_dual_bar(problem, steps, s);

  const Index i = law.draw(rng);
  const auto rows = problem.a.col_rows(i);
  const auto vals = problem.a.col_vals(i);
  if (s.scratch.size() < rows.size()) s.scratch.resize(rows.size());

  double coupling = 0.0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Index j = rows[t];
    const double bar =
        problem.hstar.prox(j, steps.sigma[j], s.y[j] + steps.sigma[j] * s.a[j]);
    s.scratch[t] = bar;
    coupling += vals[t] * bar;
  }

  const double grad = problem.grad_coord(s.x, i);
  const double xbar = problem.g.prox(i, steps.tau[i], s.x[i] - steps.tau[i] * (grad + coupling));
  const double delta = xbar - s.x[i];

  s.sum_x[i] += s.x[i] * static_cast<double>(s.k - s.last_x[i]);
  s.last_x[i] = s.k;
  s.x[i] = xbar;

  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Index j = rows[t];
    s.sum_y[j] += s.ybar_last[j] * static_cast<double>(s.k - s.last_y[j]);
    s.last_y[j] = s.k;
    const double bar = s.scratch[t];
    s.a[j] += delta * vals[t];
    s.y[j] = bar + steps.sigma[j] * law.theta()[j] * delta * vals[t];
    s.ybar_last[j] = bar;
  }

  s.k += 1;
  s.touched += static_cast<std::int64_t>(rows.size());
}

void naive_step(const ProblemSpec& problem, const SamplingLaw& law, const StepSizes& steps,
                SolverState& s, Rng& rng) {
  check_law_and_steps(problem, law, steps);
  const Index n = problem.primal_dim();
  const Index m = problem.dual_dim();

  const std::vector<double> ax = problem.a.matvec(s.x);
  std::vector<double> ybar(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j)
    ybar[j] = problem.hstar.prox(j, steps.sigma[j], s.y[j] + steps.sigma[j] * ax[j]);
  if (s.k == 0) s.ybar_last = ybar;

  const std::vector<double> aty = problem.a.matvec_transpose(ybar);
  std::vector<double> xbar(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    xbar[i] = problem.g.prox(i, steps.tau[i],
                             s.x[i] - steps.tau[i] * (problem.grad_coord(s.x, i) + aty[i]));

  const Index i = law.draw(rng);
  const double delta = xbar[i] - s.x[i];

  s.sum_x[i] += s.x[i] * static_cast<double>(s.k - s.last_x[i]);
  s.last_x[i] = s.k;
  s.x[i] = xbar[i];

  std::vector<double> diff(static_cast<std::size_t>(n), 0.0);
  diff[i] = delta;
  const std::vector<double> ad = problem.a.matvec(diff);
  for (Index j : problem.a.col_rows(i)) {
    s.sum_y[j] += s.ybar_last[j] * static_cast<double>(s.k - s.last_y[j]);
    s.last_y[j] = s.k;
    s.y[j] = ybar[j] + steps.sigma[j] * law.theta()[j] * ad[j];
    s.ybar_last[j] = ybar[j];
  }

  s.a = problem.a.matvec(s.x);
  s.k += 1;
  s.touched += problem.a.col_nnz(i);
}

std::pair<std::vector<double>, std::vector<double>> averages(const SolverState& s) {
  if (s.k == 0) return {s.x, s.y};
  const double inv_k = 1.0 / static_cast<double>(s.k);
  std::vector<double> x_av(s.x.size());
  std::vector<double> y_av(s.y.size());
  for (std::size_t i = 0; i < s.x.size(); ++i)
    x_av[i] = (s.sum_x[i] + s.x[i] * static_cast<double>(s.k - s.last_x[i])) * inv_k;
  for (std::size_t j = 0; j < s.y.size(); ++j)
    y_av[j] = (s.sum_y[j] + s.ybar_last[j] * static_cast<double>(s.k - s.last_y[j])) * inv_k;
  return {std::move(x_av), std::move(y_av)};
}

namespace {

TraceRow checkpoint_row(const ProblemSpec& problem, const SamplingLaw& law,
                        const StepSizes& steps, const RunOptions& opts,
                        const SolverState& s, double wall_ms) {
  TraceRow row;
  row.iteration = s.k;
  row.touched = s.touched;
  row.epochs = problem.a.nnz() > 0
                   ? static_cast<double>(s.touched) / static_cast<double>(problem.a.nnz())
                   : 0.0;
  row.wall_ms = wall_ms;

  const std::vector<double> ax = problem.a.matvec(s.x);
  row.objective = objective(problem, s.x, ax);

  std::vector<double> x_eval = s.x;
  std::vector<double> y_eval = s.y;
  if (opts.averaging && s.k > 0) {
    auto [x_av, y_av] = averages(s);
    x_eval = std::move(x_av);
    y_eval = std::move(y_av);
  }
  row.feasibility = opts.averaging && s.k > 0 ? feasibility(problem, x_eval)
                                              : feasibility_from_product(problem, ax);

  const Reference* ref = opts.reference;
  if (ref != nullptr) {
    if (problem.hstar.kind() == FunKind::linear_conjugate)
      row.suboptimality = partial_objective(problem, s.x) - partial_objective(problem, ref->x);
    else
      row.suboptimality = row.objective - ref->objective;
    row.gap = problem.f ? kNaN : restricted_gap(problem, x_eval, y_eval, *ref, opts.gap_radius);
    double sq = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double d = s.x[i] - ref->x[i];
      sq += d * d;
    }
    for (std::size_t j = 0; j < s.y.size(); ++j) {
      const double d = s.y[j] - ref->y[j];
      sq += d * d;
    }
    row.dist_plain = std::sqrt(sq);
    row.dist_weighted = weighted_distance(s.x, s.y, *ref, law, steps);
  } else {
    row.suboptimality = kNaN;
    row.gap = kNaN;
    row.dist_plain = kNaN;
    row.dist_weighted = kNaN;
  }
  return row;
}

}  // namespace

RunResult run(const ProblemSpec& problem, const SamplingLaw& law, const StepSizes& steps,
              const RunOptions& opts) {
  if (opts.iterations <= 0 && !(opts.epochs > 0.0))
    throw std::invalid_argument("run: iteration or epoch budget must be positive");
  if (opts.iterations > 0 && opts.epochs > 0.0)
    throw std::invalid_argument("run: choose one budget, iterations or epochs");
  if (opts.reference != nullptr &&
      (static_cast<Index>(opts.reference->x.size()) != problem.primal_dim() ||
       static_cast<Index>(opts.reference->y.size()) != problem.dual_dim()))
    throw std::invalid_argument("run: reference has wrong dimensions");

  RunResult result;
  result.step_check = check_steps(problem, law, steps);
  if (!result.step_check.admissible && !opts.override_step_check)
    throw StepCheckError(
        "run: step sizes violate the admissibility bound (tightest coordinate " +
            std::to_string(result.step_check.tightest) +
            "); shrink tau or pass the override flag",
        result.step_check);

  const std::int64_t max_iters =
      opts.iterations > 0 ? opts.iterations : std::numeric_limits<std::int64_t>::max();
  std::int64_t target_touched = std::numeric_limits<std::int64_t>::max();
  std::int64_t cadence = opts.checkpoint_every;
  if (opts.epochs > 0.0) {
    target_touched = static_cast<std::int64_t>(
        std::ceil(opts.epochs * static_cast<double>(problem.a.nnz())));
    if (cadence <= 0) {
      double expected_touch = 0.0;
      for (Index i = 0; i < problem.primal_dim(); ++i)
        expected_touch += law.p()[i] * static_cast<double>(problem.a.col_nnz(i));
      const double est_iters =
          expected_touch > 0.0 ? static_cast<double>(target_touched) / expected_touch : 1.0;
      cadence = std::max<std::int64_t>(1, static_cast<std::int64_t>(est_iters / 100.0));
    }
  } else if (cadence <= 0) {
    cadence = std::max<std::int64_t>(1, max_iters / 100);
  }

  SolverState state = make_state(problem, opts.x0, opts.y0);
  Rng rng(opts.seed);

  const auto t0 = std::chrono::steady_clock::now();
  auto wall_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  result.trace.rows.push_back(checkpoint_row(problem, law, steps, opts, state, wall_ms()));

  while (state.k < max_iters && state.touched < target_touched) {
    step(problem, law, steps, state, rng);
    const bool budget_done = state.k >= max_iters || state.touched >= target_touched;
    if (state.k % cadence == 0 || budget_done) {
      TraceRow row = checkpoint_row(problem, law, steps, opts, state, wall_ms());
      result.trace.rows.push_back(row);
      if (opts.reference != nullptr) {
        if (opts.target_suboptimality > 0.0 &&
            row.suboptimality <= opts.target_suboptimality) {
          result.stopped_early = true;
          break;
        }
        if (opts.target_weighted_distance > 0.0 &&
            row.dist_weighted <= opts.target_weighted_distance) {
          result.stopped_early = true;
          break;
        }
      }
    }
  }

  if (result.trace.rows.back().iteration != state.k)
    result.trace.rows.push_back(checkpoint_row(problem, law, steps, opts, state, wall_ms()));

  auto [x_av, y_av] = averages(state);
  result.x = std::move(state.x);
  result.y = std::move(state.y);
  if (opts.averaging) {
    result.x_av = std::move(x_av);
    result.y_av = std::move(y_av);
  } else {
    result.x_av = result.x;
    result.y_av = result.y;
  }
  result.iterations = state.k;
  result.touched = state.touched;
  return result;
}

}  // namespace purecd
