#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "purecd/metrics.hpp"
#include "purecd/problem.hpp"
#include "purecd/rng.hpp"
#include "purecd/sampling.hpp"
#include "purecd/steps.hpp"
#include "purecd/trace.hpp"

namespace purecd {

// Mutable state of one coordinate run. The product cache a == A x is kept
// incrementally. Ergodic sums are lazy: sum_x[i] covers iterations
// 1..last_x[i], and the pending stretch last_x[i]+1..k all saw the current
// x[i], so flushing is O(1) per touch. The dual average tracks the carried
// bar-sequence (the bar-value a row saw at its most recent touch, full first
// iterate as the base case), held in ybar_last.
struct SolverState {
  std::int64_t k = 0;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> a;
  std::vector<double> ybar_last;
  std::vector<double> sum_x;
  std::vector<double> sum_y;
  std::vector<std::int64_t> last_x;
  std::vector<std::int64_t> last_y;
  std::int64_t touched = 0;

  std::vector<double> scratch;  // per-column dual bar values inside step()
};

SolverState make_state(const ProblemSpec& problem, std::span<const double> x0 = {},
                       std::span<const double> y0 = {});

// One iteration in O(|column support|): dual bar values over the support of
// the drawn column, one primal prox, extrapolated dual writes on the same
// support, lazy-average flushes for everything touched.
void step(const ProblemSpec& problem, const SamplingLaw& law, const StepSizes& steps,
          SolverState& state, Rng& rng);

// Same update computed densely (full bar vectors, fresh matvecs, no product
// cache). Mathematically identical transition given the same draw; serves as
// the correctness oracle for step().
void naive_step(const ProblemSpec& problem, const SamplingLaw& law, const StepSizes& steps,
                SolverState& state, Rng& rng);

// Ergodic averages over post-update iterates 1..k, flushed without mutating
// the state. At k == 0 returns the current point.
std::pair<std::vector<double>, std::vector<double>> averages(const SolverState& state);

class StepCheckError : public std::runtime_error {
 public:
  StepCheckError(std::string what, StepCheck check)
      : std::runtime_error(std::move(what)), check(std::move(check)) {}
  StepCheck check;
};

struct RunOptions {
  // Exactly one of the two budgets must be positive.
  std::int64_t iterations = 0;
  double epochs = 0.0;
  std::int64_t checkpoint_every = 0;  // 0 picks roughly 100 checkpoints
  std::uint64_t seed = 1;
  bool averaging = true;
  bool override_step_check = false;
  double gap_radius = 10.0;
  const Reference* reference = nullptr;  // enables suboptimality/gap/distance columns
  // Early stops, checked at checkpoints only; nonpositive disables.
  double target_suboptimality = -1.0;
  double target_weighted_distance = -1.0;
  std::vector<double> x0;
  std::vector<double> y0;
};

struct RunResult {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> x_av;  // equals x when averaging is off
  std::vector<double> y_av;
  Trace trace;
  std::int64_t iterations = 0;
  std::int64_t touched = 0;
  StepCheck step_check;
  bool stopped_early = false;
};

// Full driver: verifies the step sizes against the admissibility bound
// (throws StepCheckError unless overridden), then iterates step() and records
// a trace row every checkpoint, recomputing dense products outside the hot
// loop. Budget of zero is an error.
RunResult run(const ProblemSpec& problem, const SamplingLaw& law, const StepSizes& steps,
              const RunOptions& opts);

}  // namespace purecd
