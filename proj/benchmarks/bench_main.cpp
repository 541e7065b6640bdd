#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "purecd/problems.hpp"
#include "purecd/rng.hpp"
#include "purecd/sampling.hpp"
#include "purecd/solver.hpp"
#include "purecd/sparse.hpp"
#include "purecd/steps.hpp"

namespace {

using purecd::Index;
using purecd::ProblemSpec;
using purecd::Rng;
using purecd::SamplingLaw;
using purecd::SparseMatrix;
using purecd::StepSizes;
using purecd::Triplet;

SparseMatrix random_matrix(std::uint64_t seed, Index m, Index n, double density) {
  Rng rng(seed);
  std::vector<Triplet> entries;
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);
  for (Index j = 0; j < m; ++j) {
    bool row_used = false;
    for (Index i = 0; i < n; ++i)
      if (rng.next_double() < density) {
        entries.push_back({j, i, 2.0 * rng.next_double() - 1.0});
        row_used = true;
        col_used[static_cast<std::size_t>(i)] = true;
      }
    if (!row_used) {
      const Index i = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(n)));
      entries.push_back({j, i, 1.0});
      col_used[static_cast<std::size_t>(i)] = true;
    }
  }
  for (Index i = 0; i < n; ++i)
    if (!col_used[static_cast<std::size_t>(i)]) entries.push_back({i % m, i, 1.0});
  return SparseMatrix::from_triplets(m, n, entries);
}

ProblemSpec random_lasso(std::uint64_t seed, Index m, Index n, double density) {
  SparseMatrix a = random_matrix(seed, m, n, density);
  Rng rng(seed + 1);
  std::vector<double> b(static_cast<std::size_t>(m));
  for (double& v : b) v = 2.0 * rng.next_double() - 1.0;
  return purecd::make_lasso(std::move(a), std::move(b), 0.1);
}

void bm_matvec(benchmark::State& state) {
  const Index dim = state.range(0);
  const SparseMatrix a = random_matrix(1, dim, dim, 0.01);
  Rng rng(2);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (double& v : x) v = rng.next_double();
  for (auto _ : state) {
    auto y = a.matvec(x);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * a.nnz());
}
BENCHMARK(bm_matvec)->Arg(1000)->Arg(4000);

void bm_col_axpy(benchmark::State& state) {
  const Index dim = state.range(0);
  const SparseMatrix a = random_matrix(3, dim, dim, 0.01);
  std::vector<double> out(static_cast<std::size_t>(dim), 0.0);
  Rng rng(4);
  Index i = 0;
  std::int64_t entries = 0;
  for (auto _ : state) {
    i = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(dim)));
    a.col_axpy(i, 0.5, out);
    entries += a.col_nnz(i);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(entries);
}
BENCHMARK(bm_col_axpy)->Arg(1000)->Arg(4000);

void bm_alias_draw(benchmark::State& state) {
  const Index dim = state.range(0);
  const SparseMatrix a = random_matrix(5, dim, dim, 0.01);
  Rng weight_rng(6);
  std::vector<double> weights(static_cast<std::size_t>(dim));
  double total = 0.0;
  for (double& w : weights) {
    w = 0.05 + weight_rng.next_double();
    total += w;
  }
  for (double& w : weights) w /= total;
  const SamplingLaw law = SamplingLaw::build(weights, a);
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.draw(rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_alias_draw)->Arg(1000)->Arg(100000);

void bm_step_sparse(benchmark::State& state) {
  const ProblemSpec problem = random_lasso(8, 2000, state.range(0), 0.005);
  const SamplingLaw law = SamplingLaw::uniform(problem.a);
  const StepSizes steps = purecd::heuristic_steps(problem.a, law, 0.9);
  purecd::SolverState solver = purecd::make_state(problem);
  Rng rng(9);
  for (auto _ : state) {
    purecd::step(problem, law, steps, solver, rng);
  }
  state.SetItemsProcessed(solver.touched);
}
BENCHMARK(bm_step_sparse)->Arg(500)->Arg(2000);

void bm_step_dense_oracle(benchmark::State& state) {
  const ProblemSpec problem = random_lasso(8, 2000, state.range(0), 0.005);
  const SamplingLaw law = SamplingLaw::uniform(problem.a);
  const StepSizes steps = purecd::heuristic_steps(problem.a, law, 0.9);
  purecd::SolverState solver = purecd::make_state(problem);
  Rng rng(9);
  for (auto _ : state) {
    purecd::naive_step(problem, law, steps, solver, rng);
  }
  state.SetItemsProcessed(solver.touched);
}
BENCHMARK(bm_step_dense_oracle)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
