#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "purecd/baselines.hpp"
#include "purecd/libsvm.hpp"
#include "purecd/metrics.hpp"
#include "purecd/problems.hpp"
#include "purecd/rng.hpp"
#include "purecd/sampling.hpp"
#include "purecd/solver.hpp"
#include "purecd/steps.hpp"
#include "purecd/trace.hpp"

namespace {

using nlohmann::json;
using purecd::Index;
using purecd::ProblemSpec;
using purecd::Reference;
using purecd::Rng;
using purecd::SamplingLaw;
using purecd::SeparableFunction;
using purecd::StepSizes;
using purecd::Trace;
using purecd::TraceRow;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SolveConfig {
  std::string data;
  std::string problem = "lasso";
  double lambda = 0.1;
  std::string solver = "purecd";
  double gamma = 0.9;
  double iters = 0.0;  // accepts scientific notation like 1e6
  double epochs = 0.0;
  double checkpoint_every = 0.0;
  std::uint64_t seed = 1;
  std::string out = "trace.csv";
  std::string summary;
  bool averaging = true;
  bool override_steps = false;
  bool no_reference = false;
  double ref_tol = 1e-10;
  double ref_iters = 1e6;
  double gap_radius = 10.0;
};

std::int64_t to_count(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be a nonnegative number");
  return static_cast<std::int64_t>(std::llround(v));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json j;
  in >> j;
  return j;
}

// command line flags win over config file values
void merge_config(const CLI::App& cmd, const json& j, SolveConfig& cfg) {
  auto take = [&](const char* flag, const char* key, auto& field) {
    if (cmd.count(flag) == 0 && j.contains(key))
      field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
  };
  take("--data", "data", cfg.data);
  take("--problem", "problem", cfg.problem);
  take("--lambda", "lambda", cfg.lambda);
  take("--solver", "solver", cfg.solver);
  take("--gamma", "gamma", cfg.gamma);
  take("--iters", "iters", cfg.iters);
  take("--epochs", "epochs", cfg.epochs);
  take("--checkpoint-every", "checkpoint_every", cfg.checkpoint_every);
  take("--seed", "seed", cfg.seed);
  take("--out", "out", cfg.out);
  take("--summary", "summary", cfg.summary);
  take("--ref-tol", "ref_tol", cfg.ref_tol);
  take("--ref-iters", "ref_iters", cfg.ref_iters);
  take("--gap-radius", "gap_radius", cfg.gap_radius);
  if (cmd.count("--no-averaging") == 0 && j.contains("averaging"))
    cfg.averaging = j.at("averaging").get<bool>();
  if (cmd.count("--override-steps") == 0 && j.contains("override_steps"))
    cfg.override_steps = j.at("override_steps").get<bool>();
  if (cmd.count("--no-reference") == 0 && j.contains("no_reference"))
    cfg.no_reference = j.at("no_reference").get<bool>();
}

struct LoadedProblem {
  ProblemSpec spec;
  Index raw_rows = 0;
  Index raw_cols = 0;
};

LoadedProblem load_problem(const SolveConfig& cfg) {
  if (cfg.data.empty()) throw std::invalid_argument("no dataset given (--data)");
  purecd::Dataset dataset = purecd::parse_libsvm_file(cfg.data);
  const Index raw_rows = dataset.matrix.rows();
  const Index raw_cols = dataset.matrix.cols();
  purecd::PreprocessResult pre = purecd::preprocess(dataset.matrix, dataset.labels);

  if (cfg.problem == "lasso")
    return {purecd::make_lasso(std::move(pre.matrix), std::move(pre.labels), cfg.lambda),
            raw_rows, raw_cols};
  if (cfg.problem == "ridge")
    return {purecd::make_ridge(std::move(pre.matrix), std::move(pre.labels), cfg.lambda),
            raw_rows, raw_cols};
  if (cfg.problem == "linconstrained") {
    const Index n = pre.matrix.cols();
    return {purecd::make_linconstrained(std::move(pre.matrix), std::move(pre.labels),
                                        SeparableFunction::sq_l2(n, cfg.lambda)),
            raw_rows, raw_cols};
  }
  throw std::invalid_argument("unknown problem '" + cfg.problem + "'");
}

std::optional<purecd::ReferenceResult> solve_reference(const ProblemSpec& problem,
                                                       const SolveConfig& cfg) {
  if (cfg.no_reference) return std::nullopt;
  auto ref = purecd::reference_solution(problem, cfg.ref_tol,
                                        to_count(cfg.ref_iters, "ref iterations"));
  if (!ref.converged)
    std::cerr << "warning: reference stalled at kkt residual " << ref.kkt_residual
              << "; anchored metrics are approximate\n";
  return ref;
}

struct BaselineRun {
  purecd::BaselineState state;
  Trace trace;
  std::int64_t touched = 0;
};

TraceRow baseline_row(const ProblemSpec& problem, const purecd::BaselineState& s,
                      std::int64_t touched, const Reference* ref, double gap_radius,
                      double wall_ms) {
  TraceRow row;
  row.iteration = s.k;
  row.touched = touched;
  row.epochs = static_cast<double>(touched) / static_cast<double>(problem.a.nnz());
  row.wall_ms = wall_ms;
  const std::vector<double> ax = problem.a.matvec(s.x);
  row.objective = purecd::objective(problem, s.x, ax);
  row.feasibility = purecd::feasibility_from_product(problem, ax);
  if (ref != nullptr) {
    if (problem.hstar.kind() == purecd::FunKind::linear_conjugate)
      row.suboptimality =
          purecd::partial_objective(problem, s.x) - purecd::partial_objective(problem, ref->x);
    else
      row.suboptimality = row.objective - ref->objective;
    row.gap = problem.f ? kNaN : purecd::restricted_gap(problem, s.x, s.y, *ref, gap_radius);
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
  } else {
    row.suboptimality = kNaN;
    row.gap = kNaN;
    row.dist_plain = kNaN;
  }
  row.dist_weighted = kNaN;  // the weighted norm is defined by the coordinate method
  return row;
}

// full-pass methods touch every nonzero each iteration, so one iteration is
// one epoch and the iteration budget is ceil(epochs)
BaselineRun run_baseline(const ProblemSpec& problem, const SolveConfig& cfg,
                         const Reference* ref) {
  const std::int64_t by_iters = to_count(cfg.iters, "iterations");
  const std::int64_t by_epochs = static_cast<std::int64_t>(std::ceil(cfg.epochs));
  if ((by_iters > 0) == (by_epochs > 0))
    throw std::invalid_argument("choose one budget, --iters or --epochs");
  const std::int64_t iters = by_iters > 0 ? by_iters : by_epochs;
  std::int64_t cadence = to_count(cfg.checkpoint_every, "checkpoint cadence");
  if (cadence <= 0) cadence = std::max<std::int64_t>(1, iters / 100);

  const auto [tau, sigma] = purecd::baseline_steps(problem.a);
  const bool block = cfg.solver == "tripd";
  SamplingLaw law = SamplingLaw::uniform(problem.a);
  Rng rng(cfg.seed);

  BaselineRun out;
  out.state = purecd::make_baseline_state(problem);
  const auto t0 = std::chrono::steady_clock::now();
  auto wall_ms = [&t0]() {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  out.trace.rows.push_back(
      baseline_row(problem, out.state, out.touched, ref, cfg.gap_radius, wall_ms()));
  for (std::int64_t k = 1; k <= iters; ++k) {
    if (block)
      purecd::tripd_bc_step(problem, law, tau, sigma, out.state, rng);
    else
      purecd::vu_condat_step(problem, tau, sigma, out.state);
    out.touched += problem.a.nnz();
    if (k % cadence == 0 || k == iters)
      out.trace.rows.push_back(
          baseline_row(problem, out.state, out.touched, ref, cfg.gap_radius, wall_ms()));
  }
  return out;
}

void write_summary(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

int cmd_solve(const SolveConfig& cfg) {
  const LoadedProblem loaded = load_problem(cfg);
  const ProblemSpec& problem = loaded.spec;
  std::cout << "problem " << cfg.problem << ": " << problem.a.rows() << " x "
            << problem.a.cols() << " after preprocessing (" << loaded.raw_rows << " x "
            << loaded.raw_cols << " raw), nnz " << problem.a.nnz() << ", lambda "
            << cfg.lambda << "\n";

  const auto ref = solve_reference(problem, cfg);
  const Reference* anchor = ref ? &ref->reference : nullptr;
  if (ref)
    std::cout << "reference: kkt residual " << ref->kkt_residual << " after "
              << ref->iterations << " iterations\n";

  json summary{{"command", "solve"},
               {"data", cfg.data},
               {"problem", cfg.problem},
               {"lambda", cfg.lambda},
               {"solver", cfg.solver},
               {"seed", cfg.seed},
               {"trace", cfg.out},
               {"rows", problem.a.rows()},
               {"cols", problem.a.cols()},
               {"nnz", problem.a.nnz()}};

  Trace trace;
  if (cfg.solver == "purecd") {
    const SamplingLaw law = SamplingLaw::uniform(problem.a);
    const StepSizes steps = purecd::heuristic_steps(problem.a, law, cfg.gamma);
    purecd::RunOptions opts;
    opts.iterations = to_count(cfg.iters, "iterations");
    opts.epochs = cfg.epochs;
    opts.checkpoint_every = to_count(cfg.checkpoint_every, "checkpoint cadence");
    opts.seed = cfg.seed;
    opts.averaging = cfg.averaging;
    opts.override_step_check = cfg.override_steps;
    opts.gap_radius = cfg.gap_radius;
    opts.reference = anchor;
    const purecd::RunResult result = purecd::run(problem, law, steps, opts);
    trace = result.trace;
    summary["gamma"] = cfg.gamma;
    summary["iterations"] = result.iterations;
    summary["touched"] = result.touched;
    summary["admissible"] = result.step_check.admissible;
    summary["stopped_early"] = result.stopped_early;
    summary["final_kkt"] = purecd::kkt_residual(problem, result.x, result.y);
  } else if (cfg.solver == "vucondat" || cfg.solver == "tripd") {
    const BaselineRun result = run_baseline(problem, cfg, anchor);
    trace = result.trace;
    summary["iterations"] = result.state.k;
    summary["touched"] = result.touched;
    summary["final_kkt"] = purecd::kkt_residual(problem, result.state.x, result.state.y);
  } else {
    throw std::invalid_argument("unknown solver '" + cfg.solver + "'");
  }

  trace.write_csv_file(cfg.out);
  const TraceRow& last = trace.rows.back();
  summary["epochs"] = last.epochs;
  summary["final_objective"] = last.objective;
  summary["final_suboptimality"] = last.suboptimality;
  summary["checkpoints"] = trace.rows.size();
  write_summary(cfg.summary, summary);

  std::cout << "solver " << cfg.solver << ": " << last.iteration << " iterations ("
            << last.epochs << " epochs) in " << last.wall_ms << " ms\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12e", last.objective);
  std::cout << "final objective " << buf;
  if (anchor != nullptr) {
    std::snprintf(buf, sizeof(buf), "%.3e", last.suboptimality);
    std::cout << ", suboptimality " << buf;
  }
  std::cout << "\ntrace: " << cfg.out << "\n";
  return 0;
}

int cmd_check_steps(const SolveConfig& cfg) {
  const LoadedProblem loaded = load_problem(cfg);
  const ProblemSpec& problem = loaded.spec;
  const SamplingLaw law = SamplingLaw::uniform(problem.a);
  const StepSizes steps = purecd::heuristic_steps(problem.a, law, cfg.gamma);
  const purecd::StepCheck check = purecd::check_steps(problem, law, steps);

  const Index i = check.tightest;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "tightest coordinate %lld: tau %.6e, bound %.6e, relative slack %.6e",
                static_cast<long long>(i), steps.tau[static_cast<std::size_t>(i)],
                check.bounds[static_cast<std::size_t>(i)], check.min_relative_slack);
  std::cout << (check.admissible ? "ADMISSIBLE" : "NOT ADMISSIBLE") << " (gamma "
            << cfg.gamma << ")\n"
            << buf << "\n";
  return check.admissible ? 0 : 2;
}

int cmd_gen(Index n, Index m, double density, std::uint64_t seed, const std::string& out) {
  if (n <= 0 || m <= 0) throw std::invalid_argument("gen: n and m must be positive");
  if (!(density > 0.0) || !(density <= 1.0))
    throw std::invalid_argument("gen: density must lie in (0, 1]");

  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + out + "' for writing");

  Rng rng(seed);
  auto normal = [&rng]() {
    double u1 = 0.0;
    do {
      u1 = rng.next_double();
    } while (u1 <= 0.0);
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };

  std::int64_t nnz = 0;
  char buf[64];
  for (Index j = 0; j < m; ++j) {
    file << (rng.next_below(2) == 0 ? "+1" : "-1");
    for (Index i = 0; i < n; ++i) {
      if (rng.next_double() >= density) continue;
      std::snprintf(buf, sizeof(buf), " %lld:%.17g", static_cast<long long>(i + 1),
                    normal());
      file << buf;
      ++nnz;
    }
    file << '\n';
  }
  std::cout << "wrote " << m << " rows, " << nnz << " entries to " << out << "\n";
  return 0;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int cmd_sweep(const std::string& config_path) {
  const json j = load_json_file(config_path);
  SolveConfig base;
  if (!j.contains("data")) throw std::invalid_argument("sweep config needs a data path");
  base.data = j.at("data").get<std::string>();
  if (j.contains("problem")) base.problem = j.at("problem").get<std::string>();
  if (j.contains("lambda")) base.lambda = j.at("lambda").get<double>();
  if (j.contains("gamma")) base.gamma = j.at("gamma").get<double>();
  if (j.contains("iters")) base.iters = j.at("iters").get<double>();
  if (j.contains("epochs")) base.epochs = j.at("epochs").get<double>();
  if (j.contains("checkpoint_every"))
    base.checkpoint_every = j.at("checkpoint_every").get<double>();
  if (j.contains("averaging")) base.averaging = j.at("averaging").get<bool>();
  if (j.contains("override_steps")) base.override_steps = j.at("override_steps").get<bool>();
  if (j.contains("no_reference")) base.no_reference = j.at("no_reference").get<bool>();
  if (j.contains("ref_tol")) base.ref_tol = j.at("ref_tol").get<double>();
  if (j.contains("ref_iters")) base.ref_iters = j.at("ref_iters").get<double>();
  if (j.contains("gap_radius")) base.gap_radius = j.at("gap_radius").get<double>();

  std::vector<std::string> solvers{"purecd"};
  if (j.contains("solvers")) solvers = j.at("solvers").get<std::vector<std::string>>();
  std::vector<std::uint64_t> seeds{1};
  if (j.contains("seeds")) seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  const std::string out_dir = j.value("out_dir", std::string("sweep-out"));
  const unsigned threads =
      std::max(1u, j.value("threads", std::max(1u, std::thread::hardware_concurrency())));

  std::filesystem::create_directories(out_dir);

  const LoadedProblem loaded = load_problem(base);
  const ProblemSpec& problem = loaded.spec;
  const auto ref = solve_reference(problem, base);
  const Reference* anchor = ref ? &ref->reference : nullptr;

  // shared read-only inputs; each task owns its run state
  struct Task {
    std::string solver;
    std::uint64_t seed = 0;
  };
  std::vector<Task> tasks;
  for (const std::string& solver : solvers)
    for (std::uint64_t seed : seeds) tasks.push_back({solver, seed});

  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  json runs = json::array();
  std::vector<std::string> errors;

  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      SolveConfig cfg = base;
      cfg.solver = task.solver;
      cfg.seed = task.seed;
      const std::string canon = cfg.data + "|" + cfg.problem + "|" +
                                std::to_string(cfg.lambda) + "|" + std::to_string(cfg.gamma) +
                                "|" + std::to_string(cfg.iters) + "|" +
                                std::to_string(cfg.epochs) + "|" + task.solver + "|" +
                                std::to_string(task.seed);
      char hash[32];
      std::snprintf(hash, sizeof(hash), "%016llx",
                    static_cast<unsigned long long>(fnv1a(canon)));
      const std::string file = out_dir + "/trace-" + task.solver + "-seed" +
                               std::to_string(task.seed) + "-" + hash + ".csv";
      try {
        Trace trace;
        if (task.solver == "purecd") {
          const SamplingLaw law = SamplingLaw::uniform(problem.a);
          const StepSizes steps = purecd::heuristic_steps(problem.a, law, cfg.gamma);
          purecd::RunOptions opts;
          opts.iterations = to_count(cfg.iters, "iterations");
          opts.epochs = cfg.epochs;
          opts.checkpoint_every = to_count(cfg.checkpoint_every, "checkpoint cadence");
          opts.seed = cfg.seed;
          opts.averaging = cfg.averaging;
          opts.override_step_check = cfg.override_steps;
          opts.gap_radius = cfg.gap_radius;
          opts.reference = anchor;
          trace = purecd::run(problem, law, steps, opts).trace;
        } else if (task.solver == "vucondat" || task.solver == "tripd") {
          trace = run_baseline(problem, cfg, anchor).trace;
        } else {
          throw std::invalid_argument("unknown solver '" + task.solver + "'");
        }
        trace.write_csv_file(file);
        const TraceRow& last = trace.rows.back();
        std::lock_guard<std::mutex> lock(report_mutex);
        runs.push_back({{"solver", task.solver},
                        {"seed", task.seed},
                        {"file", file},
                        {"iterations", last.iteration},
                        {"epochs", last.epochs},
                        {"final_objective", last.objective},
                        {"final_suboptimality", last.suboptimality}});
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(report_mutex);
        errors.push_back(task.solver + " seed " + std::to_string(task.seed) + ": " +
                         e.what());
      }
    }
  };

  std::vector<std::thread> pool;
  const unsigned used = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  for (unsigned t = 0; t < used; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  json manifest{{"config", config_path}, {"out_dir", out_dir}, {"runs", runs}};
  write_summary(out_dir + "/manifest.json", manifest);

  std::cout << "sweep: " << runs.size() << " of " << tasks.size() << " runs written to "
            << out_dir << "\n";
  for (const std::string& e : errors) std::cerr << "error: " << e << "\n";
  return errors.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse primal-dual coordinate descent benchmark harness"};
  app.require_subcommand(1);

  SolveConfig cfg;
  std::string config_path;
  bool flag_no_averaging = false;
  bool flag_override = false;
  bool flag_no_reference = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--data", cfg.data, "LIBSVM dataset path");
    cmd->add_option("--problem", cfg.problem, "lasso, ridge, or linconstrained")
        ->check(CLI::IsMember({"lasso", "ridge", "linconstrained"}));
    cmd->add_option("--lambda", cfg.lambda, "regularization weight");
    cmd->add_option("--gamma", cfg.gamma, "step safety factor in (0, 1)");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one solver and write a trace");
  add_common(solve);
  solve->add_option("--solver", cfg.solver, "purecd, vucondat, or tripd")
      ->check(CLI::IsMember({"purecd", "vucondat", "tripd"}));
  solve->add_option("--iters", cfg.iters, "iteration budget (accepts 1e6)");
  solve->add_option("--epochs", cfg.epochs, "epoch budget, exclusive with --iters");
  solve->add_option("--checkpoint-every", cfg.checkpoint_every,
                    "iterations between trace rows (0 picks ~100 rows)");
  solve->add_option("--seed", cfg.seed, "RNG seed");
  solve->add_option("--out", cfg.out, "trace CSV path");
  solve->add_option("--summary", cfg.summary, "optional JSON summary path");
  solve->add_option("--config", config_path, "JSON config file; flags override it");
  solve->add_flag("--no-averaging", flag_no_averaging, "skip ergodic averaging");
  solve->add_flag("--override-steps", flag_override, "run despite inadmissible steps");
  solve->add_flag("--no-reference", flag_no_reference,
                  "skip the reference solve and anchored metrics");
  solve->add_option("--ref-tol", cfg.ref_tol, "reference KKT tolerance");
  solve->add_option("--ref-iters", cfg.ref_iters, "reference iteration cap");
  solve->add_option("--gap-radius", cfg.gap_radius, "restricted gap box radius");

  CLI::App* sweep = app.add_subcommand("sweep", "run a solvers x seeds grid from JSON");
  std::string sweep_config;
  sweep->add_option("config", sweep_config, "sweep JSON config")->required();

  CLI::App* check = app.add_subcommand("check-steps", "evaluate step admissibility");
  add_common(check);

  CLI::App* gen = app.add_subcommand("gen", "write a synthetic LIBSVM dataset");
  std::int64_t gen_n = 0;
  std::int64_t gen_m = 0;
  double gen_density = 0.01;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "synthetic.libsvm";
  gen->add_option("--n", gen_n, "feature count")->required();
  gen->add_option("--m", gen_m, "row count")->required();
  gen->add_option("--density", gen_density, "expected nonzero fraction");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      if (!config_path.empty()) merge_config(*solve, load_json_file(config_path), cfg);
      if (flag_no_averaging) cfg.averaging = false;
      if (flag_override) cfg.override_steps = true;
      if (flag_no_reference) cfg.no_reference = true;
      return cmd_solve(cfg);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_config);
    if (check->parsed()) return cmd_check_steps(cfg);
    if (gen->parsed()) return cmd_gen(gen_n, gen_m, gen_density, gen_seed, gen_out);
  } catch (const purecd::StepCheckError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
