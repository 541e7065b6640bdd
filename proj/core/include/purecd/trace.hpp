#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace purecd {

// One checkpoint of a solver run. Objective, suboptimality, and the distance
// columns are measured at the last iterate; gap and feasibility at the
// ergodic averages when averaging is on. Columns without a reference solution
// are NaN.
struct TraceRow {
  std::int64_t iteration = 0;
  double epochs = 0.0;  // cumulative dual coordinates touched / nnz
  double objective = 0.0;
  double suboptimality = 0.0;
  double gap = 0.0;
  double feasibility = 0.0;
  double dist_plain = 0.0;
  double dist_weighted = 0.0;
  std::int64_t touched = 0;
  double wall_ms = 0.0;
};

struct Trace {
  static constexpr const char* kHeader =
      "iteration,epochs,objective,suboptimality,gap,feasibility,dist_plain,"
      "dist_weighted,touched,wall_ms";

  std::vector<TraceRow> rows;

  // UTF-8, '\n' line ends, floats as %.12e. Identical runs produce identical
  // bytes except for the wall_ms column.
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;
};

}  // namespace purecd
