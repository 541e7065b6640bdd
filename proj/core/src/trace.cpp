#include "purecd/trace.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace purecd {

void Trace::write_csv(std::ostream& out) const {
  out << kHeader << '\n';
  char buf[512];
  for (const TraceRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%lld,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%lld,%.3f\n",
                  static_cast<long long>(r.iteration), r.epochs, r.objective,
                  r.suboptimality, r.gap, r.feasibility, r.dist_plain, r.dist_weighted,
                  static_cast<long long>(r.touched), r.wall_ms);
    out << buf;
  }
}

void Trace::write_csv_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out);
}

}  // namespace purecd
