#include "driftlab/horoboundary.hpp"

#include <cstdio>
#include <stdexcept>

namespace driftlab {

void write_comparison_csv(const ComparisonReport& rep, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_comparison_csv: cannot open " + path);
  std::fprintf(f, "n,distance,horofunction,gap\n");
  for (const auto& st : rep.steps)
    std::fprintf(f, "%ld,%.17g,%.17g,%.17g\n", st.n, st.distance, st.horofunction, st.gap);
  std::fclose(f);
}

}  // namespace driftlab
