#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jnalg {

// One verified statement instance.  `check` names the operation family,
// `anchor` is a stable identity string for the particular statement, and
// `witness` is the sample point attaining the reported residual.
struct Report {
  std::string check;
  std::string anchor;
  double residual = 0.0;
  bool pass = false;
  std::vector<double> witness;
  std::uint64_t seed = 0;
};

// Collapses a family of statement instances into one record under a fresh
// anchor: worst residual wins (with its witness), pass is the conjunction.
Report merge_reports(std::string check, std::string anchor,
                     const std::vector<Report>& rs, std::uint64_t seed);

std::string to_text(const std::vector<Report>& rs);
std::string to_json(const std::vector<Report>& rs);

bool all_pass(const std::vector<Report>& rs);

// 0 when every record passes, 1 otherwise.  Configuration problems are
// reported by exceptions and map to exit code 2 at the CLI boundary.
int exit_code(const std::vector<Report>& rs);

}  // namespace jnalg
