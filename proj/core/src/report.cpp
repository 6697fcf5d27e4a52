#include "jnalg/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace jnalg {

namespace {

std::string fmt_residual(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace

Report merge_reports(std::string check, std::string anchor,
                     const std::vector<Report>& rs, std::uint64_t seed) {
  Report out;
  out.check = std::move(check);
  out.anchor = std::move(anchor);
  out.pass = true;
  out.seed = seed;
  for (const Report& r : rs) {
    if (r.residual >= out.residual) {
      out.residual = r.residual;
      out.witness = r.witness;
    }
    out.pass = out.pass && r.pass;
  }
  return out;
}

std::string to_text(const std::vector<Report>& rs) {
  std::string out;
  for (const Report& r : rs) {
    out += r.pass ? "PASS" : "FAIL";
    out += "  ";
    out += r.check;
    out += "  ";
    out += r.anchor;
    out += "  residual=";
    out += fmt_residual(r.residual);
    out += "\n";
  }
  std::size_t failed = 0;
  for (const Report& r : rs)
    if (!r.pass) ++failed;
  out += std::to_string(rs.size()) + " checks, " + std::to_string(failed) + " failed\n";
  return out;
}

std::string to_json(const std::vector<Report>& rs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Report& r : rs) {
    nlohmann::ordered_json rec;
    rec["check"] = r.check;
    rec["anchor"] = r.anchor;
    rec["residual"] = r.residual;
    rec["pass"] = r.pass;
    rec["witness"] = r.witness;
    rec["seed"] = r.seed;
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

bool all_pass(const std::vector<Report>& rs) {
  for (const Report& r : rs)
    if (!r.pass) return false;
  return true;
}

int exit_code(const std::vector<Report>& rs) { return all_pass(rs) ? 0 : 1; }

}  // namespace jnalg
