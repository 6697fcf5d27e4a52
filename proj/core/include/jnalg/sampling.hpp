#pragma once

#include <cstdint>
#include <vector>

#include "jnalg/expr.hpp"

namespace jnalg {

// Sampling policy for numerical identity checks.
struct Sampling {
  int points = 25;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  double box_lo = -1.0;
  double box_hi = 1.0;
};

// Deterministic point cloud: mt19937_64 seeded with `seed`; one uniform draw
// per coordinate, point-major, coordinates in VarSpace order.
std::vector<Point> sample_points(std::size_t dim, const Sampling& s);

struct Residual {
  double max_abs = 0.0;
  Point witness;  // point attaining max_abs; empty until first accumulate
};

void accumulate(Residual& r, const Expr& e, const std::vector<Point>& pts);

}  // namespace jnalg
