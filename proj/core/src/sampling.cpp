#include "jnalg/sampling.hpp"

#include <cmath>
#include <random>

namespace jnalg {

std::vector<Point> sample_points(std::size_t dim, const Sampling& s) {
  std::mt19937_64 rng(s.seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(s.points));
  for (int k = 0; k < s.points; ++k) {
    Point p(dim);
    for (std::size_t u = 0; u < dim; ++u) {
      // 53-bit mantissa draw; identical across platforms for a given seed.
      double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      p[u] = s.box_lo + unit * (s.box_hi - s.box_lo);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

void accumulate(Residual& r, const Expr& e, const std::vector<Point>& pts) {
  for (const Point& p : pts) {
    double v = std::fabs(eval(e, p));
    if (r.witness.empty() || v > r.max_abs) {
      r.max_abs = v;
      r.witness = p;
    }
  }
}

}  // namespace jnalg
