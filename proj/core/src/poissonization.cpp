#include "jnalg/poissonization.hpp"

#include <stdexcept>

namespace jnalg {

Expr ExtendedAlgebroid::t_expr() const { return Expr::var(t_var, "t"); }

Expr ExtendedAlgebroid::weight(int k) const {
  if (k == 0) return Expr::constant(1.0);
  return jnalg::exp(fmul(Expr::constant(static_cast<double>(k)), t_expr()));
}

ExtendedAlgebroid extend(const JacobiAlgebroid& J) {
  if (J.A.vars.has_t())
    throw std::invalid_argument("algebroid already carries the cylinder coordinate");
  ExtendedAlgebroid out;
  out.origin = J;
  out.hat.vars = J.A.vars.with_t();
  out.hat.rank = J.A.rank;
  out.hat.structure = J.A.structure;
  for (int a = 0; a < J.A.rank; ++a) {
    std::vector<Expr> row = J.A.anchor[static_cast<std::size_t>(a)];
    row.push_back(J.phi0.coeff({a}));
    out.hat.anchor.push_back(std::move(row));
  }
  out.t_var = out.hat.vars.t_index();
  return out;
}

Multivector gauge_mv(const ExtendedAlgebroid& E, const Multivector& P) {
  return scale(E.weight(-(P.degree - 1)), P);
}

AForm gauge_form(const ExtendedAlgebroid& E, const AForm& w) {
  return scale(E.weight(w.degree), w);
}

Report check_extension(const ExtendedAlgebroid& E, const Sampling& s) {
  std::vector<Point> pts = sample_points(E.hat.vars.size(), s);
  AForm dt = differential(E.hat, scalar_graded(E.t_expr()));
  return coeffs_report("poissonize", "dt_recovers_cocycle",
                       sub(dt, E.origin.phi0), pts, s);
}

Report check_gauging_bracket(const ExtendedAlgebroid& E, const Multivector& P,
                             const Multivector& Q, const Sampling& s) {
  std::vector<Point> pts = sample_points(E.hat.vars.size(), s);
  Multivector lhs = schouten(E.hat, gauge_mv(E, P), gauge_mv(E, Q));
  Multivector rhs = gauge_mv(E, sj_bracket(E.origin, P, Q));
  return coeffs_report("poissonize",
                       "bracket_gauge(" + std::to_string(P.degree) + "," +
                           std::to_string(Q.degree) + ")",
                       sub(lhs, rhs), pts, s);
}

Report check_gauging_differential(const ExtendedAlgebroid& E, const AForm& w,
                                  const Sampling& s) {
  std::vector<Point> pts = sample_points(E.hat.vars.size(), s);
  AForm lhs = differential(E.hat, scale(E.weight(1), w));
  AForm rhs = scale(E.weight(1), phi_diff(E.origin, w));
  return coeffs_report("poissonize",
                       "differential_gauge(" + std::to_string(w.degree) + ")",
                       sub(lhs, rhs), pts, s);
}

std::vector<Report> check_dual_gauging(const ExtendedAlgebroid& E,
                                       const Multivector& P, const AForm& a,
                                       const AForm& b, const Sampling& s) {
  std::vector<Point> pts = sample_points(E.hat.vars.size(), s);
  JacobiAlgebroid hatJ{E.hat, zero_graded(1)};
  Multivector Pt = gauge_mv(E, P);
  Multivector X0 = x0_section(E.origin, P);

  std::vector<Report> out;
  {
    AForm lhs = dual_bracket(hatJ, Pt, a, b);
    AForm corr = dual_bracket(E.origin, P, a, b);
    corr = sub(corr, scale(pairing(a, X0), b));
    corr = add(corr, scale(pairing(b, X0), a));
    AForm rhs = scale(E.weight(-1), corr);
    out.push_back(coeffs_report("poissonize", "dual_bracket_ungauged",
                                sub(lhs, rhs), pts, s));
  }
  {
    AForm lhs = dual_bracket(hatJ, Pt, scale(E.weight(1), a), scale(E.weight(1), b));
    AForm rhs = scale(E.weight(1), dual_bracket(E.origin, P, a, b));
    out.push_back(coeffs_report("poissonize", "dual_bracket_gauged",
                                sub(lhs, rhs), pts, s));
  }
  return out;
}

}  // namespace jnalg
