#include <cmath>

#include "doctest.h"
#include "jnalg/poissonization.hpp"

using namespace jnalg;

namespace {

JacobiAlgebroid abelian2() {
  VarSpace vars({"x"});
  Algebroid A;
  A.vars = vars;
  A.rank = 2;
  A.anchor.assign(2, std::vector<Expr>(1, Expr::constant(0.0)));
  return JacobiAlgebroid{A, frame_element(0)};
}

JacobiAlgebroid tmr3() {
  VarSpace vm({"x", "y", "z"});
  return JacobiAlgebroid{cylinder_algebroid(vm), frame_element(3)};
}

}  // namespace

TEST_CASE("extension wiring") {
  ExtendedAlgebroid ext = extend(abelian2());
  CHECK(ext.hat.vars.size() == 2);
  CHECK(ext.t_var == 1);
  // phi0 = eps^1 lands in the new slot of anchor row 0.
  CHECK(ext.hat.anchor[0][1].is_const(1.0));
  CHECK(ext.hat.anchor[1][1].is_const(0.0));

  ExtendedAlgebroid cyl = extend(tmr3());
  // rho_hat(e_{m+1}) = d/dt
  CHECK(cyl.hat.anchor[3][3].is_const(1.0));
  CHECK(cyl.hat.anchor[3][0].is_const(0.0));

  Sampling s;
  CHECK(check_extension(ext, s).pass);
  CHECK(check_extension(cyl, s).pass);
}

TEST_CASE("gauge weights multiply as characters") {
  ExtendedAlgebroid ext = extend(abelian2());
  Point p = {0.0, 0.5};
  CHECK(eval(ext.weight(2), p) == doctest::Approx(std::exp(1.0)));
  CHECK(eval(ext.weight(-1), p) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("homogenized bivector is Poisson") {
  VarSpace vm({"x", "y", "z"});
  JacobiAlgebroid J = tmr3();
  Multivector Lam;
  Lam.degree = 2;
  Lam.add_term({0, 1}, Expr::constant(1.0));
  Lam.add_term({1, 2}, parse_expr("-y", vm));
  Multivector E;
  E.degree = 1;
  E.add_term({2}, Expr::constant(1.0));
  Multivector P = embed_base_pair(BaseJacobiPair{vm, Lam, E}, 4);

  ExtendedAlgebroid ext = extend(J);
  Multivector Pt = gauge_mv(ext, P);
  Sampling s;
  std::vector<Point> pts = sample_points(4, s);
  CHECK(coeffs_report("test", "pt_closed", schouten(ext.hat, Pt, Pt), pts, s).pass);
}

TEST_CASE("gauging transports the calculus") {
  JacobiAlgebroid J = abelian2();
  ExtendedAlgebroid ext = extend(J);
  Sampling s;

  AForm w;
  w.degree = 1;
  w.add_term({0}, parse_expr("x*x", J.A.vars));
  w.add_term({1}, parse_expr("1+x", J.A.vars));
  CHECK(check_gauging_differential(ext, w, s).pass);

  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::var(0, "x"));
  CHECK(check_gauging_bracket(ext, P, P, s).pass);

  AForm b = frame_element(1);
  std::vector<Report> rs = check_dual_gauging(ext, P, w, b, s);
  CHECK(rs.size() == 2);
  CHECK(all_pass(rs));
}
