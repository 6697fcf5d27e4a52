#include <cmath>

#include "doctest.h"
#include "jnalg/batteries.hpp"

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

JacobiAlgebroid tangent2() {
  VarSpace vars({"x", "y"});
  return JacobiAlgebroid{tangent_algebroid(vars), zero_graded(1)};
}

Multivector pi_bivector(const VarSpace& vars) {
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, parse_expr("2+x*x+y", vars));
  return P;
}

}  // namespace

TEST_CASE("flat-space divergence field") {
  VarSpace vars({"x", "y"});
  Multivector Pi = pi_bivector(vars);
  std::vector<Expr> X = poisson_modular_field(vars, Pi, Expr::constant(1.0));
  Point p = {0.6, -0.2};
  CHECK(eval(X[0], p) == doctest::Approx(1.0));     // d(pi)/dy
  CHECK(eval(X[1], p) == doctest::Approx(-1.2));    // -d(pi)/dx
}

TEST_CASE("modular form of the abelian structure") {
  JacobiAlgebroid J = abelian2();
  Expr one = Expr::constant(1.0);
  AForm xi = modular_form(J.A, one, one);
  CHECK(xi.normalized().is_zero());
  // Twisted shift: -(rank-1) phi0.
  AForm xiphi = jacobi_modular_form(J, one, one);
  CHECK(sub(xiphi, scale(-1.0, J.phi0)).normalized().is_zero());
}

TEST_CASE("dual modular form pins") {
  JacobiAlgebroid T = tangent2();
  Multivector P = pi_bivector(T.A.vars);
  Expr one = Expr::constant(1.0);
  Multivector xi = dual_modular_form(T, P, one, one);
  Point p = {0.25, 0.5};
  CHECK(eval(xi.coeff({0}), p) == doctest::Approx(2.0));        // 2 d(pi)/dy
  CHECK(eval(xi.coeff({1}), p) == doctest::Approx(-4 * 0.25));  // -2 d(pi)/dx

  JacobiAlgebroid A2 = abelian2();
  Multivector Pa;
  Pa.degree = 2;
  Pa.add_term({0, 1}, Expr::var(0, "x"));
  CHECK(dual_modular_form(A2, Pa, one, one).normalized().is_zero());
  Multivector x0 = x0_section(A2, Pa);
  Point q = {0.7};
  CHECK(eval(x0.coeff({1}), q) == doctest::Approx(-0.7));
}

TEST_CASE("section rescaling shifts by an exact form") {
  JacobiAlgebroid T = tangent2();
  Expr one = Expr::constant(1.0);
  Expr f = parse_expr("exp(x)", T.A.vars);
  AForm xi = modular_form(T.A, fmul(f, one), one);
  // d ln exp(x) = dx; the quotient exp(x)/exp(x) only collapses numerically
  Point q = {0.3, -0.8};
  CHECK(eval(xi.coeff({0}), q) == doctest::Approx(1.0));
  CHECK(eval(xi.coeff({1}), q) == doctest::Approx(0.0));
}

TEST_CASE("relative field for constant conformal operators vanishes") {
  JacobiAlgebroid T = tangent2();
  Multivector P = pi_bivector(T.A.vars);
  Endo c = endo_conformal(Expr::constant(5.0), 2);
  CHECK(xnp_field_direct(T, P, c).normalized().is_zero());
}

TEST_CASE("deviation relation and its negative control") {
  // The torsion-carrying operator separates both interior-product routes.
  VarSpace vm({"x", "y", "z"});
  Algebroid cyl = cylinder_algebroid(vm);
  JacobiAlgebroid J{cyl, frame_element(3)};
  Multivector Lam;
  Lam.degree = 2;
  Lam.add_term({0, 1}, Expr::constant(1.0));
  Lam.add_term({1, 2}, parse_expr("-y", vm));
  Multivector E;
  E.degree = 1;
  E.add_term({2}, Expr::constant(1.0));
  Multivector P = embed_base_pair(BaseJacobiPair{vm, Lam, E}, 4);
  auto X = [&](const char* s) { return parse_expr(s, vm); };
  Endo n;
  n.rank = 4;
  n.m = {{X("z+1"), X("0"), X("0"), X("-1")},
         {X("0"), X("z+1"), X("0"), X("-y-1")},
         {X("1"), X("-1"), X("z+2"), X("-y")},
         {X("0"), X("0"), X("0"), X("z+2")}};

  Expr one = Expr::constant(1.0);
  Multivector np = np_bivector_unchecked(J.A, P, n);
  Multivector MNP = sub(deviation_field(J, np, one, one),
                        endo_apply(n, deviation_field(J, P, one, one)));
  Multivector Xf = xnp_field(J, P, n, one, one);

  Sampling s;
  std::vector<Point> pts = sample_points(3, s);
  double worst_good = 0.0, worst_flipped = 0.0;
  for (int a = 0; a < 4; ++a) {
    AForm al = frame_element(a);
    Expr da_np = bivector_form_pairing(np, differential(J.A, al));
    Expr da_nstar =
        bivector_form_pairing(P, differential(J.A, pull_cocycle(n, al)));
    Expr lhs = fsub(pairing(al, MNP), pairing(al, Xf));
    Report ok = exprs_report("test", "mnp", {fsub(lhs, fsub(da_nstar, da_np))},
                             pts, s);
    Report flip = exprs_report(
        "test", "mnp_flip",
        {fsub(lhs, fsub(fneg(da_nstar), da_np))}, pts, s);
    worst_good = std::max(worst_good, ok.residual);
    worst_flipped = std::max(worst_flipped, flip.residual);
  }
  CHECK(worst_good <= s.tol);
  // Flipping the sign of the composite interior-product term must not pass:
  // this freezes the orientation of the relation.
  CHECK(worst_flipped > 1e-3);
}

TEST_CASE("modular battery accepts curved volume data") {
  JacobiAlgebroid T = tangent2();
  Multivector P = pi_bivector(T.A.vars);
  VolumeData vol;
  vol.eta = Expr::constant(1.0);
  vol.mu = parse_expr("2+y*y", T.A.vars);
  vol.nu = parse_expr("1+x*x", T.A.vars);
  Sampling s;
  s.points = 10;
  std::vector<Report> rs = modular_battery(T, P, nullptr, vol, nullptr, s);
  CHECK(all_pass(rs));
}

TEST_CASE("duality battery with a non-unit pairing-normalized volume") {
  JacobiAlgebroid T = tangent2();
  Multivector P = pi_bivector(T.A.vars);
  VolumeData vol;
  vol.eta = parse_expr("1/(1+x*x)", T.A.vars);
  vol.nu = parse_expr("1+x*x", T.A.vars);
  vol.mu = parse_expr("2+y*y", T.A.vars);
  Sampling s;
  s.points = 10;
  CHECK(all_pass(duality_battery(T, P, vol, s)));
}

TEST_CASE("declared twist primitive closes the witness") {
  VarSpace vars({"x", "y"});
  Algebroid A = tangent_algebroid(vars);
  Expr g = parse_expr("x", vars);
  JacobiAlgebroid J{A, differential(A, scalar_graded(g)).normalized()};
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::constant(1.0));
  VolumeData vol;
  Sampling s;
  s.points = 10;
  std::vector<Report> rs = modular_battery(J, P, nullptr, vol, &g, s);
  CHECK(all_pass(rs));
  bool found = false;
  for (const Report& r : rs)
    if (r.anchor == "twist_exactness_witness") found = r.pass;
  CHECK(found);
}
