#include "doctest.h"
#include "jnalg/jacobi.hpp"

using namespace jnalg;

namespace {

BaseJacobiPair contact() {
  VarSpace vm({"x", "y", "z"});
  BaseJacobiPair pair;
  pair.base_vars = vm;
  pair.Lambda.degree = 2;
  pair.Lambda.add_term({0, 1}, Expr::constant(1.0));
  pair.Lambda.add_term({1, 2}, parse_expr("-y", vm));
  pair.E.degree = 1;
  pair.E.add_term({2}, Expr::constant(1.0));
  return pair;
}

}  // namespace

TEST_CASE("cylinder presentation") {
  VarSpace vm({"x", "y", "z"});
  Algebroid cyl = cylinder_algebroid(vm);
  CHECK(cyl.rank == 4);
  CHECK(is_cylinder(cyl));
  CHECK_FALSE(is_cylinder(tangent_algebroid(vm)));
  CHECK(cyl.anchor[1][1].is_const(1.0));
  CHECK(cyl.anchor[3][2].is_const(0.0));
}

TEST_CASE("split differentials on the cylinder") {
  VarSpace vm({"x", "y", "z"});
  Algebroid cyl = cylinder_algebroid(vm);
  Algebroid tan = tangent_algebroid(vm);
  JacobiAlgebroid J{cyl, frame_element(3)};

  AForm a;
  a.degree = 1;
  a.add_term({0}, parse_expr("x*z", vm));
  AForm b = scalar_graded(parse_expr("x*y", vm));
  AForm w = add(a, wedge(frame_element(3), b));

  // d(a, b) = (da, -db)
  Coeffs plain = sub(differential(cyl, w),
                     add(differential(tan, a),
                         wedge(frame_element(3), scale(-1.0, differential(tan, b)))));
  CHECK(plain.normalized().is_zero());

  // twisted: d(a, b) = (da, a - db)
  Coeffs twisted =
      sub(phi_diff(J, w),
          add(differential(tan, a),
              wedge(frame_element(3), add(a, scale(-1.0, differential(tan, b))))));
  CHECK(twisted.normalized().is_zero());
}

TEST_CASE("pair embedding and sharp slots") {
  BaseJacobiPair pair = contact();
  Multivector P = embed_base_pair(pair, 4);
  CHECK(P.coeff({2, 3}).is_const(-1.0));

  Algebroid cyl = cylinder_algebroid(pair.base_vars);
  JacobiAlgebroid J{cyl, frame_element(3)};

  // (Lam,E)#(0,1) = (E,0)
  Multivector su = sharp(P, frame_element(3));
  CHECK(sub(su, pair.E).normalized().is_zero());

  // X0 = (-E, 0)
  Multivector x0 = x0_section(J, P);
  CHECK(sub(x0, scale(-1.0, pair.E)).normalized().is_zero());

  BaseJacobiPair back = induced_base_jacobi(cyl, P);
  CHECK(sub(back.Lambda, pair.Lambda).normalized().is_zero());
  CHECK(sub(back.E, pair.E).normalized().is_zero());
  CHECK_THROWS_AS(induced_base_jacobi(tangent_algebroid(pair.base_vars), P),
                  std::invalid_argument);
}

TEST_CASE("twisted self-bracket on the small abelian structure") {
  VarSpace vars({"x"});
  Algebroid A;
  A.vars = vars;
  A.rank = 2;
  A.anchor.assign(2, std::vector<Expr>(1, Expr::constant(0.0)));
  JacobiAlgebroid J{A, frame_element(0)};
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::var(0, "x"));
  // Every candidate term exceeds the rank, so this is exactly zero.
  CHECK(sj_bracket(J, P, P).normalized().is_zero());
  Point p = {0.5};
  CHECK(eval(biv_pairing(P, frame_element(0), frame_element(1)), p) ==
        doctest::Approx(0.5));
  Sampling s;
  CHECK(is_jacobi_bivector(J, P, s).pass);
}

TEST_CASE("base pair identities gate bad data") {
  Sampling s;
  CHECK(all_pass(check_base_pair(contact(), s)));

  // z dx^dy alone is Poisson, so pair it with a vector field that breaks
  // both defining identities.
  VarSpace vm({"x", "y", "z"});
  BaseJacobiPair bad;
  bad.base_vars = vm;
  bad.Lambda.degree = 2;
  bad.Lambda.add_term({0, 1}, Expr::var(2, "z"));
  bad.E.degree = 1;
  bad.E.add_term({2}, Expr::constant(1.0));
  CHECK_FALSE(all_pass(check_base_pair(bad, s)));
}

TEST_CASE("jet bracket matches the general dual bracket") {
  BaseJacobiPair pair = contact();
  Algebroid cyl = cylinder_algebroid(pair.base_vars);
  JacobiAlgebroid J{cyl, frame_element(3)};
  Multivector P = embed_base_pair(pair, 4);
  Sampling s;
  std::vector<Point> pts = sample_points(3, s);

  AForm w1 = add(frame_element(0), scale(parse_expr("x+y", pair.base_vars),
                                         frame_element(3)));
  AForm w2 = frame_element(2);
  Coeffs diff = sub(dual_bracket(J, P, w1, w2), jet_bracket(pair, w1, w2));
  CHECK(coeffs_report("test", "jet", diff, pts, s).pass);

  Algebroid jet = jet_algebroid(pair);
  CHECK(jet.rank == 4);
  // last anchor row carries E
  CHECK(jet.anchor[3][2].is_const(1.0));
  CHECK(all_pass(validate_algebroid(jet, s)));
}
