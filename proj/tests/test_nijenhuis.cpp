#include <cmath>

#include "doctest.h"
#include "jnalg/modular.hpp"

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

struct Tmr {
  VarSpace vm{std::vector<std::string>{"x", "y", "z"}};
  JacobiAlgebroid J;
  Multivector P;
  Tmr() {
    J.A = cylinder_algebroid(vm);
    J.phi0 = frame_element(3);
    Multivector Lam;
    Lam.degree = 2;
    Lam.add_term({0, 1}, Expr::constant(1.0));
    Lam.add_term({1, 2}, parse_expr("-y", vm));
    Multivector E;
    E.degree = 1;
    E.add_term({2}, Expr::constant(1.0));
    P = embed_base_pair(BaseJacobiPair{vm, Lam, E}, 4);
  }
};

// A deliberately torsion-carrying operator on the contact cylinder.
Endo n_six(const VarSpace& vm) {
  auto X = [&](const char* s) { return parse_expr(s, vm); };
  Endo n;
  n.rank = 4;
  n.m = {{X("z+1"), X("0"), X("0"), X("-1")},
         {X("0"), X("z+1"), X("0"), X("-y-1")},
         {X("1"), X("-1"), X("z+2"), X("-y")},
         {X("0"), X("0"), X("0"), X("z+2")}};
  return n;
}

}  // namespace

TEST_CASE("endomorphism algebra") {
  Endo c = endo_conformal(Expr::constant(3.0), 2);
  CHECK(endo_trace(c).is_const(6.0));
  CHECK(endo_det(c).is_const(9.0));
  CHECK(endo_pow(c, 2).m[0][0].is_const(9.0));
  CHECK(simplify_basic(endo_inverse(c).m[1][1]).is_const(1.0 / 3.0));

  VarSpace vars({"x"});
  Endo d;
  d.rank = 2;
  d.m = {{Expr::var(0, "x"), Expr::constant(0.0)},
         {Expr::constant(0.0), Expr::constant(0.0)}};
  CHECK_THROWS_AS(endo_inverse(d), std::invalid_argument);
  CHECK_THROWS_AS(hierarchy_hamiltonian(d, 0), std::invalid_argument);
  CHECK_THROWS_AS(endo_inverse(endo_identity(4)), std::invalid_argument);
  CHECK_THROWS_AS(hierarchy_hamiltonian(d, -1), std::invalid_argument);
}

TEST_CASE("hamiltonian ladder values for a constant conformal operator") {
  Endo c = endo_conformal(Expr::constant(2.0), 2);
  Point p = {};
  CHECK(eval(hierarchy_hamiltonian(c, 1), p) == doctest::Approx(4.0));
  CHECK(eval(hierarchy_hamiltonian(c, 2), p) == doctest::Approx(4.0));
  CHECK(eval(hierarchy_hamiltonian(c, 0), p) == doctest::Approx(std::log(4.0)));
  CHECK(is_zero_expr(simplify_basic(hierarchy_hamiltonian(endo_identity(3), 0))));
}

TEST_CASE("transpose action pin") {
  VarSpace vars({"x"});
  Endo n;
  n.rank = 2;
  n.m = {{Expr::var(0, "x"), Expr::constant(0.0)},
         {Expr::constant(0.0), Expr::constant(1.0)}};
  AForm phi1 = pull_cocycle(n, frame_element(0));
  Point p = {0.7};
  CHECK(eval(phi1.coeff({0}), p) == doctest::Approx(0.7));
  CHECK(phi1.coeff({1}).is_const(0.0));
}

TEST_CASE("conformal operators are torsion free") {
  VarSpace vars({"x", "y"});
  Algebroid A = tangent_algebroid(vars);
  Endo n = endo_conformal(parse_expr("2+x*x+y", vars), 2);
  Sampling s;
  CHECK(check_torsion_free(A, n, s).pass);

  Algebroid d = deform(A, n, s);  // must not throw
  CHECK(d.rank == 2);
  CHECK(all_pass(validate_algebroid(d, s)));
}

TEST_CASE("torsion-carrying operator is rejected by the gate") {
  Tmr t;
  Endo n6 = n_six(t.vm);
  Sampling s;
  CHECK_FALSE(check_torsion_free(t.J.A, n6, s).pass);
  CHECK_THROWS_AS(deform(t.J.A, n6, s), std::invalid_argument);
}

TEST_CASE("composite bivector pins on the torsion-carrying operator") {
  Tmr t;
  Endo n6 = n_six(t.vm);
  Multivector np = np_bivector_unchecked(t.J.A, t.P, n6);
  Sampling s;
  // NP stays antisymmetric even though N carries torsion.
  CHECK(np_antisym_residual(t.J.A, t.P, n6, s) <= s.tol);

  // ... but it is not closed for the twisted bracket: frozen coefficients.
  Multivector br = sj_bracket(t.J, np, np);
  Point p = {0.3, -0.4, 0.2};
  CHECK(eval(br.coeff({0, 1, 2}), p) == doctest::Approx(2 * -0.4));
  CHECK(eval(br.coeff({0, 1, 3}), p) == doctest::Approx(2 * 0.2 + 4));
  CHECK(eval(br.coeff({0, 2, 3}), p) == doctest::Approx(2.0));
  CHECK(eval(br.coeff({1, 2, 3}), p) == doctest::Approx(2.0));

  // First transported section still matches N X0.
  Multivector x1 = x0_section(t.J, np);
  Multivector want = endo_apply(n6, x0_section(t.J, t.P));
  std::vector<Point> pts = sample_points(3, s);
  CHECK(coeffs_report("test", "x1", sub(x1, want), pts, s).pass);
}

TEST_CASE("asymmetric composite is rejected") {
  JacobiAlgebroid J = abelian2();
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::var(0, "x"));
  Endo n;
  n.rank = 2;
  n.m = {{Expr::constant(1.0), Expr::constant(0.0)},
         {Expr::constant(0.0), Expr::constant(2.0)}};
  Sampling s;
  CHECK(np_antisym_residual(J.A, P, n, s) > s.tol);
  CHECK_THROWS_AS(np_bivector(J.A, P, n, s), np_error);
}

TEST_CASE("deforming the abelian structure changes nothing") {
  JacobiAlgebroid J = abelian2();
  VarSpace vars = J.A.vars;
  Endo n;
  n.rank = 2;
  n.m = {{parse_expr("sin(x)", vars), parse_expr("x", vars)},
         {parse_expr("1+x", vars), parse_expr("2", vars)}};
  Algebroid d = deform_unchecked(J.A, n);
  CHECK(d.structure.empty());
  for (const auto& row : d.anchor)
    for (const Expr& e : row) CHECK(is_zero_expr(simplify_basic(e)));
}

TEST_CASE("incompatible operator shows up in the battery") {
  VarSpace vars({"z"});
  Algebroid cyl = cylinder_algebroid(vars);
  JacobiAlgebroid J{cyl, frame_element(1)};
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::constant(-1.0));
  auto X = [&](const char* s) { return parse_expr(s, vars); };
  Endo bad;
  bad.rank = 2;
  bad.m = {{X("z"), X("0")}, {X("sin(z)"), X("z")}};
  Sampling s;
  CHECK_FALSE(all_pass(is_compatible(J, P, bad, s)));

  Endo good = endo_conformal(X("2+z*z"), 2);
  CHECK(all_pass(is_compatible(J, P, good, s)));
  CHECK(all_pass(strong_compatibility(J, P, good, s)));
}

TEST_CASE("hierarchy levels stack conformally") {
  JacobiAlgebroid J = abelian2();
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::var(0, "x"));
  Endo n = endo_conformal(parse_expr("2+sin(x)", J.A.vars), 2);
  std::vector<HierarchyLevel> lv = dual_hierarchy(J, P, n, 3);
  CHECK(lv.size() == 4);
  Sampling s;
  std::vector<Point> pts = sample_points(1, s);
  Multivector want = scale(parse_expr("2+sin(x)", J.A.vars), P);
  CHECK(coeffs_report("test", "p1", sub(lv[1].Pk, want), pts, s).pass);
  CHECK(all_pass(check_hierarchy(J, P, n, 3, s)));
}
