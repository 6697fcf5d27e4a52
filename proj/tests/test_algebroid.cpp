#include "doctest.h"
#include "jnalg/algebroid.hpp"

using namespace jnalg;

namespace {

Algebroid abelian(int rank, const VarSpace& vars) {
  Algebroid A;
  A.vars = vars;
  A.rank = rank;
  A.anchor.assign(static_cast<std::size_t>(rank),
                  std::vector<Expr>(vars.size(), Expr::constant(0.0)));
  return A;
}

Algebroid so3() {
  VarSpace vars({"x", "y", "z"});
  auto X = [&](const char* s) { return parse_expr(s, vars); };
  Algebroid A;
  A.vars = vars;
  A.rank = 3;
  A.anchor = {{X("0"), X("z"), X("-y")},
              {X("-z"), X("0"), X("x")},
              {X("y"), X("-x"), X("0")}};
  A.structure[{0, 1}][2] = Expr::constant(1.0);
  A.structure[{1, 2}][0] = Expr::constant(1.0);
  A.structure[{0, 2}][1] = Expr::constant(-1.0);
  return A;
}

}  // namespace

TEST_CASE("tuple ordering primitives") {
  IdxTuple t = {1, 0};
  CHECK(sort_sign(t) == -1);
  CHECK(t == IdxTuple{0, 1});
  IdxTuple r = {2, 2};
  CHECK(sort_sign(r) == 0);
}

TEST_CASE("contraction sign pins") {
  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::constant(1.0));

  Multivector c = contract_form(frame_element(0), P);
  CHECK(c.coeff({1}).is_const(1.0));
  CHECK(c.coeff({0}).is_const(0.0));
  CHECK(contract_form(frame_element(1), P).coeff({0}).is_const(-1.0));

  AForm w2;
  w2.degree = 2;
  w2.add_term({0, 1}, Expr::constant(1.0));
  CHECK(contract_mv(P, w2).coeff({}).is_const(1.0));
  CHECK(pairing(w2, P).is_const(1.0));
}

TEST_CASE("wedge expands bilinearly") {
  VarSpace vars({"x", "y"});
  Multivector a = scale(Expr::var(0, "x"), frame_element(0));
  Multivector b = add(scale(Expr::var(1, "y"), frame_element(1)), frame_element(2));
  Multivector w = wedge(a, b);
  Point p = {0.5, -0.3};
  CHECK(eval(w.coeff({0, 1}), p) == doctest::Approx(0.5 * -0.3));
  CHECK(eval(w.coeff({0, 2}), p) == doctest::Approx(0.5));
  CHECK(wedge(a, a).normalized().is_zero());
}

TEST_CASE("validation flags a non-antisymmetric structure table") {
  VarSpace vars({"x"});
  Algebroid A = abelian(2, vars);
  A.structure[{0, 1}][0] = Expr::constant(1.0);
  A.structure[{1, 0}][0] = Expr::constant(1.0);
  Sampling s;
  CHECK_FALSE(all_pass(validate_algebroid(A, s)));
}

TEST_CASE("so(3) action algebroid validates") {
  Sampling s;
  CHECK(all_pass(validate_algebroid(so3(), s)));
  Algebroid A = so3();
  std::vector<Point> pts = sample_points(A.vars.size(), s);

  // d is a differential and the frame bracket feeds back into it.
  AForm f = scalar_graded(parse_expr("x*y + sin(z)", A.vars));
  Report r = coeffs_report("test", "ddf", differential(A, differential(A, f)), pts, s);
  CHECK(r.pass);
}

TEST_CASE("abelian corner cases") {
  VarSpace vars({"x"});
  Algebroid A = abelian(3, vars);
  Sampling s;
  CHECK(all_pass(validate_algebroid(A, s)));
  CHECK(differential(A, frame_element(1)).normalized().is_zero());

  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::var(0, "x"));
  CHECK(schouten(A, P, P).normalized().is_zero());

  AForm w;
  w.degree = 1;
  w.add_term({2}, Expr::constant(4.0));
  CHECK(lie_derivative(A, P, w).normalized().is_zero());
}

TEST_CASE("tangent algebroid calculus") {
  VarSpace vars({"x", "y"});
  Algebroid A = tangent_algebroid(vars);
  Sampling s;
  std::vector<Point> pts = sample_points(2, s);

  Multivector P;
  P.degree = 2;
  P.add_term({0, 1}, Expr::constant(1.0));
  CHECK(coeffs_report("test", "pp", schouten(A, P, P), pts, s).pass);

  // Cartan-formula pin: L_{d/dx}(x dy) = dy.
  AForm w = scale(parse_expr("x", vars), frame_element(1));
  AForm lw = lie_derivative(A, frame_element(0), w);
  CHECK(sub(lw, frame_element(1)).normalized().is_zero());
}

TEST_CASE("anchor pushforward of a bivector") {
  VarSpace vars({"x", "y", "z"});
  Algebroid A = tangent_algebroid(vars);
  Multivector P;
  P.degree = 2;
  P.add_term({0, 2}, Expr::var(1, "y"));
  Multivector out = anchor_push_bivector(A, P);
  Point p = {0.2, 0.8, -0.1};
  CHECK(eval(out.coeff({0, 2}), p) == doctest::Approx(0.8));
  CHECK_THROWS_AS(anchor_push_bivector(A, frame_element(0)), std::invalid_argument);
}
