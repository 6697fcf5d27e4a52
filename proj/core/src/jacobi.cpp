#include "jnalg/jacobi.hpp"

#include <stdexcept>

namespace jnalg {

Report check_cocycle(const Algebroid& A, const AForm& phi, const Sampling& s,
                     const std::string& anchor) {
  std::vector<Point> pts = sample_points(A.vars.size(), s);
  return coeffs_report("check_cocycle", anchor, differential(A, phi), pts, s);
}

std::vector<Report> validate_jacobi(const JacobiAlgebroid& J, const Sampling& s) {
  std::vector<Report> out = validate_algebroid(J.A, s);
  out.push_back(check_cocycle(J.A, J.phi0, s));
  return out;
}

AForm phi_diff(const JacobiAlgebroid& J, const AForm& w) {
  return add(differential(J.A, w), wedge(J.phi0, w)).normalized();
}

AForm phi_lie(const JacobiAlgebroid& J, const Multivector& X, const AForm& w) {
  int p = X.degree;
  AForm a = contract_mv(X, phi_diff(J, w));
  AForm b = phi_diff(J, contract_mv(X, w));
  return add(a, scale(((p - 1) & 1) ? -1.0 : 1.0, b)).normalized();
}

Multivector sj_bracket(const JacobiAlgebroid& J, const Multivector& P,
                       const Multivector& Q) {
  int p = P.degree;
  int q = Q.degree;
  Multivector out = schouten(J.A, P, Q);
  out = add(out, scale(static_cast<double>(p - 1),
                       wedge(P, contract_form(J.phi0, Q))));
  double sgn = ((p - 1) & 1) ? 1.0 : -1.0;  // -(-1)^{p-1}
  out = add(out, scale(sgn * static_cast<double>(q - 1),
                       wedge(contract_form(J.phi0, P), Q)));
  return out.normalized();
}

Multivector sharp(const Multivector& P, const AForm& alpha) {
  return contract_form(alpha, P);
}

Expr biv_pairing(const Multivector& P, const AForm& a, const AForm& b) {
  return pairing(b, sharp(P, a));
}

Report is_jacobi_bivector(const JacobiAlgebroid& J, const Multivector& P,
                          const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  return coeffs_report("is_jacobi_bivector", "twisted_self_bracket",
                       sj_bracket(J, P, P), pts, s);
}

Multivector x0_section(const JacobiAlgebroid& J, const Multivector& P) {
  return scale(-1.0, sharp(P, J.phi0)).normalized();
}

AForm dual_bracket(const JacobiAlgebroid& J, const Multivector& P,
                   const AForm& a, const AForm& b) {
  AForm t1 = phi_lie(J, sharp(P, a), b);
  AForm t2 = phi_lie(J, sharp(P, b), a);
  AForm t3 = phi_diff(J, scalar_graded(biv_pairing(P, a, b)));
  return sub(sub(t1, t2), t3).normalized();
}

Algebroid dual_structure(const JacobiAlgebroid& J, const Multivector& P) {
  Algebroid out;
  out.vars = J.A.vars;
  out.rank = J.A.rank;
  for (int a = 0; a < out.rank; ++a)
    out.anchor.push_back(J.A.rho_of(sharp(P, frame_element(a))));
  for (int i = 0; i < out.rank; ++i) {
    for (int j = i + 1; j < out.rank; ++j) {
      AForm br = dual_bracket(J, P, frame_element(i), frame_element(j));
      std::map<int, Expr> entry;
      for (const auto& [A, v] : br.c) entry.emplace(A.at(0), v);
      if (!entry.empty()) out.structure.emplace(std::make_pair(i, j), std::move(entry));
    }
  }
  return out;
}

JacobiAlgebroid TriangularJB::dual_jacobi() const {
  AForm x0_form;
  x0_form.degree = 1;
  x0_form.c = X0.c;
  return JacobiAlgebroid{dual, x0_form};
}

TriangularJB build_dual_algebroid(const JacobiAlgebroid& J, const Multivector& P,
                                  const Sampling& s) {
  Report gate = is_jacobi_bivector(J, P, s);
  if (!gate.pass)
    throw std::invalid_argument(
        "bivector fails the closure gate (twisted self-bracket residual " +
        std::to_string(gate.residual) + ")");
  TriangularJB out;
  out.J = J;
  out.P = P;
  out.dual = dual_structure(J, P);
  out.X0 = x0_section(J, P);
  return out;
}

// ----------------------------------------------------------- cylinder type

namespace {

bool is_cylinder_type(const Algebroid& A) {
  std::size_t m = A.vars.size();
  if (A.rank != static_cast<int>(m) + 1) return false;
  if (!A.structure.empty()) return false;
  for (int a = 0; a < A.rank; ++a) {
    for (std::size_t u = 0; u < m; ++u) {
      Expr v = simplify_basic(A.anchor[static_cast<std::size_t>(a)][u]);
      double want = (a < A.rank - 1 && static_cast<std::size_t>(a) == u) ? 1.0 : 0.0;
      if (!v.is_const(want)) return false;
    }
  }
  return true;
}

}  // namespace

Algebroid cylinder_algebroid(const VarSpace& base_vars) {
  Algebroid out;
  out.vars = base_vars;
  std::size_t m = base_vars.size();
  out.rank = static_cast<int>(m) + 1;
  for (int a = 0; a < out.rank; ++a) {
    std::vector<Expr> row;
    row.reserve(m);
    for (std::size_t u = 0; u < m; ++u)
      row.push_back(Expr::constant(
          (a < out.rank - 1 && static_cast<std::size_t>(a) == u) ? 1.0 : 0.0));
    out.anchor.push_back(std::move(row));
  }
  return out;
}

bool is_cylinder(const Algebroid& A) { return is_cylinder_type(A); }

BaseJacobiPair induced_base_jacobi(const Algebroid& A, const Multivector& P) {
  if (!is_cylinder_type(A))
    throw std::invalid_argument(
        "base pair extraction requires a cylinder-type frame");
  int last = A.rank - 1;
  BaseJacobiPair out;
  out.base_vars = A.vars;
  out.Lambda.degree = 2;
  out.E.degree = 1;
  for (const auto& [T, v] : P.c) {
    if (T.size() != 2) throw std::invalid_argument("expected a bivector");
    if (T[1] == last) {
      // P = Lambda + e_last ^ E stores -E_a at (a, last).
      out.E.add_term({T[0]}, fneg(v));
    } else {
      out.Lambda.add_term(T, v);
    }
  }
  out.Lambda = out.Lambda.normalized();
  out.E = out.E.normalized();
  return out;
}

Multivector embed_base_pair(const BaseJacobiPair& pair, int rank) {
  return add(pair.Lambda, wedge(frame_element(rank - 1), pair.E)).normalized();
}

std::vector<Report> check_base_pair(const BaseJacobiPair& pair, const Sampling& s) {
  Algebroid M = tangent_algebroid(pair.base_vars);
  std::vector<Point> pts = sample_points(M.vars.size(), s);
  std::vector<Report> out;
  Multivector c1 = add(schouten(M, pair.Lambda, pair.Lambda),
                       scale(2.0, wedge(pair.E, pair.Lambda)));
  out.push_back(coeffs_report("check_base_pair", "self_bracket_identity", c1, pts, s));
  out.push_back(coeffs_report("check_base_pair", "invariance_identity",
                              schouten(M, pair.E, pair.Lambda), pts, s));
  return out;
}

AForm jet_bracket(const BaseJacobiPair& pair, const AForm& w1, const AForm& w2) {
  Algebroid tan = tangent_algebroid(pair.base_vars);
  int m = static_cast<int>(pair.base_vars.size());
  auto split_a = [&](const AForm& w) {
    AForm a;
    a.degree = 1;
    for (int u = 0; u < m; ++u) a.add_term({u}, w.coeff({u}));
    return a;
  };
  AForm a1 = split_a(w1), a2 = split_a(w2);
  Expr f1 = w1.coeff({m}), f2 = w2.coeff({m});

  Multivector sh1 = contract_form(a1, pair.Lambda);
  Multivector sh2 = contract_form(a2, pair.Lambda);
  Expr lam12 = biv_pairing(pair.Lambda, a1, a2);
  Coeffs slot1 =
      add(add(add(lie_derivative(tan, sh1, a2),
                  scale(-1.0, lie_derivative(tan, sh2, a1))),
              add(scale(-1.0, differential(tan, scalar_graded(lam12))),
                  scale(f1, lie_derivative(tan, pair.E, a2)))),
          add(scale(fneg(f2), lie_derivative(tan, pair.E, a1)),
              scale(-1.0, contract_mv(pair.E, wedge(a1, a2)))));

  auto direction = [&](const Expr& g) {
    return pairing(differential(tan, scalar_graded(g)), pair.E);
  };
  AForm df1 = differential(tan, scalar_graded(f1));
  AForm df2 = differential(tan, scalar_graded(f2));
  Expr slot2 =
      fadd(fsub(fadd(fneg(lam12), biv_pairing(pair.Lambda, a1, df2)),
                biv_pairing(pair.Lambda, a2, df1)),
           fsub(fmul(f1, direction(f2)), fmul(f2, direction(f1))));
  return add(slot1, scale(slot2, frame_element(m))).normalized();
}

Algebroid jet_algebroid(const BaseJacobiPair& pair) {
  int m = static_cast<int>(pair.base_vars.size());
  Algebroid out;
  out.vars = pair.base_vars;
  out.rank = m + 1;
  out.anchor.assign(static_cast<std::size_t>(m + 1),
                    std::vector<Expr>(static_cast<std::size_t>(m),
                                      Expr::constant(0.0)));
  for (int a = 0; a < m; ++a) {
    Multivector row = contract_form(frame_element(a), pair.Lambda);
    for (int u = 0; u < m; ++u)
      out.anchor[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)] =
          row.coeff({u});
  }
  for (int u = 0; u < m; ++u)
    out.anchor[static_cast<std::size_t>(m)][static_cast<std::size_t>(u)] =
        pair.E.coeff({u});
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      AForm br = jet_bracket(pair, frame_element(i), frame_element(j));
      for (const auto& [T, c] : br.c) out.structure[{i, j}][T.at(0)] = c;
    }
  return out;
}

std::vector<Report> bivectors_compatible(const JacobiAlgebroid& J,
                                         const Multivector& P1,
                                         const Multivector& P2, const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out;
  Multivector S = sj_bracket(J, P1, P2);
  out.push_back(
      coeffs_report("bivectors_compatible", "twisted_bracket_vanishes", S, pts, s));
  Multivector R1 = add(add(schouten(J.A, P1, P2),
                           wedge(contract_form(J.phi0, P1), P2)),
                       wedge(contract_form(J.phi0, P2), P1));
  out.push_back(coeffs_report("bivectors_compatible", "expanded_form_matches",
                              sub(R1, S), pts, s));
  return out;
}

std::vector<Report> check_base_compatibility(const JacobiAlgebroid& J,
                                             const Multivector& P1,
                                             const Multivector& P2,
                                             const Sampling& s) {
  BaseJacobiPair b1 = induced_base_jacobi(J.A, P1);
  BaseJacobiPair b2 = induced_base_jacobi(J.A, P2);
  Algebroid M = tangent_algebroid(J.A.vars);
  int last = J.A.rank - 1;

  Multivector S = sj_bracket(J, P1, P2);
  Multivector S_pure;
  S_pure.degree = 3;
  Multivector S_mixed;
  S_mixed.degree = 2;
  for (const auto& [A, v] : S.c) {
    auto pos = A.end();
    for (auto it = A.begin(); it != A.end(); ++it)
      if (*it == last) pos = it;
    if (pos == A.end()) {
      S_pure.add_term(A, v);
    } else {
      IdxTuple B;
      for (int idx : A)
        if (idx != last) B.push_back(idx);
      int moves = static_cast<int>(A.size()) - 1 - static_cast<int>(pos - A.begin());
      S_mixed.add_term(B, (moves & 1) ? fneg(v) : v);
    }
  }

  Multivector cond1 = add(add(schouten(M, b1.Lambda, b2.Lambda),
                              wedge(b1.E, b2.Lambda)),
                          wedge(b2.E, b1.Lambda));
  Multivector cond2 = add(schouten(M, b1.E, b2.Lambda), schouten(M, b2.E, b1.Lambda));

  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out;
  out.push_back(coeffs_report("check_base_compatibility", "pure_part_matches_base",
                              sub(S_pure, cond1), pts, s));
  out.push_back(coeffs_report("check_base_compatibility", "mixed_part_matches_base",
                              sub(S_mixed, cond2), pts, s));
  return out;
}

}  // namespace jnalg
