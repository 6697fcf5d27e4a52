#include "jnalg/batteries.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace jnalg {

PolyGen::PolyGen(VarSpace vars, std::uint64_t seed)
    : vars_(std::move(vars)), rng_(seed) {}

long PolyGen::randint(long lo, long hi) {
  return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

double PolyGen::uniform01() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

Expr PolyGen::poly(int deg) {
  Expr s = Expr::constant(static_cast<double>(randint(-2, 2)));
  for (std::size_t u = 0; u < vars_.size(); ++u) {
    Expr v = Expr::var(static_cast<int>(u), vars_.name(static_cast<int>(u)));
    s = fadd(s, fmul(Expr::constant(static_cast<double>(randint(-2, 2))), v));
  }
  if (deg > 1) {
    for (std::size_t a = 0; a < vars_.size(); ++a)
      for (std::size_t b = 0; b < vars_.size(); ++b)
        if (uniform01() < 0.3) {
          Expr va = Expr::var(static_cast<int>(a), vars_.name(static_cast<int>(a)));
          Expr vb = Expr::var(static_cast<int>(b), vars_.name(static_cast<int>(b)));
          s = fadd(s, fmul(Expr::constant(static_cast<double>(randint(-1, 1))),
                           fmul(va, vb)));
        }
  }
  return s;
}

Coeffs PolyGen::graded(int rank, int p, int deg) {
  Coeffs out;
  out.degree = p;
  for_each_tuple(rank, p, [&](const IdxTuple& A) { out.add_term(A, poly(deg)); });
  return out.normalized();
}

namespace {

IdxTuple top_tuple(int n) {
  IdxTuple t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
  return t;
}

AForm top_form(int rank, const Expr& coeff) {
  AForm w;
  w.degree = rank;
  w.add_term(top_tuple(rank), coeff);
  return w;
}

// Exactness-strengthened record: pass additionally requires every simplified
// coefficient of `diff` to vanish identically, not just at sample points.
Report exact_report(const std::string& check, const std::string& anchor,
                    const Coeffs& diff, const std::vector<Point>& pts,
                    const Sampling& s) {
  Report r = coeffs_report(check, anchor, diff, pts, s);
  r.pass = r.pass && diff.normalized().is_zero();
  return r;
}

}  // namespace

// ------------------------------------------------------------- gerstenhaber

std::vector<Report> gerstenhaber_battery(const JacobiAlgebroid& J,
                                         const Sampling& s) {
  const Algebroid& A = J.A;
  std::vector<Point> pts = sample_points(A.vars.size(), s);
  PolyGen g(A.vars, s.seed);
  std::vector<Report> out;

  {
    std::vector<Report> parts;
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        Multivector P = g.graded(A.rank, p);
        Multivector Q = g.graded(A.rank, q);
        double sgn = (((p - 1) & 1) && ((q - 1) & 1)) ? 1.0 : -1.0;
        Coeffs diff = sub(sj_bracket(J, P, Q), scale(sgn, sj_bracket(J, Q, P)));
        parts.push_back(coeffs_report("gerstenhaber", "pair", diff, pts, s));
      }
    out.push_back(merge_reports("gerstenhaber", "graded_antisymmetry", parts,
                                s.seed));
  }

  {
    static const int triples[][3] = {{1, 1, 1}, {1, 1, 2}, {2, 1, 1}, {1, 2, 2},
                                     {2, 2, 1}, {0, 1, 2}, {1, 0, 2}, {2, 2, 2}};
    std::vector<Report> parts;
    for (const auto& t : triples) {
      int p = t[0], q = t[1], r = t[2];
      Multivector P = g.graded(A.rank, p);
      Multivector Q = g.graded(A.rank, q);
      Multivector R = g.graded(A.rank, r);
      Coeffs lhs = sj_bracket(J, P, wedge(Q, R));
      Coeffs t1 = wedge(sj_bracket(J, P, Q), R);
      double s2 = (((p - 1) & 1) && (q & 1)) ? -1.0 : 1.0;
      Coeffs t2 = scale(s2, wedge(Q, sj_bracket(J, P, R)));
      double s3 = ((p - 1) & 1) ? 1.0 : -1.0;
      Coeffs t3 = scale(s3, wedge(contract_form(J.phi0, P), wedge(Q, R)));
      Coeffs diff = sub(lhs, add(add(t1, t2), t3));
      parts.push_back(coeffs_report("gerstenhaber", "triple", diff, pts, s));
    }
    out.push_back(merge_reports("gerstenhaber", "graded_leibniz", parts, s.seed));
  }

  {
    static const int triples[][3] = {{1, 1, 1}, {2, 1, 1}, {1, 2, 1},
                                     {2, 2, 1}, {2, 2, 2}, {1, 1, 3}};
    std::vector<Report> parts;
    for (const auto& t : triples) {
      int p = t[0], q = t[1], r = t[2];
      Multivector P = g.graded(A.rank, p);
      Multivector Q = g.graded(A.rank, q);
      Multivector R = g.graded(A.rank, r);
      auto sg = [](int a, int b) {
        return (((a - 1) & 1) && ((b - 1) & 1)) ? -1.0 : 1.0;
      };
      Coeffs t1 = scale(sg(p, r), sj_bracket(J, P, sj_bracket(J, Q, R)));
      Coeffs t2 = scale(sg(q, p), sj_bracket(J, Q, sj_bracket(J, R, P)));
      Coeffs t3 = scale(sg(r, q), sj_bracket(J, R, sj_bracket(J, P, Q)));
      parts.push_back(
          coeffs_report("gerstenhaber", "triple", add(add(t1, t2), t3), pts, s));
    }
    out.push_back(merge_reports("gerstenhaber", "graded_jacobi", parts, s.seed));
  }
  return out;
}

// ------------------------------------------------------------ poissonization

std::vector<Report> poissonization_battery(const JacobiAlgebroid& J,
                                           const Multivector* P,
                                           const Sampling& s) {
  ExtendedAlgebroid ext = extend(J);
  std::vector<Point> hpts = sample_points(ext.hat.vars.size(), s);
  PolyGen g(J.A.vars, s.seed);
  std::vector<Report> out;

  out.push_back(check_extension(ext, s));

  for (int k = 0; k <= 2 && k <= J.A.rank; ++k)
    out.push_back(check_gauging_differential(ext, g.graded(J.A.rank, k), s));

  static const int degree_pairs[][2] = {{1, 1}, {1, 2}, {2, 2}, {0, 2}};
  for (const auto& d : degree_pairs) {
    if (d[0] > J.A.rank || d[1] > J.A.rank) continue;
    out.push_back(check_gauging_bracket(ext, g.graded(J.A.rank, d[0]),
                                        g.graded(J.A.rank, d[1]), s));
  }

  if (P) {
    Multivector Pt = gauge_mv(ext, *P);
    out.push_back(coeffs_report("poissonize", "gauged_closure",
                                schouten(ext.hat, Pt, Pt), hpts, s));
    std::vector<Report> ungauged, gauged;
    for (int draw = 0; draw < 2; ++draw) {
      AForm a = g.one_form(J.A.rank);
      AForm b = g.one_form(J.A.rank);
      std::vector<Report> rs = check_dual_gauging(ext, *P, a, b, s);
      if (rs.size() == 2) {
        ungauged.push_back(rs[0]);
        gauged.push_back(rs[1]);
      }
    }
    out.push_back(
        merge_reports("poissonize", "dual_bracket_ungauged", ungauged, s.seed));
    out.push_back(
        merge_reports("poissonize", "dual_bracket_gauged", gauged, s.seed));
  }
  return out;
}

// ------------------------------------------------------------------ catalog

namespace {

struct JetForm {
  AForm a;    // covector slot over the base frame
  Expr f;     // function slot
};

}  // namespace

std::vector<Report> catalog_battery(const Sampling& s) {
  VarSpace vm({"x", "y", "z"});
  Algebroid cyl = cylinder_algebroid(vm);
  JacobiAlgebroid Jc{cyl, frame_element(3)};
  Algebroid tan = tangent_algebroid(vm);
  std::vector<Point> pts = sample_points(vm.size(), s);

  auto X = [&](const std::string& src) { return parse_expr(src, vm); };
  AForm e4 = frame_element(3);

  Multivector Lam;
  Lam.degree = 2;
  Lam.add_term({0, 1}, Expr::constant(1.0));
  Lam.add_term({1, 2}, X("-y"));
  Multivector Ev;
  Ev.degree = 1;
  Ev.add_term({2}, Expr::constant(1.0));
  Multivector PC = embed_base_pair(BaseJacobiPair{vm, Lam, Ev}, 4);

  std::vector<Report> out;

  // Differential splittings, coefficient-exact.
  {
    AForm a1;
    a1.degree = 1;
    a1.add_term({0}, X("x*z"));
    a1.add_term({1}, X("y"));
    AForm b1 = scalar_graded(X("x*y"));
    AForm w = add(a1, wedge(e4, b1));
    Coeffs got = differential(cyl, w);
    Coeffs want = add(differential(tan, a1),
                      wedge(e4, scale(-1.0, differential(tan, b1))));
    out.push_back(
        exact_report("catalog", "differential_splits(1)", sub(got, want), pts, s));
    Coeffs gotT = phi_diff(Jc, w);
    Coeffs wantT = add(differential(tan, a1),
                       wedge(e4, add(a1, scale(-1.0, differential(tan, b1)))));
    out.push_back(exact_report("catalog", "twisted_differential_splits(1)",
                               sub(gotT, wantT), pts, s));
  }
  {
    AForm a2;
    a2.degree = 2;
    a2.add_term({0, 1}, X("z"));
    a2.add_term({1, 2}, X("x*x"));
    AForm b2;
    b2.degree = 1;
    b2.add_term({0}, X("y"));
    b2.add_term({2}, X("x"));
    AForm w = add(a2, wedge(e4, b2));
    Coeffs got = differential(cyl, w);
    Coeffs want = add(differential(tan, a2),
                      wedge(e4, scale(-1.0, differential(tan, b2))));
    out.push_back(
        exact_report("catalog", "differential_splits(2)", sub(got, want), pts, s));
    Coeffs gotT = phi_diff(Jc, w);
    Coeffs wantT = add(differential(tan, a2),
                       wedge(e4, add(a2, scale(-1.0, differential(tan, b2)))));
    out.push_back(exact_report("catalog", "twisted_differential_splits(2)",
                               sub(gotT, wantT), pts, s));
  }

  // Sharp splitting (Lam,E)#(a,f) = (Lam# a + f E, -i_E a).
  {
    AForm a1;
    a1.degree = 1;
    a1.add_term({0}, X("x"));
    a1.add_term({1}, X("y*z"));
    Expr f1 = X("x+z");
    AForm w1 = add(a1, scale(f1, e4));
    Multivector got = sharp(PC, w1);
    Expr iEa = pairing(a1, Ev);
    Multivector want = add(add(contract_form(a1, Lam), scale(f1, Ev)),
                           scale(fneg(iEa), frame_element(3)));
    out.push_back(exact_report("catalog", "sharp_splits", sub(got, want), pts, s));
    out.push_back(exact_report("catalog", "sharp_unit_slot",
                               sub(sharp(PC, e4), Ev), pts, s));
    out.push_back(exact_report("catalog", "zero_section",
                               sub(x0_section(Jc, PC), scale(-1.0, Ev)), pts, s));
  }

  // 1-jet bracket against the slot formulas.
  std::vector<JetForm> jets;
  for (int u = 0; u < 3; ++u)
    jets.push_back({frame_element(u), Expr::constant(0.0)});
  jets.push_back({zero_graded(1), Expr::constant(1.0)});
  {
    AForm mixed;
    mixed.degree = 1;
    mixed.add_term({0}, X("x*y"));
    mixed.add_term({2}, X("1+z"));
    jets.push_back({mixed, X("x+y")});
  }

  BaseJacobiPair pairC{vm, Lam, Ev};
  {
    std::vector<Report> parts;
    for (std::size_t i1 = 0; i1 < jets.size(); ++i1)
      for (std::size_t i2 = 0; i2 < jets.size(); ++i2) {
        AForm w1 = add(jets[i1].a, scale(jets[i1].f, e4));
        AForm w2 = add(jets[i2].a, scale(jets[i2].f, e4));
        AForm got = dual_bracket(Jc, PC, w1, w2);
        parts.push_back(coeffs_report(
            "catalog", "pair", sub(got, jet_bracket(pairC, w1, w2)), pts, s));
      }
    out.push_back(merge_reports("catalog", "jet_bracket_matches_catalog", parts,
                                s.seed));
  }

  // Dual structure functions and anchor against the catalog presentation.
  {
    Algebroid dual = dual_structure(Jc, PC);
    Algebroid jet = jet_algebroid(pairC);
    std::vector<Report> parts;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        parts.push_back(coeffs_report(
            "catalog", "pair",
            sub(dual.bracket_frame(i, j), jet.bracket_frame(i, j)), pts, s));
    std::vector<Expr> anchor_diffs;
    for (int a = 0; a < 4; ++a)
      for (int u = 0; u < 3; ++u)
        anchor_diffs.push_back(fsub(
            dual.anchor[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)],
            jet.anchor[static_cast<std::size_t>(a)][static_cast<std::size_t>(u)]));
    parts.push_back(exprs_report("catalog", "anchors", anchor_diffs, pts, s));
    out.push_back(merge_reports("catalog", "dual_structure_matches_catalog",
                                parts, s.seed));
  }
  return out;
}

// ------------------------------------------------------------- check-jacobi

std::vector<Report> jacobi_battery(const JacobiAlgebroid& J,
                                   const Multivector& P, const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out;
  out.push_back(is_jacobi_bivector(J, P, s));

  Algebroid dual = dual_structure(J, P);
  out.push_back(merge_reports("check_jacobi", "dual_structure_valid",
                              validate_algebroid(dual, s), s.seed));

  Multivector X0 = x0_section(J, P);
  AForm x0_form;
  x0_form.degree = 1;
  x0_form.c = X0.c;
  out.push_back(coeffs_report("check_jacobi", "zero_section_dual_cocycle",
                              differential(dual, x0_form), pts, s));

  if (is_cylinder(J.A)) {
    BaseJacobiPair pair = induced_base_jacobi(J.A, P);
    std::vector<Report> base = check_base_pair(pair, s);
    out.insert(out.end(), base.begin(), base.end());
  }
  return out;
}

// -------------------------------------------------------------- check-compat

std::vector<Report> pair_battery(const JacobiAlgebroid& J, const Multivector& P,
                                 const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out;

  std::vector<Report> conf =
      bivectors_compatible(J, P, scale(7.0 / 3.0, P), s);
  out.insert(out.end(), conf.begin(), conf.end());

  if (is_cylinder(J.A)) {
    int m = static_cast<int>(J.A.vars.size());
    PolyGen g(J.A.vars, s.seed);
    BaseJacobiPair rp{J.A.vars, g.graded(m, 2), g.graded(m, 1)};
    Multivector P2 = embed_base_pair(rp, J.A.rank);

    out.push_back(coeffs_report(
        "check_compat", "bracket_symmetric",
        sub(sj_bracket(J, P, P2), sj_bracket(J, P2, P)), pts, s));

    Multivector R1 = add(add(schouten(J.A, P, P2),
                             wedge(contract_form(J.phi0, P), P2)),
                         wedge(contract_form(J.phi0, P2), P));
    out.push_back(coeffs_report("check_compat", "expanded_form_matches_random",
                                sub(R1, sj_bracket(J, P, P2)), pts, s));

    std::vector<Report> dec = check_base_compatibility(J, P, P2, s);
    out.insert(out.end(), dec.begin(), dec.end());
  }
  return out;
}

// ----------------------------------------------------------- check-nijenhuis

std::vector<Report> nijenhuis_battery(const JacobiAlgebroid& J,
                                      const Multivector* P, const Endo& n,
                                      const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out;

  out.push_back(check_torsion_free(J.A, n, s));

  if (P) {
    std::vector<double> w;
    double r = np_antisym_residual(J.A, *P, n, s, &w);
    Report rep;
    rep.check = "check_nijenhuis";
    rep.anchor = "np_antisymmetric";
    rep.residual = r;
    rep.pass = r <= s.tol;
    rep.witness = w;
    rep.seed = s.seed;
    out.push_back(rep);
  }

  Algebroid deformed = deform_unchecked(J.A, n);
  out.push_back(merge_reports("check_nijenhuis", "deformed_structure_valid",
                              validate_algebroid(deformed, s), s.seed));
  out.push_back(coeffs_report("check_nijenhuis", "pulled_cocycle_closed",
                              differential(deformed, pull_cocycle(n, J.phi0)),
                              pts, s));

  for (int k = 0; k <= 2; ++k) {
    AForm lhs =
        pull_cocycle(n, differential(J.A, scalar_graded(hierarchy_hamiltonian(n, k))));
    AForm rhs = differential(J.A, scalar_graded(hierarchy_hamiltonian(n, k + 1)));
    out.push_back(coeffs_report("check_nijenhuis",
                                "hamiltonian_ladder(" + std::to_string(k) + ")",
                                sub(lhs, rhs), pts, s));
  }
  return out;
}

// ---------------------------------------------------------------- hierarchy

std::vector<Report> hierarchy_battery(const JacobiAlgebroid& J,
                                      const Multivector& P, const Endo& n,
                                      int kmax, const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out = check_hierarchy(J, P, n, kmax, s);

  std::map<int, Multivector> first;
  std::map<int, std::vector<Report>> parts;
  for (int i = 0; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Multivector f = cross_field(J.A, P, n, i, j);
      int k = i + j;
      auto it = first.find(k);
      if (it == first.end()) {
        first.emplace(k, f);
      } else {
        parts[k].push_back(
            coeffs_report("hierarchy", "pair", sub(it->second, f), pts, s));
      }
    }
  for (int i = 1; i <= 3; ++i) {
    Multivector f0 = cross_field(J.A, P, n, i, 0);
    parts[i].push_back(
        coeffs_report("hierarchy", "pair", sub(first.at(i), f0), pts, s));
  }
  for (const auto& [k, ps] : parts)
    out.push_back(merge_reports(
        "hierarchy", "cross_level(" + std::to_string(k) + ")", ps, s.seed));

  if (is_cylinder(J.A)) {
    ExtendedAlgebroid ext = extend(J);
    std::vector<Point> hpts = sample_points(ext.hat.vars.size(), s);
    int m = static_cast<int>(J.A.vars.size());
    int last = J.A.rank - 1;
    Multivector Pi = P;
    for (int i = 0; i <= 1; ++i) {
      if (i > 0) Pi = np_bivector_unchecked(J.A, Pi, n);
      Multivector Pi_base = anchor_push_bivector(ext.hat, gauge_mv(ext, Pi));
      Multivector Ei;
      Ei.degree = 1;
      for (const auto& [T, c] : Pi.c)
        if (T.at(1) == last) Ei.add_term({T.at(0)}, fneg(c));
      Multivector Lam_i;
      Lam_i.degree = 2;
      for (const auto& [T, c] : Pi.c)
        if (T.at(1) != last) Lam_i.add_term(T, c);

      for (int j = 1; j <= 2; ++j) {
        Expr hj = hierarchy_hamiltonian(n, j);
        AForm dh;
        dh.degree = 1;
        for (int u = 0; u < m; ++u) dh.add_term({u}, diff(hj, u));
        Multivector fld =
            scale(-1.0, scale(ext.weight(1), contract_form(dh, Pi_base)));
        Multivector XM = scale(-1.0, contract_form(dh, Lam_i));
        Expr pairEd = Expr::constant(0.0);
        for (int u = 0; u < m; ++u)
          pairEd = fadd(pairEd, fmul(dh.coeff({u}), Ei.coeff({u})));
        Multivector want = add(XM, scale(pairEd, frame_element(m)));
        out.push_back(coeffs_report("hierarchy",
                                    "covered_field(" + std::to_string(i) + "," +
                                        std::to_string(j) + ")",
                                    sub(fld, want), hpts, s));
      }
    }
  }
  return out;
}

// ------------------------------------------------------------------ modular

std::vector<Report> modular_battery(const JacobiAlgebroid& J,
                                    const Multivector& P, const Endo* n,
                                    const VolumeData& vol,
                                    const Expr* phi0_primitive,
                                    const Sampling& s) {
  const Algebroid& A = J.A;
  int rank = A.rank;
  std::vector<Point> pts = sample_points(A.vars.size(), s);
  PolyGen g(A.vars, s.seed);
  Expr one = Expr::constant(1.0);
  std::vector<Report> out;

  AForm xiA = modular_form(A, vol.eta, vol.mu);
  out.push_back(coeffs_report("modular", "modular_form_closed",
                              differential(A, xiA), pts, s));

  {
    auto D = [&](int a, const Expr& f) {
      return fadd(A.rho_apply(a, f), fmul(J.phi0.coeff({a}), f));
    };
    std::vector<Report> parts;
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        Expr f = g.poly(2);
        Expr lhs = fsub(D(i, D(j, f)), D(j, D(i, f)));
        Expr rhs = Expr::constant(0.0);
        for (const auto& [k, c] : A.bracket_frame(i, j).c)
          rhs = fadd(rhs, fmul(c, D(k.at(0), f)));
        parts.push_back(
            exprs_report("modular", "pair", {fsub(lhs, rhs)}, pts, s));
      }
    out.push_back(merge_reports("modular", "flat_connection", parts, s.seed));
  }

  {
    std::vector<Report> parts;
    for (int r = 0; r < 3; ++r) {
      Expr f = exp(g.poly(1));
      AForm xi2 = modular_form(A, fmul(f, vol.eta), vol.mu);
      AForm want = add(xiA, differential(A, scalar_graded(ln(f))));
      parts.push_back(coeffs_report("modular", "rescale", sub(xi2, want), pts, s));
    }
    out.push_back(merge_reports("modular", "change_of_section", parts, s.seed));
  }
  {
    std::vector<Report> parts;
    for (int r = 0; r < 2; ++r) {
      Expr f = exp(g.poly(1));
      AForm xi3 = modular_form(A, vol.eta, fmul(f, vol.mu));
      AForm want = add(xiA, differential(A, scalar_graded(ln(f))));
      parts.push_back(coeffs_report("modular", "rescale", sub(xi3, want), pts, s));
    }
    out.push_back(merge_reports("modular", "change_of_volume", parts, s.seed));
  }

  AForm xiphi = jacobi_modular_form(J, vol.eta, vol.mu);
  out.push_back(coeffs_report("modular", "twisted_modular_closed",
                              differential(A, xiphi), pts, s));
  if (phi0_primitive) {
    AForm dg = differential(A, scalar_graded(*phi0_primitive));
    Coeffs diff = add(sub(xiphi, xiA),
                      scale(static_cast<double>(rank - 1), dg));
    out.push_back(
        coeffs_report("modular", "twist_exactness_witness", diff, pts, s));
  }

  ExtendedAlgebroid ext = extend(J);
  std::vector<Point> hpts = sample_points(ext.hat.vars.size(), s);

  out.push_back(coeffs_report(
      "modular", "extension_restriction",
      sub(modular_form(ext.hat, vol.eta, vol.mu), xiA), hpts, s));
  out.push_back(coeffs_report(
      "modular", "gauged_restriction_twist",
      sub(modular_form(ext.hat, fmul(ext.weight(-(rank - 1)), vol.eta), vol.mu),
          xiphi),
      hpts, s));

  Multivector Pt = gauge_mv(ext, P);
  JacobiAlgebroid hatJ{ext.hat, zero_graded(1)};
  Multivector X0 = x0_section(J, P);
  {
    Multivector xi_st = dual_modular_form(J, P, vol.nu, vol.mu);
    Multivector xi_hg = dual_modular_form(
        hatJ, Pt, fmul(ext.weight(rank), vol.nu), vol.mu);
    out.push_back(coeffs_report("modular", "dual_gauge_twisted",
                                sub(scale(ext.weight(1), xi_hg), xi_st), hpts,
                                s));
    Multivector xi_hu = dual_modular_form(hatJ, Pt, vol.nu, vol.mu);
    Multivector lhs2 = add(scale(ext.weight(1), xi_hu), X0);
    Multivector want2 =
        add(xi_st, scale(-static_cast<double>(rank - 1), X0));
    out.push_back(coeffs_report("modular", "dual_gauge_plain",
                                sub(lhs2, want2), hpts, s));
  }

  if (n) {
    Multivector Xf = xnp_field(J, P, *n, vol.nu, vol.mu);
    Expr v0 = Expr::var(0, A.vars.name(0));
    Expr w = fadd(one, fmul(v0, v0));
    Expr m2 = fadd(Expr::constant(2.0), fmul(v0, v0));
    Multivector Xf2 =
        xnp_field(J, P, *n, fmul(w, vol.nu), fmul(m2, vol.mu));
    out.push_back(coeffs_report("modular", "relative_field_invariant",
                                sub(Xf, Xf2), pts, s));
    out.push_back(coeffs_report("modular", "relative_field_closed_form",
                                sub(Xf, xnp_field_direct(J, P, *n)), pts, s));
    Multivector NP = np_bivector_unchecked(A, P, *n);
    out.push_back(coeffs_report("modular", "first_level_transport",
                                sub(x0_section(J, NP), endo_apply(*n, X0)),
                                pts, s));

    Multivector M1 = deviation_field(J, NP, one, one);
    Multivector M0 = deviation_field(J, P, one, one);
    Multivector MNP = sub(M1, endo_apply(*n, M0));
    Multivector Xc = xnp_field(J, P, *n, one, one);
    std::vector<Report> parts;
    for (int draw = 0; draw < 2; ++draw) {
      AForm al = g.one_form(rank);
      Expr lhs = pairing(al, MNP);
      AForm da = differential(A, al);
      Expr rhs = fadd(
          fsub(pairing(al, Xc), bivector_form_pairing(NP, da)),
          bivector_form_pairing(P, differential(A, pull_cocycle(*n, al))));
      parts.push_back(exprs_report("modular", "draw", {fsub(lhs, rhs)}, pts, s));
    }
    out.push_back(merge_reports("modular", "deviation_transport", parts, s.seed));
  }

  {
    Multivector xi1 = dual_modular_form(J, P, one, one);
    Multivector M = deviation_field(J, P, one, one);
    AForm nu_hat = top_form(rank, ext.weight(rank));
    Multivector Xh = xhat_field(ext.hat, Pt, nu_hat);
    out.push_back(coeffs_report("modular", "deviation_gauge_bridge",
                                sub(scale(ext.weight(1), Xh), M), hpts, s));

    auto Mop = [&](const AForm& a) {
      return fsub(fsub(fadd(pairing(a, xi1), pairing(a, X0)),
                       bivector_form_pairing(P, differential(A, a))),
                  div_mu(A.vars, A.rho_of(sharp(P, a)), one));
    };
    Expr v0 = Expr::var(0, A.vars.name(0));
    Expr fa = fadd(one, fmul(v0, v0));
    AForm al = g.one_form(rank);
    out.push_back(exprs_report("modular", "deviation_function_linear",
                               {fsub(Mop(scale(fa, al)), fmul(fa, Mop(al)))},
                               pts, s));
    out.push_back(exprs_report(
        "modular", "deviation_cocycle_slot",
        {fsub(pairing(J.phi0, xi1),
              fsub(Mop(J.phi0), div_mu(A.vars, A.rho_of(X0), one)))},
        pts, s));
  }
  return out;
}

// ------------------------------------------------------------------ duality

std::vector<Report> duality_battery(const JacobiAlgebroid& J,
                                    const Multivector& P, const VolumeData& vol,
                                    const Sampling& s) {
  const Algebroid& A = J.A;
  int rank = A.rank;
  std::vector<Point> pts = sample_points(A.vars.size(), s);
  PolyGen g(A.vars, s.seed);
  Expr one = Expr::constant(1.0);
  IdxTuple top = top_tuple(rank);
  std::vector<Report> out;

  out.push_back(exprs_report("duality", "volume_pairing_normalized",
                             {fsub(fmul(vol.nu, vol.eta), one)}, pts, s));

  AForm xiA = modular_form(A, vol.eta, vol.mu);
  Multivector xi_st = dual_modular_form(J, P, vol.nu, vol.mu);
  Multivector X0 = x0_section(J, P);
  AForm xi_phi = add(xiA, scale(-static_cast<double>(rank - 1), J.phi0));
  Multivector xi_x0 = add(xi_st, scale(-static_cast<double>(rank - 1), X0));
  AForm nu_form = top_form(rank, vol.nu);
  bool untwisted = J.phi0.normalized().is_zero();

  std::vector<AForm> forms;
  for (int a = 0; a < rank; ++a) forms.push_back(frame_element(a));
  forms.push_back(g.one_form(rank));
  forms.push_back(g.one_form(rank));

  std::vector<Report> p1, p2, p3, p0;
  for (const AForm& al : forms) {
    Expr core = fmul(
        Expr::constant(2.0),
        fmul(wedge(al, differential(A, contract_mv(P, nu_form))).coeff(top),
             vol.eta));
    Expr lhsA = pairing(al, sharp(P, xiA));
    Expr aX0 = pairing(al, X0);
    Expr v2 = fadd(fadd(fneg(pairing(al, xi_st)),
                        fmul(Expr::constant(static_cast<double>(rank - 2)), aX0)),
                   core);
    p2.push_back(exprs_report("duality", "form", {fsub(lhsA, v2)}, pts, s));
    Expr v1 = fadd(fsub(fneg(pairing(al, xi_x0)), aX0), core);
    p1.push_back(exprs_report("duality", "form", {fsub(lhsA, v1)}, pts, s));
    Expr lhsC = pairing(al, sharp(P, xi_phi));
    Expr v3 = fadd(fadd(fneg(pairing(al, xi_x0)),
                        fmul(Expr::constant(static_cast<double>(rank - 2)), aX0)),
                   core);
    p3.push_back(exprs_report("duality", "form", {fsub(lhsC, v3)}, pts, s));
    if (untwisted) {
      Expr v0 = fadd(fneg(pairing(al, xi_st)), core);
      p0.push_back(exprs_report("duality", "form", {fsub(lhsA, v0)}, pts, s));
    }
  }
  if (untwisted)
    out.push_back(
        merge_reports("duality", "untwisted_pairing_relation", p0, s.seed));
  out.push_back(merge_reports("duality", "pairing_variant1", p1, s.seed));
  out.push_back(merge_reports("duality", "pairing_variant2", p2, s.seed));
  out.push_back(merge_reports("duality", "pairing_variant3", p3, s.seed));

  // Volume-derivative lemma on the extension (a Lie algebroid with Poisson
  // bivector), and on the base when the twist vanishes.
  ExtendedAlgebroid ext = extend(J);
  std::vector<Point> hpts = sample_points(ext.hat.vars.size(), s);
  Multivector Pt = gauge_mv(ext, P);
  JacobiAlgebroid hatJ{ext.hat, zero_graded(1)};
  {
    PolyGen gh(ext.hat.vars, s.seed);
    Expr v0 = Expr::var(0, ext.hat.vars.name(0));
    AForm nuL = top_form(rank, fadd(one, fmul(v0, v0)));
    Algebroid dualPt = dual_structure(hatJ, Pt);
    std::vector<Report> parts;
    for (int draw = 0; draw < 2; ++draw) {
      AForm al = gh.one_form(rank);
      AForm lhs = lie_derivative(ext.hat, sharp(Pt, al), nuL);
      Coeffs br = schouten(dualPt, al, nuL);
      Expr ip = bivector_form_pairing(Pt, differential(ext.hat, al));
      Coeffs rhs = add(br, scale(fmul(Expr::constant(-2.0), ip), nuL));
      parts.push_back(
          coeffs_report("duality", "draw", sub(lhs, rhs), hpts, s));
    }
    out.push_back(merge_reports("duality", "hamiltonian_volume_derivative",
                                parts, s.seed));
  }
  if (untwisted) {
    Expr v0 = Expr::var(0, A.vars.name(0));
    AForm nuL = top_form(rank, fadd(one, fmul(v0, v0)));
    Algebroid dual0 = dual_structure(J, P);
    std::vector<Report> parts;
    for (int draw = 0; draw < 2; ++draw) {
      AForm al = g.one_form(rank);
      AForm lhs = lie_derivative(A, sharp(P, al), nuL);
      Coeffs br = schouten(dual0, al, nuL);
      Expr ip = bivector_form_pairing(P, differential(A, al));
      Coeffs rhs = add(br, scale(fmul(Expr::constant(-2.0), ip), nuL));
      parts.push_back(coeffs_report("duality", "draw", sub(lhs, rhs), pts, s));
    }
    out.push_back(merge_reports(
        "duality", "hamiltonian_volume_derivative_base", parts, s.seed));
  }

  std::vector<Report> bridge = bridge_battery(J, P, s);
  out.insert(out.end(), bridge.begin(), bridge.end());
  return out;
}

// ------------------------------------------------------------------- bridge

std::vector<Report> bridge_battery(const JacobiAlgebroid& J,
                                   const Multivector& P, const Sampling& s) {
  const Algebroid& A = J.A;
  int rank = A.rank;
  std::size_t m = A.vars.size();
  Expr one = Expr::constant(1.0);
  ExtendedAlgebroid ext = extend(J);
  std::vector<Point> hpts = sample_points(ext.hat.vars.size(), s);
  std::vector<Report> out;

  Multivector Pt = gauge_mv(ext, P);
  Multivector X0 = x0_section(J, P);
  Multivector xi_st = dual_modular_form(J, P, one, one);
  Multivector M = deviation_field(J, P, one, one);
  Multivector Pi_t = anchor_push_bivector(ext.hat, Pt);
  std::vector<Expr> XT = poisson_modular_field(ext.hat.vars, Pi_t, one);

  std::vector<Expr> lhs = A.rho_of(xi_st);
  std::vector<Expr> rhsM = A.rho_of(M);
  std::vector<Expr> diffs;
  for (std::size_t u = 0; u < m; ++u)
    diffs.push_back(
        fsub(lhs[u], fadd(rhsM[u], fmul(ext.weight(1), XT[u]))));
  out.push_back(
      exprs_report("bridge", "base_projection_matches", diffs, hpts, s));

  Expr dvX0 = div_mu(A.vars, A.rho_of(X0), one);
  out.push_back(exprs_report(
      "bridge", "projection_cocycle_slot",
      {fadd(fmul(ext.weight(1), XT[m]), dvX0)}, hpts, s));

  {
    std::vector<Expr> dts;
    for (std::size_t u = 0; u <= m; ++u)
      dts.push_back(diff(fmul(ext.weight(1), XT[u]), ext.t_var));
    out.push_back(
        exprs_report("bridge", "projection_t_independent", dts, hpts, s));
  }

  {
    JacobiAlgebroid hatJ{ext.hat, zero_graded(1)};
    Expr nu_hat_top = ext.weight(rank);
    Multivector xi_h = dual_modular_form(hatJ, Pt, nu_hat_top, one);
    Multivector Xh =
        xhat_field(ext.hat, Pt, top_form(rank, nu_hat_top));
    std::vector<Expr> l2 = ext.hat.rho_of(xi_h);
    std::vector<Expr> r2 = ext.hat.rho_of(Xh);
    std::vector<Expr> d2;
    for (std::size_t u = 0; u <= m; ++u)
      d2.push_back(fsub(l2[u], fadd(r2[u], XT[u])));
    out.push_back(
        exprs_report("bridge", "projection_intermediate", d2, hpts, s));
  }
  return out;
}

}  // namespace jnalg
