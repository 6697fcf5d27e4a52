#include "jnalg/nijenhuis.hpp"

#include <algorithm>

namespace jnalg {

namespace {

void require_square(const Endo& n) {
  if (n.m.size() != static_cast<std::size_t>(n.rank))
    throw std::invalid_argument("endomorphism row count must equal the rank");
  for (const auto& row : n.m)
    if (row.size() != static_cast<std::size_t>(n.rank))
      throw std::invalid_argument("endomorphism must be square");
}

}  // namespace

Endo endo_identity(int rank) {
  Endo n;
  n.rank = rank;
  n.m.assign(static_cast<std::size_t>(rank),
             std::vector<Expr>(static_cast<std::size_t>(rank), Expr::constant(0.0)));
  for (int i = 0; i < rank; ++i)
    n.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Expr::constant(1.0);
  return n;
}

Endo endo_conformal(const Expr& f, int rank) {
  Endo n = endo_identity(rank);
  for (int i = 0; i < rank; ++i)
    n.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = f;
  return n;
}

Endo endo_mul(const Endo& a, const Endo& b) {
  require_square(a);
  require_square(b);
  if (a.rank != b.rank) throw std::invalid_argument("rank mismatch");
  Endo out;
  out.rank = a.rank;
  std::size_t r = static_cast<std::size_t>(a.rank);
  out.m.assign(r, std::vector<Expr>(r, Expr::constant(0.0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Expr s = Expr::constant(0.0);
      for (std::size_t k = 0; k < r; ++k) s = fadd(s, fmul(a.m[i][k], b.m[k][j]));
      out.m[i][j] = simplify_basic(s);
    }
  return out;
}

Endo endo_pow(const Endo& n, int k) {
  if (k < 0) throw std::invalid_argument("negative power; use endo_inverse");
  Endo out = endo_identity(n.rank);
  for (int i = 0; i < k; ++i) out = endo_mul(out, n);
  return out;
}

Endo endo_transpose(const Endo& n) {
  require_square(n);
  Endo out;
  out.rank = n.rank;
  std::size_t r = static_cast<std::size_t>(n.rank);
  out.m.assign(r, std::vector<Expr>(r, Expr::constant(0.0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) out.m[i][j] = n.m[j][i];
  return out;
}

Expr endo_trace(const Endo& n) {
  require_square(n);
  Expr s = Expr::constant(0.0);
  for (int i = 0; i < n.rank; ++i)
    s = fadd(s, n.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
  return simplify_basic(s);
}

namespace {

Expr det_rec(const std::vector<std::vector<Expr>>& m, std::vector<int> cols, int row) {
  if (cols.empty()) return Expr::constant(1.0);
  Expr s = Expr::constant(0.0);
  for (std::size_t pick = 0; pick < cols.size(); ++pick) {
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t r = 0; r < cols.size(); ++r)
      if (r != pick) rest.push_back(cols[r]);
    Expr term = fmul(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cols[pick])],
                     det_rec(m, rest, row + 1));
    s = fadd(s, (pick & 1) ? fneg(term) : term);
  }
  return s;
}

}  // namespace

Expr endo_det(const Endo& n) {
  require_square(n);
  std::vector<int> cols(static_cast<std::size_t>(n.rank));
  for (int i = 0; i < n.rank; ++i) cols[static_cast<std::size_t>(i)] = i;
  return simplify_basic(det_rec(n.m, cols, 0));
}

Endo endo_inverse(const Endo& n) {
  require_square(n);
  if (n.rank > 3)
    throw std::invalid_argument("inverse via adjugate is supported up to rank 3");
  Expr det = simplify_basic(endo_det(n));
  if (is_zero_expr(det))
    throw std::invalid_argument("inverse of a singular endomorphism");
  Endo out;
  out.rank = n.rank;
  std::size_t r = static_cast<std::size_t>(n.rank);
  out.m.assign(r, std::vector<Expr>(r, Expr::constant(0.0)));
  if (n.rank == 1) {
    out.m[0][0] = Expr::constant(1.0) / det;
    return out;
  }
  // adj[i][j] = cofactor(j,i)
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::vector<Expr>> minor;
      for (std::size_t a = 0; a < r; ++a) {
        if (a == j) continue;
        std::vector<Expr> row;
        for (std::size_t b = 0; b < r; ++b)
          if (b != i) row.push_back(n.m[a][b]);
        minor.push_back(std::move(row));
      }
      Expr cof;
      if (minor.size() == 1) {
        cof = minor[0][0];
      } else {
        cof = fsub(fmul(minor[0][0], minor[1][1]), fmul(minor[0][1], minor[1][0]));
      }
      Expr signed_cof = ((i + j) & 1) ? fneg(cof) : cof;
      out.m[i][j] = simplify_basic(signed_cof) / det;
    }
  }
  return out;
}

Multivector endo_apply(const Endo& n, const Multivector& X) {
  require_square(n);
  Multivector out;
  out.degree = 1;
  for (const auto& [A, v] : X.c) {
    int b = A.at(0);
    for (int a = 0; a < n.rank; ++a) {
      const Expr& nab = n.m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (nab.is_const(0.0)) continue;
      out.add_term({a}, fmul(nab, v));
    }
  }
  return out.normalized();
}

AForm pull_cocycle(const Endo& n, const AForm& al) {
  require_square(n);
  AForm out;
  out.degree = 1;
  for (const auto& [A, v] : al.c) {
    int a = A.at(0);
    for (int b = 0; b < n.rank; ++b) {
      const Expr& nab = n.m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (nab.is_const(0.0)) continue;
      out.add_term({b}, fmul(nab, v));
    }
  }
  return out.normalized();
}

Multivector torsion(const Algebroid& A, const Endo& n, const Multivector& X,
                    const Multivector& Y) {
  Multivector NX = endo_apply(n, X);
  Multivector NY = endo_apply(n, Y);
  Multivector t1 = schouten(A, NX, NY);
  Multivector inner = add(add(schouten(A, NX, Y), schouten(A, X, NY)),
                          scale(-1.0, endo_apply(n, schouten(A, X, Y))));
  return sub(t1, endo_apply(n, inner)).normalized();
}

Multivector deformed_bracket(const Algebroid& A, const Endo& n,
                             const Multivector& X, const Multivector& Y) {
  return add(add(schouten(A, endo_apply(n, X), Y), schouten(A, X, endo_apply(n, Y))),
             scale(-1.0, endo_apply(n, schouten(A, X, Y))))
      .normalized();
}

Report check_torsion_free(const Algebroid& A, const Endo& n, const Sampling& s) {
  std::vector<Point> pts = sample_points(A.vars.size(), s);
  std::vector<Report> parts;
  for (int i = 0; i < A.rank; ++i)
    for (int j = i + 1; j < A.rank; ++j)
      parts.push_back(coeffs_report("check_nijenhuis", "pair",
                                    torsion(A, n, frame_element(i), frame_element(j)),
                                    pts, s));
  return merge_reports("check_nijenhuis", "torsion_free", parts, s.seed);
}

Algebroid deform_unchecked(const Algebroid& A, const Endo& n) {
  Algebroid out;
  out.vars = A.vars;
  out.rank = A.rank;
  for (int a = 0; a < A.rank; ++a)
    out.anchor.push_back(A.rho_of(endo_apply(n, frame_element(a))));
  for (int i = 0; i < A.rank; ++i) {
    for (int j = i + 1; j < A.rank; ++j) {
      Multivector br = deformed_bracket(A, n, frame_element(i), frame_element(j));
      std::map<int, Expr> entry;
      for (const auto& [K, v] : br.c) entry.emplace(K.at(0), v);
      if (!entry.empty()) out.structure.emplace(std::make_pair(i, j), std::move(entry));
    }
  }
  return out;
}

Algebroid deform(const Algebroid& A, const Endo& n, const Sampling& s) {
  Report gate = check_torsion_free(A, n, s);
  if (!gate.pass)
    throw std::invalid_argument("deformation requires vanishing torsion (residual " +
                                std::to_string(gate.residual) + ")");
  return deform_unchecked(A, n);
}

np_error::np_error(double r, std::vector<double> w)
    : std::runtime_error("composed bivector is not antisymmetric (residual " +
                         std::to_string(r) + ")"),
      residual(r),
      witness(std::move(w)) {}

Multivector np_bivector_unchecked(const Algebroid& A, const Multivector& P,
                                  const Endo& n) {
  Multivector out;
  out.degree = 2;
  for (int a = 0; a < A.rank; ++a) {
    Multivector v = endo_apply(n, sharp(P, frame_element(a)));
    for (int b = a + 1; b < A.rank; ++b) {
      Expr c = v.coeff({b});
      if (!c.is_const(0.0)) out.add_term({a, b}, c);
    }
  }
  return out.normalized();
}

double np_antisym_residual(const Algebroid& A, const Multivector& P,
                           const Endo& n, const Sampling& s,
                           std::vector<double>* witness) {
  std::vector<Point> pts = sample_points(A.vars.size(), s);
  Residual r;
  for (int a = 0; a < A.rank; ++a) {
    Multivector va = endo_apply(n, sharp(P, frame_element(a)));
    for (int b = a; b < A.rank; ++b) {
      Multivector vb = endo_apply(n, sharp(P, frame_element(b)));
      accumulate(r, simplify_basic(fadd(va.coeff({b}), vb.coeff({a}))), pts);
    }
  }
  if (witness) *witness = r.witness;
  return r.max_abs;
}

Multivector np_bivector(const Algebroid& A, const Multivector& P, const Endo& n,
                        const Sampling& s) {
  std::vector<double> w;
  double r = np_antisym_residual(A, P, n, s, &w);
  if (r > s.tol) throw np_error(r, w);
  return np_bivector_unchecked(A, P, n);
}

AForm concomitant(const JacobiAlgebroid& J, const Multivector& P, const Endo& n,
                  const AForm& a, const AForm& b) {
  Multivector NP = np_bivector_unchecked(J.A, P, n);
  AForm b1 = dual_bracket(J, NP, a, b);
  JacobiAlgebroid JN{deform_unchecked(J.A, n), pull_cocycle(n, J.phi0)};
  AForm b2 = dual_bracket(JN, P, a, b);
  return sub(b1, b2).normalized();
}

std::vector<Report> is_compatible(const JacobiAlgebroid& J, const Multivector& P,
                                  const Endo& n, const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<Report> out;
  out.push_back(check_torsion_free(J.A, n, s));

  {
    std::vector<double> w;
    double r = np_antisym_residual(J.A, P, n, s, &w);
    Report rep;
    rep.check = "check_nijenhuis";
    rep.anchor = "np_antisymmetric";
    rep.residual = r;
    rep.pass = r <= s.tol;
    rep.witness = w;
    rep.seed = s.seed;
    out.push_back(rep);
  }

  Multivector NP = np_bivector_unchecked(J.A, P, n);
  out.push_back(coeffs_report("check_compat", "np_closed", sj_bracket(J, NP, NP),
                              pts, s));
  out.push_back(coeffs_report("check_compat", "np_p_bracket", sj_bracket(J, NP, P),
                              pts, s));

  {
    std::vector<Report> parts;
    for (int i = 0; i < J.A.rank; ++i)
      for (int j = i + 1; j < J.A.rank; ++j)
        parts.push_back(coeffs_report(
            "check_compat", "pair",
            concomitant(J, P, n, frame_element(i), frame_element(j)), pts, s));
    out.push_back(merge_reports("check_compat", "concomitant_frames", parts, s.seed));
  }
  {
    std::vector<Report> parts;
    for (int i = 0; i < J.A.rank; ++i)
      parts.push_back(coeffs_report("check_compat", "slot",
                                    concomitant(J, P, n, J.phi0, frame_element(i)),
                                    pts, s));
    out.push_back(
        merge_reports("check_compat", "concomitant_cocycle_slot", parts, s.seed));
  }
  return out;
}

std::vector<Report> strong_compatibility(const JacobiAlgebroid& J,
                                         const Multivector& P, const Endo& n,
                                         const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  Algebroid dual0 = dual_structure(J, P);
  Multivector NP = np_bivector_unchecked(J.A, P, n);
  Algebroid dualNP = dual_structure(J, NP);
  Endo nstar = endo_transpose(n);
  Algebroid deformed = deform_unchecked(dual0, nstar);

  std::vector<Report> out;
  {
    std::vector<Report> parts;
    for (int i = 0; i < J.A.rank; ++i) {
      for (int j = i + 1; j < J.A.rank; ++j) {
        Multivector b1 = deformed.bracket_frame(i, j);
        Multivector b2 = dualNP.bracket_frame(i, j);
        AForm C = concomitant(J, P, n, frame_element(i), frame_element(j));
        Coeffs diff = sub(sub(b1, b2), C);
        parts.push_back(coeffs_report("check_compat", "pair", diff, pts, s));
      }
    }
    out.push_back(merge_reports("check_compat",
                                "deformed_dual_offset_is_concomitant", parts,
                                s.seed));
  }
  {
    std::vector<Expr> diffs;
    for (int a = 0; a < J.A.rank; ++a)
      for (std::size_t u = 0; u < J.A.vars.size(); ++u)
        diffs.push_back(fsub(deformed.anchor[static_cast<std::size_t>(a)][u],
                             dualNP.anchor[static_cast<std::size_t>(a)][u]));
    out.push_back(
        exprs_report("check_compat", "deformed_dual_anchor_matches", diffs, pts, s));
  }
  return out;
}

std::vector<HierarchyLevel> dual_hierarchy(const JacobiAlgebroid& J,
                                           const Multivector& P, const Endo& n,
                                           int kmax) {
  std::vector<HierarchyLevel> out;
  Multivector Pk = P;
  Multivector Xk = x0_section(J, P);
  for (int k = 0; k <= kmax; ++k) {
    HierarchyLevel lvl;
    lvl.k = k;
    lvl.Pk = Pk;
    lvl.dual_k = dual_structure(J, Pk);
    lvl.Xk = Xk;
    out.push_back(lvl);
    Pk = np_bivector_unchecked(J.A, Pk, n);
    Xk = endo_apply(n, Xk);
  }
  return out;
}

std::vector<Report> check_hierarchy(const JacobiAlgebroid& J, const Multivector& P,
                                    const Endo& n, int kmax, const Sampling& s) {
  std::vector<Point> pts = sample_points(J.A.vars.size(), s);
  std::vector<HierarchyLevel> levels = dual_hierarchy(J, P, n, kmax);
  std::vector<Report> out;

  for (const HierarchyLevel& lvl : levels) {
    std::string k = std::to_string(lvl.k);
    out.push_back(coeffs_report("hierarchy", "level_closed(" + k + ")",
                                sj_bracket(J, lvl.Pk, lvl.Pk), pts, s));
    out.push_back(merge_reports("hierarchy", "dual_valid(" + k + ")",
                                validate_algebroid(lvl.dual_k, s), s.seed));
    AForm xk_form;
    xk_form.degree = 1;
    xk_form.c = lvl.Xk.c;
    out.push_back(coeffs_report("hierarchy", "cocycle_level(" + k + ")",
                                differential(lvl.dual_k, xk_form), pts, s));
    out.push_back(coeffs_report("hierarchy", "level_section(" + k + ")",
                                sub(lvl.Xk, x0_section(J, lvl.Pk)), pts, s));
  }

  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = i + 1; j < levels.size(); ++j)
      out.push_back(coeffs_report(
          "hierarchy",
          "pairwise(" + std::to_string(levels[i].k) + "," +
              std::to_string(levels[j].k) + ")",
          sj_bracket(J, levels[i].Pk, levels[j].Pk), pts, s));

  if (levels.size() >= 2) {
    Endo nstar = endo_transpose(n);
    Algebroid deformed = deform_unchecked(levels[0].dual_k, nstar);
    std::vector<Report> parts;
    for (int i = 0; i < J.A.rank; ++i)
      for (int j = i + 1; j < J.A.rank; ++j)
        parts.push_back(coeffs_report("hierarchy", "pair",
                                      sub(deformed.bracket_frame(i, j),
                                          levels[1].dual_k.bracket_frame(i, j)),
                                      pts, s));
    out.push_back(
        merge_reports("hierarchy", "dual_deformation_matches_next", parts, s.seed));

    std::vector<Report> tors;
    for (int i = 0; i < J.A.rank; ++i)
      for (int j = i + 1; j < J.A.rank; ++j)
        tors.push_back(coeffs_report(
            "hierarchy", "pair",
            torsion(levels[0].dual_k, nstar, frame_element(i), frame_element(j)),
            pts, s));
    out.push_back(merge_reports("hierarchy", "dual_endo_torsion_free", tors, s.seed));
  }
  return out;
}

}  // namespace jnalg
