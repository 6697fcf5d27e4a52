#include "jnalg/modular.hpp"

namespace jnalg {

Expr div_mu(const VarSpace& vars, const std::vector<Expr>& V, const Expr& g) {
  if (V.size() != vars.size())
    throw std::invalid_argument("vector field has wrong component count");
  bool unit = g.is_const(1.0);
  Expr s = Expr::constant(0.0);
  for (std::size_t u = 0; u < vars.size(); ++u) {
    Expr gu = unit ? V[u] : fmul(g, V[u]);
    s = fadd(s, diff(gu, static_cast<int>(u)));
  }
  if (unit) return simplify_basic(s);
  return simplify_basic(s / g);
}

std::vector<Expr> poisson_modular_field(const VarSpace& vars,
                                        const Multivector& Pi, const Expr& g) {
  std::size_t dim = vars.size();
  std::vector<Expr> out;
  out.reserve(dim);
  for (std::size_t u = 0; u < dim; ++u) {
    Multivector shp = sharp(Pi, frame_element(static_cast<int>(u)));
    std::vector<Expr> V;
    V.reserve(dim);
    for (std::size_t v = 0; v < dim; ++v)
      V.push_back(shp.coeff({static_cast<int>(v)}));
    out.push_back(div_mu(vars, V, g));
  }
  return out;
}

Expr bivector_form_pairing(const Multivector& P, const AForm& w2) {
  return contract_mv(P, w2).coeff({});
}

namespace {

IdxTuple top_tuple(int n) {
  IdxTuple t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
  return t;
}

Expr top_ratio(const Expr& num, const Expr& den) {
  if (num.is_const(0.0)) return Expr::constant(0.0);
  if (den.is_const(1.0)) return num;
  return simplify_basic(num / den);
}

}  // namespace

AForm modular_form(const Algebroid& A, const Expr& eta_top, const Expr& mu_g) {
  IdxTuple top = top_tuple(A.rank);
  Multivector eta;
  eta.degree = A.rank;
  eta.add_term(top, eta_top);

  AForm xi;
  xi.degree = 1;
  for (int a = 0; a < A.rank; ++a) {
    Multivector br = schouten(A, frame_element(a), eta);
    Expr c1 = top_ratio(br.coeff(top), eta_top);
    Expr c2 = div_mu(A.vars, A.anchor.at(static_cast<std::size_t>(a)), mu_g);
    xi.add_term({a}, fadd(c1, c2));
  }
  return xi.normalized();
}

AForm jacobi_modular_form(const JacobiAlgebroid& J, const Expr& eta_top,
                          const Expr& mu_g) {
  AForm xi = modular_form(J.A, eta_top, mu_g);
  return add(xi, scale(-static_cast<double>(J.A.rank - 1), J.phi0)).normalized();
}

Multivector dual_modular_form(const JacobiAlgebroid& J, const Multivector& P,
                              const Expr& nu_top, const Expr& mu_g) {
  Algebroid dual = dual_structure(J, P);
  AForm xi = modular_form(dual, nu_top, mu_g);
  Multivector out;
  out.degree = 1;
  out.c = xi.c;
  return out;
}

Multivector deviation_field(const JacobiAlgebroid& J, const Multivector& P,
                          const Expr& nu_top, const Expr& mu_g) {
  Multivector xi = dual_modular_form(J, P, nu_top, mu_g);
  Multivector X0 = x0_section(J, P);
  Multivector out;
  out.degree = 1;
  for (int a = 0; a < J.A.rank; ++a) {
    AForm eps = frame_element(a);
    Expr iPd = bivector_form_pairing(P, differential(J.A, eps));
    Expr dv = div_mu(J.A.vars, J.A.rho_of(sharp(P, eps)), mu_g);
    Expr v = fsub(fsub(fadd(xi.coeff({a}), X0.coeff({a})), iPd), dv);
    out.add_term({a}, v);
  }
  return out.normalized();
}

Multivector xnp_field(const JacobiAlgebroid& J, const Multivector& P,
                      const Endo& n, const Expr& nu_top, const Expr& mu_g) {
  Multivector NP = np_bivector_unchecked(J.A, P, n);
  Multivector xi1 = dual_modular_form(J, NP, nu_top, mu_g);
  Multivector xi0 = dual_modular_form(J, P, nu_top, mu_g);
  return sub(xi1, endo_apply(n, xi0)).normalized();
}

Multivector xnp_field_direct(const JacobiAlgebroid& J, const Multivector& P,
                             const Endo& n) {
  AForm dtr = differential(J.A, scalar_graded(endo_trace(n)));
  return scale(-1.0, sharp(P, dtr)).normalized();
}

Expr hierarchy_hamiltonian(const Endo& n, int k) {
  if (k < 0) throw std::invalid_argument("hamiltonian level must be >= 0");
  if (k == 0) {
    Expr det = simplify_basic(endo_det(n));
    if (is_zero_expr(det))
      throw std::invalid_argument("level-0 hamiltonian of a singular endomorphism");
    return simplify_basic(fmul(Expr::constant(0.5), ln(fmul(det, det))));
  }
  return simplify_basic(
      fmul(Expr::constant(1.0 / static_cast<double>(k)), endo_trace(endo_pow(n, k))));
}

Multivector cross_field(const Algebroid& A, const Multivector& P, const Endo& n,
                        int i, int j) {
  Multivector Pi = P;
  if (i >= 0) {
    for (int s = 0; s < i; ++s) Pi = np_bivector_unchecked(A, Pi, n);
  } else {
    Endo inv = endo_inverse(n);
    for (int s = 0; s < -i; ++s) Pi = np_bivector_unchecked(A, Pi, inv);
  }
  AForm dh = differential(A, scalar_graded(hierarchy_hamiltonian(n, j)));
  return scale(-1.0, sharp(Pi, dh)).normalized();
}

Multivector xhat_field(const Algebroid& A, const Multivector& P,
                       const AForm& nu) {
  IdxTuple top = top_tuple(A.rank);
  Expr nu_top = nu.coeff(top);
  AForm theta = differential(A, contract_mv(P, nu));
  Multivector out;
  out.degree = 1;
  for (int a = 0; a < A.rank; ++a) {
    AForm w = wedge(frame_element(a), theta);
    Expr v = top_ratio(w.coeff(top), nu_top);
    if (!v.is_const(0.0)) out.add_term({a}, v);
  }
  return out.normalized();
}

}  // namespace jnalg
