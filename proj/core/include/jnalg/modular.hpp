#pragma once

#include "jnalg/nijenhuis.hpp"
#include "jnalg/poissonization.hpp"

namespace jnalg {

// Divergence of the coordinate vector field V (components in vars order) with
// respect to the volume mu = g dx_1 ... dx_m:  sum_u d_u(g V^u) / g.
Expr div_mu(const VarSpace& vars, const std::vector<Expr>& V, const Expr& g);

// Modular vector field of a coordinate bivector Pi with respect to mu = g dx:
// component u is div_mu(Pi# dx^u).
std::vector<Expr> poisson_modular_field(const VarSpace& vars,
                                        const Multivector& Pi, const Expr& g);

// Full contraction of a bivector against a 2-form (the degree-0 remainder of
// i_P w).
Expr bivector_form_pairing(const Multivector& P, const AForm& w2);

// Modular form of A relative to the top section eta = eta_top e_1^...^e_n and
// the base volume mu = g dx:
//   xi_a = top([e_a, eta]) / eta_top + div_mu(rho(e_a)).
// The result is a 1-form on A (a section of A*).
AForm modular_form(const Algebroid& A, const Expr& eta_top, const Expr& mu_g);

// Twist-adjusted modular form xi - (n-1) phi0.
AForm jacobi_modular_form(const JacobiAlgebroid& J, const Expr& eta_top,
                          const Expr& mu_g);

// Modular form of the dual structure A*_P, relative to nu = nu_top
// eps^1^...^eps^n and mu = g dx.  Components are indexed by the dual frame,
// so the result reads as a section of A.
Multivector dual_modular_form(const JacobiAlgebroid& J, const Multivector& P,
                              const Expr& nu_top, const Expr& mu_g);

// Deviation field combining the dual modular form with the divergence data
// of P:  M_a = xi*_a + X0_a - i_P(d eps^a) - div_mu(rho(P# eps^a)).
Multivector deviation_field(const JacobiAlgebroid& J, const Multivector& P,
                          const Expr& nu_top, const Expr& mu_g);

// Relative field of a compatible pair: xi*_{NP} - N xi*_P.
Multivector xnp_field(const JacobiAlgebroid& J, const Multivector& P,
                      const Endo& n, const Expr& nu_top, const Expr& mu_g);

// Closed-form candidate -P#(d_A tr N) for the same field.
Multivector xnp_field_direct(const JacobiAlgebroid& J, const Multivector& P,
                             const Endo& n);

// Hierarchy hamiltonians: h_0 = ln det N (written sign-safely through det^2),
// h_k = tr(N^k)/k for k >= 1.
Expr hierarchy_hamiltonian(const Endo& n, int k);

// Cross fields X^{(i,j)} = -(N^i P)#(d_A h_j); i may be negative when N is
// invertible (rank <= 3).
Multivector cross_field(const Algebroid& A, const Multivector& P, const Endo& n,
                        int i, int j);

// Top-ratio modular field on an algebroid with a distinguished top form nu
// (a single coefficient on the full tuple):
//   X^a = top(eps^a ^ d(i_P nu)) / nu_top.
Multivector xhat_field(const Algebroid& A, const Multivector& P,
                       const AForm& nu);

}  // namespace jnalg
