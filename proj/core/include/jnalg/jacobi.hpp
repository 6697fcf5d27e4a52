#pragma once

#include <string>
#include <vector>

#include "jnalg/algebroid.hpp"

namespace jnalg {

// Lie algebroid together with a distinguished 1-cocycle phi0.
struct JacobiAlgebroid {
  Algebroid A;
  AForm phi0;  // degree 1; may be zero
};

Report check_cocycle(const Algebroid& A, const AForm& phi, const Sampling& s,
                     const std::string& anchor = "one_cocycle");

std::vector<Report> validate_jacobi(const JacobiAlgebroid& J, const Sampling& s);

// Twisted differential d^phi w = dw + phi0 ^ w.
AForm phi_diff(const JacobiAlgebroid& J, const AForm& w);

// Twisted Lie derivative L^phi_X = i_X d^phi + (-1)^{p-1} d^phi i_X.
AForm phi_lie(const JacobiAlgebroid& J, const Multivector& X, const AForm& w);

// Twisted Schouten bracket
//   [P,Q]^phi = [P,Q] + (p-1) P ^ i_phi Q - (-1)^{p-1} (q-1) i_phi P ^ Q.
Multivector sj_bracket(const JacobiAlgebroid& J, const Multivector& P,
                       const Multivector& Q);

// P#(alpha) = i_alpha P; with this orientation P(alpha,beta) = <beta, P#alpha>.
Multivector sharp(const Multivector& P, const AForm& alpha);
Expr biv_pairing(const Multivector& P, const AForm& a, const AForm& b);

// Closure gate: residual of [P,P]^phi.
Report is_jacobi_bivector(const JacobiAlgebroid& J, const Multivector& P,
                          const Sampling& s);

// Distinguished section X0 = -P# phi0.
Multivector x0_section(const JacobiAlgebroid& J, const Multivector& P);

// 1-form bracket of the triangular structure:
//   [a,b]_P = L^phi_{P#a} b - L^phi_{P#b} a - d^phi(P(a,b)).
AForm dual_bracket(const JacobiAlgebroid& J, const Multivector& P,
                   const AForm& a, const AForm& b);

// Frame presentation of (A^*, [.,.]_P, rho o P#) over the same coordinates.
// No closure gate is applied; the result is a Lie algebroid exactly when P
// passes is_jacobi_bivector.
Algebroid dual_structure(const JacobiAlgebroid& J, const Multivector& P);

struct TriangularJB {
  JacobiAlgebroid J;
  Multivector P;
  Algebroid dual;   // A^*_P
  Multivector X0;   // -P# phi0, a 1-cocycle of `dual`

  JacobiAlgebroid dual_jacobi() const;  // (A^*_P, X0 read as its 1-form)
};

// Gated constructor; throws std::invalid_argument when the closure gate
// fails at tolerance s.tol.
TriangularJB build_dual_algebroid(const JacobiAlgebroid& J, const Multivector& P,
                                  const Sampling& s);

// Cylinder-type algebroid over the base coordinates: rank m+1, anchor rows
// the identity on the first m slots and zero on the last, no structure
// functions.  Its canonical 1-cocycle is eps^{m+1}.
Algebroid cylinder_algebroid(const VarSpace& base_vars);

// True when A structurally matches the cylinder presentation above.
bool is_cylinder(const Algebroid& A);

// Base geometric pair carried by a bivector on a cylinder-type algebroid
// (frame = base tangent sections plus one extra section with zero anchor):
// P decomposes as Lambda + e_last ^ E.
struct BaseJacobiPair {
  VarSpace base_vars;
  Multivector Lambda;
  Multivector E;
};

// Requires `A` to be of cylinder type (identity anchor rows, zero last row,
// no structure functions); throws std::invalid_argument otherwise.
BaseJacobiPair induced_base_jacobi(const Algebroid& A, const Multivector& P);

// Inverse of the extraction: Lambda + e_{rank-1} ^ E.
Multivector embed_base_pair(const BaseJacobiPair& pair, int rank);

// Structure-pair identities: [Lambda,Lambda] + 2 E ^ Lambda = 0, [E,Lambda] = 0.
std::vector<Report> check_base_pair(const BaseJacobiPair& pair, const Sampling& s);

// 1-jet bracket of the pair, in split coordinates: arguments and result are
// rank-(m+1) forms (a, f) whose function slot sits on the last frame index.
//   slot1 = L_{Lam#a1} a2 - L_{Lam#a2} a1 - d Lam(a1,a2)
//           + f1 L_E a2 - f2 L_E a1 - i_E (a1 ^ a2)
//   slot2 = -Lam(a1,a2) + Lam(a1,df2) - Lam(a2,df1) + f1 E(f2) - f2 E(f1)
AForm jet_bracket(const BaseJacobiPair& pair, const AForm& w1, const AForm& w2);

// Frame presentation of the 1-jet algebroid of the pair: anchor rows
// (Lam# eps^a | E), structure functions from jet_bracket on frame pairs.
Algebroid jet_algebroid(const BaseJacobiPair& pair);

// Compatibility of two bivectors: vanishing of the twisted bracket
// [P1,P2]^phi, reported alongside its expanded form
//   [P1,P2] + i_phi(P1) ^ P2 + i_phi(P2) ^ P1.
std::vector<Report> bivectors_compatible(const JacobiAlgebroid& J,
                                         const Multivector& P1,
                                         const Multivector& P2, const Sampling& s);

// On a cylinder-type document the twisted bracket splits into a pure part and
// an e_last part; each must reproduce its base-level identity:
//   pure  == [L1,L2] + E1 ^ L2 + E2 ^ L1
//   mixed == [E1,L2] + [E2,L1]
std::vector<Report> check_base_compatibility(const JacobiAlgebroid& J,
                                             const Multivector& P1,
                                             const Multivector& P2,
                                             const Sampling& s);

}  // namespace jnalg
