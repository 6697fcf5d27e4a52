#pragma once

#include <stdexcept>
#include <vector>

#include "jnalg/jacobi.hpp"

namespace jnalg {

// Bundle endomorphism in the frame: m[i][j] = <eps^i, N e_j>, so column j
// lists the components of N e_j.
struct Endo {
  int rank = 0;
  std::vector<std::vector<Expr>> m;
};

Endo endo_identity(int rank);
Endo endo_conformal(const Expr& f, int rank);  // f * identity
Endo endo_mul(const Endo& a, const Endo& b);
Endo endo_pow(const Endo& n, int k);           // k >= 0
Endo endo_transpose(const Endo& n);
Expr endo_trace(const Endo& n);
Expr endo_det(const Endo& n);                  // cofactor expansion, rank <= 4
Endo endo_inverse(const Endo& n);              // adjugate/det, rank <= 3

// N applied to a section (degree-1 multivector).
Multivector endo_apply(const Endo& n, const Multivector& X);

// Transpose action on 1-forms: (N* a)_b = sum_a a_a m[a][b].
AForm pull_cocycle(const Endo& n, const AForm& a);

// Nijenhuis torsion T(X,Y) = [NX,NY] - N([NX,Y] + [X,NY] - N[X,Y]).
Multivector torsion(const Algebroid& A, const Endo& n, const Multivector& X,
                    const Multivector& Y);

// Deformed bracket [X,Y]_N = [NX,Y] + [X,NY] - N[X,Y].
Multivector deformed_bracket(const Algebroid& A, const Endo& n,
                             const Multivector& X, const Multivector& Y);

Report check_torsion_free(const Algebroid& A, const Endo& n, const Sampling& s);

// Frame presentation of (A, [.,.]_N, rho o N), without the torsion gate.
Algebroid deform_unchecked(const Algebroid& A, const Endo& n);

// Gated deformation; throws std::invalid_argument when torsion survives at
// tolerance s.tol.
Algebroid deform(const Algebroid& A, const Endo& n, const Sampling& s);

struct np_error : std::runtime_error {
  np_error(double r, std::vector<double> w);
  double residual;
  std::vector<double> witness;
};

// Bivector with (N P)(a,b) = <eps^b, N P# eps^a> over a < b; no gate.
Multivector np_bivector_unchecked(const Algebroid& A, const Multivector& P,
                                  const Endo& n);

// Max sampled residual of (NP)(a,b) + (NP)(b,a) over the full index square,
// diagonal included.
double np_antisym_residual(const Algebroid& A, const Multivector& P,
                           const Endo& n, const Sampling& s,
                           std::vector<double>* witness = nullptr);

// Gated composition; throws np_error carrying the asymmetry residual.
Multivector np_bivector(const Algebroid& A, const Multivector& P, const Endo& n,
                        const Sampling& s);

// Compatibility concomitant
//   C(a,b) = [a,b]^{phi0}_{NP} - [a,b]^{phi1}_{P on A_N},  phi1 = N* phi0.
AForm concomitant(const JacobiAlgebroid& J, const Multivector& P, const Endo& n,
                  const AForm& a, const AForm& b);

// Full admissibility + compatibility battery: torsion, NP antisymmetry,
// concomitant on frame pairs and on the (phi0, eps^i) slots, plus the
// bracket compatibility [NP,P]^{phi0} and the closure of NP.
std::vector<Report> is_compatible(const JacobiAlgebroid& J, const Multivector& P,
                                  const Endo& n, const Sampling& s);

// Strong-form comparison: deforming the dual of P by N* versus the dual of
// NP differs exactly by the concomitant (anchors must agree on the nose).
std::vector<Report> strong_compatibility(const JacobiAlgebroid& J,
                                         const Multivector& P, const Endo& n,
                                         const Sampling& s);

struct HierarchyLevel {
  int k = 0;
  Multivector Pk;      // N^k P
  Algebroid dual_k;    // A^*_{N^k P}
  Multivector Xk;      // N^k X0
};

std::vector<HierarchyLevel> dual_hierarchy(const JacobiAlgebroid& J,
                                           const Multivector& P, const Endo& n,
                                           int kmax);

// Level-by-level soundness: N^k P closed, pairwise compatible, X_k a
// 1-cocycle of dual_k, X_k = -(N^k P)# phi0, dual_k Jacobi-valid, and the
// N*-deformation of dual_0 matching dual_1 bracket-wise.
std::vector<Report> check_hierarchy(const JacobiAlgebroid& J, const Multivector& P,
                                    const Endo& n, int kmax, const Sampling& s);

}  // namespace jnalg
