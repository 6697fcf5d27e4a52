#pragma once

#include <random>

#include "jnalg/modular.hpp"

namespace jnalg {

// Deterministic generator of small integer-coefficient polynomials and graded
// objects, used to instantiate the sampled identity batteries.
class PolyGen {
 public:
  PolyGen(VarSpace vars, std::uint64_t seed);

  Expr poly(int deg = 1);
  Coeffs graded(int rank, int p, int deg = 1);
  AForm one_form(int rank, int deg = 1) { return graded(rank, 1, deg); }

 private:
  long randint(long lo, long hi);
  double uniform01();

  VarSpace vars_;
  std::mt19937_64 rng_;
};

// Graded antisymmetry, Leibniz (with the cocycle correction term), and graded
// Jacobi for the twisted bracket, over seeded random multivectors.
std::vector<Report> gerstenhaber_battery(const JacobiAlgebroid& J,
                                         const Sampling& s);

// Extension soundness plus the bracket/differential/dual-bracket gauge
// correspondences; the P-dependent parts run only when P is supplied.
std::vector<Report> poissonization_battery(const JacobiAlgebroid& J,
                                           const Multivector* P,
                                           const Sampling& s);

// Closed-form cylinder catalog on the contact structure over (x,y,z):
// differential splittings (coefficient-exact), sharp splitting, zero section,
// the 1-jet bracket against its slot formulas, and the dual structure against
// the catalog presentation.
std::vector<Report> catalog_battery(const Sampling& s);

// Closure gate for P, dual structure validity, the zero section as a dual
// 1-cocycle, and (on cylinder documents) the base pair identities.
std::vector<Report> jacobi_battery(const JacobiAlgebroid& J,
                                   const Multivector& P, const Sampling& s);

// Compatibility of (P, cP), and on cylinder documents the decomposition of
// the twisted bracket of P with a seeded second pair into its base parts.
std::vector<Report> pair_battery(const JacobiAlgebroid& J, const Multivector& P,
                                 const Sampling& s);

// Torsion, deformed structure validity, pulled cocycle closure, and the
// hamiltonian ladder; the NP gate runs when P is supplied.
std::vector<Report> nijenhuis_battery(const JacobiAlgebroid& J,
                                      const Multivector* P, const Endo& n,
                                      const Sampling& s);

// Level checks (closure, dual validity, cocycles, pairwise compatibility,
// deformation transport) plus cross-field level consistency and, on cylinder
// documents, the covered fields on the base.
std::vector<Report> hierarchy_battery(const JacobiAlgebroid& J,
                                      const Multivector& P, const Endo& n,
                                      int kmax, const Sampling& s);

struct VolumeData {
  Expr eta = Expr::constant(1.0);  // top-section coefficient of A
  Expr mu = Expr::constant(1.0);   // base volume density
  Expr nu = Expr::constant(1.0);   // top-form coefficient of A*
};

// Modular form checks: cocycle property, flat connection, change of
// section/volume, the gauge relations of the dual modular form, the relative
// field of (P, N) with its closed form and invariance, the deviation
// transport, and the deviation/gauge bridge.  `n` and `phi0_primitive` are
// optional.
std::vector<Report> modular_battery(const JacobiAlgebroid& J,
                                    const Multivector& P, const Endo* n,
                                    const VolumeData& vol,
                                    const Expr* phi0_primitive,
                                    const Sampling& s);

// Pairing relations between the modular forms of A and A*_P, the hamiltonian
// volume-derivative lemma, and the base projection bridge.
std::vector<Report> duality_battery(const JacobiAlgebroid& J,
                                    const Multivector& P, const VolumeData& vol,
                                    const Sampling& s);

// Base projection of the dual modular form through the extension:
// rho(xi_{A*}) = rho(M) + e^t X^T with the t-slot closed by div rho(X0),
// plus t-independence and the intermediate gauge identity.
std::vector<Report> bridge_battery(const JacobiAlgebroid& J,
                                   const Multivector& P, const Sampling& s);

}  // namespace jnalg
