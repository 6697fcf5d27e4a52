#pragma once

#include <vector>

#include "jnalg/jacobi.hpp"

namespace jnalg {

// Cylinder extension of a Jacobi algebroid: same frame, coordinates extended
// by t, anchor rows extended by the cocycle component, so that the extended
// differential satisfies d t = phi0.
struct ExtendedAlgebroid {
  Algebroid hat;            // over vars + t
  JacobiAlgebroid origin;
  int t_var = -1;

  Expr t_expr() const;      // the coordinate t
  Expr weight(int k) const; // e^{k t}
};

ExtendedAlgebroid extend(const JacobiAlgebroid& J);

// Degree-dependent gauges relating objects on the original algebroid to
// objects on the extension: multivectors carry e^{-(p-1)t}, forms e^{p t}.
Multivector gauge_mv(const ExtendedAlgebroid& E, const Multivector& P);
AForm gauge_form(const ExtendedAlgebroid& E, const AForm& w);

// d t = phi0 on the extension.
Report check_extension(const ExtendedAlgebroid& E, const Sampling& s);

// [gauge P, gauge Q]^hat = gauge([P,Q]^phi).
Report check_gauging_bracket(const ExtendedAlgebroid& E, const Multivector& P,
                             const Multivector& Q, const Sampling& s);

// d^hat(e^t w) = e^t d^phi w.
Report check_gauging_differential(const ExtendedAlgebroid& E, const AForm& w,
                                  const Sampling& s);

// 1-form bracket correspondence for a Jacobi bivector P with gauge
// Pt = e^{-t} P:
//   ungauged: [a,b]_{Pt} = e^{-t} ([a,b]_P - <a,X0> b + <b,X0> a)
//   gauged:   [e^t a, e^t b]_{Pt} = e^t [a,b]_P
std::vector<Report> check_dual_gauging(const ExtendedAlgebroid& E,
                                       const Multivector& P, const AForm& a,
                                       const AForm& b, const Sampling& s);

}  // namespace jnalg
