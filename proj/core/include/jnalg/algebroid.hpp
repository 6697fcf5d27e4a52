#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jnalg/expr.hpp"
#include "jnalg/report.hpp"
#include "jnalg/sampling.hpp"

namespace jnalg {

// Strictly increasing 0-based frame-index tuple.
using IdxTuple = std::vector<int>;

// Sorts A increasingly in place and returns the permutation sign, or 0 when
// an index repeats.
int sort_sign(IdxTuple& A);

// Visits all strictly increasing k-tuples drawn from {0,...,n-1} in
// lexicographic order (the single empty tuple when k == 0).
void for_each_tuple(int n, int k, const std::function<void(const IdxTuple&)>& fn);

// Graded coefficient table over strictly increasing frame tuples.  The same
// container backs multivectors (coefficients of e_{a_1} ^ ... ^ e_{a_p}) and
// forms (coefficients of eps^{a_1} ^ ... ^ eps^{a_p}); the two bases pair by
// <eps^A, e_B> = delta_{A,B}.
struct Coeffs {
  int degree = 0;
  std::map<IdxTuple, Expr> c;

  Expr coeff(const IdxTuple& A) const;   // zero when absent
  void add_term(const IdxTuple& A, const Expr& v);
  Coeffs normalized() const;             // simplify coefficients, drop zeros
  bool is_zero() const;
  std::vector<Expr> entries() const;     // coefficients in tuple order
};

using Multivector = Coeffs;
using AForm = Coeffs;

Coeffs zero_graded(int degree);
Coeffs scalar_graded(const Expr& f);     // degree 0
Coeffs frame_element(int i);             // degree 1: e_i (or eps^i)

Coeffs add(const Coeffs& a, const Coeffs& b);
Coeffs sub(const Coeffs& a, const Coeffs& b);
Coeffs scale(const Expr& f, const Coeffs& a);
Coeffs scale(double f, const Coeffs& a);
Coeffs wedge(const Coeffs& a, const Coeffs& b);

// (i_phi P)(alpha_1,...,alpha_{p-1}) = P(phi, alpha_1,...): the 1-form phi
// enters the first argument slot.
Multivector contract_form(const AForm& phi, const Multivector& P);

// i_{X_1 ^ ... ^ X_p} = i_{X_p} o ... o i_{X_1}; i_{X_1} acts first, so for a
// frame tuple the lowest index is contracted first.
AForm contract_mv(const Multivector& X, const AForm& w);

// Full pairing of an equal-degree form/multivector pair.
Expr pairing(const AForm& w, const Multivector& X);

Expr top_coefficient(const Coeffs& a, int rank);

// Anchored frame presentation of a Lie algebroid over functions of `vars`:
// rank-many frame sections e_a, anchor components anchor[a][u] of rho(e_a),
// and structure functions structure[{i,j}][k] = C^k_{ij} with
// [e_i,e_j] = sum_k C^k_{ij} e_k.  Entries are looked up through
// antisymmetry when only one orientation of (i,j) is stored.
struct Algebroid {
  VarSpace vars;
  int rank = 0;
  std::vector<std::vector<Expr>> anchor;
  std::map<std::pair<int, int>, std::map<int, Expr>> structure;

  Multivector bracket_frame(int i, int j) const;
  Expr rho_apply(int a, const Expr& f) const;        // derivation along rho(e_a)
  std::vector<Expr> rho_of(const Multivector& X) const;  // section pushforward
};

Algebroid tangent_algebroid(const VarSpace& vars);

// Schouten bracket, extended frame-wise from the degree-(1,1) bracket by
//   [cE_A, dE_B] = c d [E_A,E_B] + c [E_A,d] ^ E_B
//                  - (-1)^{(p-1)(q-1)} d [E_B,c] ^ E_A
// with [E_A,f] = sum_i (-1)^{p-1-i} rho(e_{a_i})(f) E_{A minus a_i}.
Multivector schouten(const Algebroid& A, const Multivector& P, const Multivector& Q);

// Cartan differential.
AForm differential(const Algebroid& A, const AForm& w);

// Lie derivative of a form along a multivector:
//   L_X w = i_X dw + (-1)^{p-1} d i_X w,  p = degree of X.
AForm lie_derivative(const Algebroid& A, const Multivector& X, const AForm& w);

// Pushforward of a bivector along the anchor, expressed in the coordinate
// frame of the base: out^{uv} = sum_{a<b} c_{ab} (rho_a^u rho_b^v -
// rho_a^v rho_b^u).  The result lives on the tangent algebroid of A.vars.
Multivector anchor_push_bivector(const Algebroid& A, const Multivector& P);

// Structural soundness reports: antisymmetry of redundant structure entries,
// Jacobi identity on distinct frame triples, anchor morphism property.
// Malformed containers (wrong anchor shape, out-of-range indices) throw
// std::invalid_argument instead of reporting.
std::vector<Report> validate_algebroid(const Algebroid& A, const Sampling& s);

// Sampled residual of a should-vanish family of scalars / graded object.
Report exprs_report(std::string check, std::string anchor,
                    const std::vector<Expr>& exprs,
                    const std::vector<Point>& pts, const Sampling& s);
Report coeffs_report(std::string check, std::string anchor, const Coeffs& diff,
                     const std::vector<Point>& pts, const Sampling& s);

}  // namespace jnalg
