#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jnalg/batteries.hpp"

namespace jnalg {

// A loaded problem document: the algebroid data plus whatever optional
// geometric attachments (bivector, recursion operator, volume sections) the
// source declared. Commands consult the flags and refuse when an attachment
// they need is missing.
struct SpecDocument {
  std::string name;
  Algebroid A;
  AForm phi0 = zero_graded(1);
  Multivector P;
  Endo N;
  std::optional<Expr> eta, mu, nu;
  bool has_P = false;
  bool has_N = false;
  Sampling sampling;

  JacobiAlgebroid jacobi() const { return JacobiAlgebroid{A, phi0}; }
  VolumeData volumes() const;  // throws when any of eta/mu/nu is missing
};

// Parse a JSON document (see README for the schema). Unknown keys, malformed
// expressions, and dimension mismatches all raise std::invalid_argument with
// a message naming the offender.
SpecDocument load_spec_json(const std::string& text, const std::string& name);
SpecDocument load_spec(const std::string& path);

// Built-in catalog. Accepted names: abelian2, tangent2 / tangent(2),
// tangent3 / tangent(3), tmr_of_jacobi, tmr_dual, contact_r3, e2_line.
// Every fixture is validated at construction time.
SpecDocument fixture(const std::string& name);
std::vector<std::string> fixture_names();

// Command dispatch. Commands: validate, check-jacobi, check-compat,
// check-nijenhuis, hierarchy, modular, duality, poissonize-diff, all.
// Throws std::invalid_argument for an unknown command or a command/document
// mismatch (such as `modular` on a document without volume sections).
std::vector<Report> run_command(const std::string& command,
                                const SpecDocument& doc, const Sampling& s);

}  // namespace jnalg
