#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jnalg {

// Ordered list of scalar coordinate names.  Names must be unique; the
// reserved name "t" may appear only in the last slot (it is appended by the
// cylinder construction and must never be shadowed by a base coordinate).
class VarSpace {
 public:
  VarSpace() = default;
  explicit VarSpace(std::vector<std::string> names);

  int index(std::string_view name) const;  // -1 if absent
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool has_t() const;
  int t_index() const;          // -1 if absent
  VarSpace with_t() const;      // appends "t"; throws if already present

  bool operator==(const VarSpace&) const = default;

 private:
  std::vector<std::string> names_;
};

// Evaluation point: one double per coordinate, in VarSpace order.
using Point = std::vector<double>;

struct parse_error : std::runtime_error {
  parse_error(std::string msg, std::size_t at);
  std::size_t offset;  // byte offset into the source text
};

struct eval_error : std::runtime_error {
  eval_error(std::string msg, std::string offending);
  std::string node;  // printed form of the subexpression that failed
};

// Immutable scalar expression tree.  Copies share structure; there is no
// mutating API, so sharing is safe.
class Expr {
 public:
  enum class Kind : std::uint8_t {
    Const, Var, Add, Sub, Mul, Div, Pow, Neg, Exp, Ln, Sin, Cos
  };

  Expr();  // the constant 0
  static Expr constant(double v);
  static Expr var(int index, std::string name);
  static Expr unary(Kind k, Expr a);
  static Expr binary(Kind k, Expr a, Expr b);
  static Expr pow(Expr base, int exponent);

  Kind kind() const;
  double cval() const;               // Const only
  int var_index() const;             // Var only
  const std::string& var_name() const;
  int exponent() const;              // Pow only
  const Expr& child(int i) const;    // 0 for unary/left, 1 for right

  bool is_const() const { return kind() == Kind::Const; }
  bool is_const(double v) const;
  bool same(const Expr& other) const;  // structural equality

  friend Expr operator+(const Expr& a, const Expr& b) { return binary(Kind::Add, a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return binary(Kind::Sub, a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return binary(Kind::Mul, a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return binary(Kind::Div, a, b); }
  friend Expr operator-(const Expr& a) { return unary(Kind::Neg, a); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> n_;
};

Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

// Folding constructors: absorb 0/1 operands and fold constant pairs, so that
// mechanically assembled trees stay compact.  Semantics match the plain
// operators otherwise.
Expr fadd(const Expr& a, const Expr& b);
Expr fsub(const Expr& a, const Expr& b);
Expr fmul(const Expr& a, const Expr& b);
Expr fneg(const Expr& a);

// Recursive-descent parser for the scalar grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | base ("^" integer)?
//   base   := number | ident | "(" expr ")" | func "(" expr ")"
//   func   := "exp" | "ln" | "sin" | "cos"
// Identifiers must name a coordinate of `vars`.  Errors carry byte offsets.
Expr parse_expr(const std::string& text, const VarSpace& vars);

// Printing round-trips: parse_expr(to_string(e), vars) is structurally equal
// to e for every tree the parser can produce.
std::string to_string(const Expr& e);

Expr diff(const Expr& e, int var);
double eval(const Expr& e, const Point& p);

// Conservative cleanup: constant folding, 0/1 absorption, double negation,
// pow collapse, and like-term collection over flattened sums.  Preserves
// meaning on the evaluation domain; deterministic for a given input tree.
Expr simplify_basic(const Expr& e);

// True when simplify_basic reduces the expression to the literal 0.
bool is_zero_expr(const Expr& e);

}  // namespace jnalg
