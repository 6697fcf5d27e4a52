#include "jnalg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <utility>

namespace jnalg {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_func_name(std::string_view s) {
  return s == "exp" || s == "ln" || s == "sin" || s == "cos";
}

}  // namespace

// ---------------------------------------------------------------- VarSpace

VarSpace::VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const std::string& n = names_[i];
    if (n.empty() || !is_ident_start(n[0]))
      throw std::invalid_argument("coordinate name '" + n + "' is not an identifier");
    for (char c : n)
      if (!is_ident_char(c))
        throw std::invalid_argument("coordinate name '" + n + "' is not an identifier");
    if (is_func_name(n))
      throw std::invalid_argument("coordinate name '" + n + "' shadows a builtin function");
    if (n == "t" && i + 1 != names_.size())
      throw std::invalid_argument("coordinate 't' is reserved for the last slot");
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[j] == n)
        throw std::invalid_argument("duplicate coordinate name '" + n + "'");
  }
}

int VarSpace::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

bool VarSpace::has_t() const { return !names_.empty() && names_.back() == "t"; }

int VarSpace::t_index() const {
  return has_t() ? static_cast<int>(names_.size()) - 1 : -1;
}

VarSpace VarSpace::with_t() const {
  if (has_t()) throw std::invalid_argument("coordinate 't' already present");
  std::vector<std::string> n = names_;
  n.push_back("t");
  return VarSpace(std::move(n));
}

// ------------------------------------------------------------------- nodes

struct Expr::Node {
  Kind kind = Kind::Const;
  double value = 0.0;   // Const
  int var = -1;         // Var
  int expo = 0;         // Pow
  std::string name;     // Var
  Expr a, b;            // children; b unused for unary kinds
};

// A default-constructed Expr is a null handle that reads as the constant 0;
// allocating a Node here would recurse through the Node's own Expr members.
Expr::Expr() = default;
Expr::Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

Expr Expr::constant(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite constant");
  if (v == 0.0) v = 0.0;  // normalize -0
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::var(int index, std::string name) {
  if (index < 0) throw std::invalid_argument("negative variable index");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::unary(Kind k, Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind k, Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->a = std::move(base);
  n->expo = exponent;
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return n_ ? n_->kind : Kind::Const; }
double Expr::cval() const { return n_ ? n_->value : 0.0; }
int Expr::var_index() const { return n_->var; }
const std::string& Expr::var_name() const { return n_->name; }
int Expr::exponent() const { return n_->expo; }
const Expr& Expr::child(int i) const { return i == 0 ? n_->a : n_->b; }

bool Expr::is_const(double v) const {
  return kind() == Kind::Const && cval() == v;
}

bool Expr::same(const Expr& o) const {
  if (n_ == o.n_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Const: return cval() == o.cval();
    case Kind::Var: return var_index() == o.var_index() && var_name() == o.var_name();
    case Kind::Pow: return exponent() == o.exponent() && child(0).same(o.child(0));
    case Kind::Neg:
    case Kind::Exp:
    case Kind::Ln:
    case Kind::Sin:
    case Kind::Cos: return child(0).same(o.child(0));
    default: return child(0).same(o.child(0)) && child(1).same(o.child(1));
  }
}

Expr exp(const Expr& a) { return Expr::unary(Expr::Kind::Exp, a); }
Expr ln(const Expr& a) { return Expr::unary(Expr::Kind::Ln, a); }
Expr sin(const Expr& a) { return Expr::unary(Expr::Kind::Sin, a); }
Expr cos(const Expr& a) { return Expr::unary(Expr::Kind::Cos, a); }

// ------------------------------------------------------------------ errors

parse_error::parse_error(std::string msg, std::size_t at)
    : std::runtime_error(msg + " (offset " + std::to_string(at) + ")"), offset(at) {}

eval_error::eval_error(std::string msg, std::string offending)
    : std::runtime_error(msg + " in '" + offending + "'"), node(std::move(offending)) {}

// ------------------------------------------------------------------ parser

namespace {

struct Parser {
  const std::string& s;
  const VarSpace& vars;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw parse_error(msg, at);
  }

  Expr parse() {
    Expr e = expr();
    if (!eof()) fail(std::string("unexpected character '") + s[i] + "'", i);
    return e;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      skip_ws();
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        char op = s[i++];
        Expr r = term();
        e = Expr::binary(op == '+' ? Expr::Kind::Add : Expr::Kind::Sub, e, r);
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      skip_ws();
      if (i < s.size() && (s[i] == '*' || s[i] == '/')) {
        char op = s[i++];
        Expr r = factor();
        e = Expr::binary(op == '*' ? Expr::Kind::Mul : Expr::Kind::Div, e, r);
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    skip_ws();
    if (i < s.size() && s[i] == '-') {
      ++i;
      Expr f = factor();
      // Fold a leading minus into a numeric literal so that the printed form
      // of a negative constant parses back to the same node.
      if (f.kind() == Expr::Kind::Const) return Expr::constant(-f.cval());
      return Expr::unary(Expr::Kind::Neg, f);
    }
    Expr b = base();
    skip_ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      return Expr::pow(b, integer());
    }
    return b;
  }

  Expr base() {
    skip_ws();
    if (i >= s.size()) fail("unexpected end of input", i);
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s.c_str() + i;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("invalid number", i);
      if (!std::isfinite(v)) fail("numeric literal out of range", i);
      i += static_cast<std::size_t>(end - begin);
      return Expr::constant(v);
    }
    if (c == '(') {
      ++i;
      Expr e = expr();
      skip_ws();
      if (i >= s.size() || s[i] != ')') fail("expected ')'", i);
      ++i;
      return e;
    }
    if (is_ident_start(c)) {
      std::size_t start = i;
      while (i < s.size() && is_ident_char(s[i])) ++i;
      std::string ident = s.substr(start, i - start);
      if (is_func_name(ident)) {
        skip_ws();
        if (i >= s.size() || s[i] != '(')
          fail("function '" + ident + "' requires a parenthesized argument", start);
        ++i;
        Expr arg = expr();
        skip_ws();
        if (i >= s.size() || s[i] != ')') fail("expected ')'", i);
        ++i;
        if (ident == "exp") return jnalg::exp(arg);
        if (ident == "ln") return jnalg::ln(arg);
        if (ident == "sin") return jnalg::sin(arg);
        return jnalg::cos(arg);
      }
      int idx = vars.index(ident);
      if (idx < 0) fail("unknown identifier '" + ident + "'", start);
      return Expr::var(idx, ident);
    }
    fail(std::string("unexpected character '") + c + "'", i);
  }

  int integer() {
    skip_ws();
    bool neg = false;
    if (i < s.size() && s[i] == '-') {
      neg = true;
      ++i;
      skip_ws();
    }
    std::size_t start = i;
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > 1000000) fail("exponent too large", start);
      ++i;
    }
    if (i == start) fail("expected integer exponent", i);
    return static_cast<int>(neg ? -v : v);
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const VarSpace& vars) {
  Parser p{text, vars};
  return p.parse();
}

// ----------------------------------------------------------------- printer

namespace {

void fmt_double(double v, std::string& out) {
  double ip = 0.0;
  if (std::modf(v, &ip) == 0.0 && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    out += buf;
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

bool is_sum(Expr::Kind k) { return k == Expr::Kind::Add || k == Expr::Kind::Sub; }
bool is_product(Expr::Kind k) { return k == Expr::Kind::Mul || k == Expr::Kind::Div; }

void pr(const Expr& e, std::string& out);

void pr_wrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) {
    out += '(';
    pr(e, out);
    out += ')';
  } else {
    pr(e, out);
  }
}

void pr(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Const:
      fmt_double(e.cval(), out);
      return;
    case K::Var:
      out += e.var_name();
      return;
    case K::Add:
    case K::Sub:
      pr(e.child(0), out);
      out += (e.kind() == K::Add ? '+' : '-');
      pr_wrapped(e.child(1), is_sum(e.child(1).kind()), out);
      return;
    case K::Mul:
    case K::Div:
      pr_wrapped(e.child(0), is_sum(e.child(0).kind()), out);
      out += (e.kind() == K::Mul ? '*' : '/');
      pr_wrapped(e.child(1),
                 is_sum(e.child(1).kind()) || is_product(e.child(1).kind()), out);
      return;
    case K::Neg:
      out += '-';
      pr_wrapped(e.child(0),
                 is_sum(e.child(0).kind()) || is_product(e.child(0).kind()), out);
      return;
    case K::Pow: {
      const Expr& b = e.child(0);
      bool wrap = true;
      switch (b.kind()) {
        case K::Var:
        case K::Exp:
        case K::Ln:
        case K::Sin:
        case K::Cos:
          wrap = false;
          break;
        case K::Const:
          wrap = b.cval() < 0;
          break;
        default:
          break;
      }
      pr_wrapped(b, wrap, out);
      out += '^';
      out += std::to_string(e.exponent());
      return;
    }
    case K::Exp:
    case K::Ln:
    case K::Sin:
    case K::Cos: {
      switch (e.kind()) {
        case K::Exp: out += "exp("; break;
        case K::Ln: out += "ln("; break;
        case K::Sin: out += "sin("; break;
        default: out += "cos("; break;
      }
      pr(e.child(0), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  pr(e, out);
  return out;
}

// -------------------------------------------------------------- derivative

Expr fneg(const Expr& a) {
  if (a.kind() == Expr::Kind::Const) return Expr::constant(-a.cval());
  if (a.kind() == Expr::Kind::Neg) return a.child(0);
  return -a;
}

Expr fadd(const Expr& a, const Expr& b) {
  if (a.is_const(0.0)) return b;
  if (b.is_const(0.0)) return a;
  if (a.is_const() && b.is_const()) return Expr::constant(a.cval() + b.cval());
  return a + b;
}

Expr fsub(const Expr& a, const Expr& b) {
  if (b.is_const(0.0)) return a;
  if (a.is_const() && b.is_const()) return Expr::constant(a.cval() - b.cval());
  if (a.is_const(0.0)) return fneg(b);
  return a - b;
}

Expr fmul(const Expr& a, const Expr& b) {
  if (a.is_const(0.0) || b.is_const(0.0)) return Expr::constant(0.0);
  if (a.is_const(1.0)) return b;
  if (b.is_const(1.0)) return a;
  if (a.is_const() && b.is_const()) return Expr::constant(a.cval() * b.cval());
  return a * b;
}

namespace {

Expr mk_div(const Expr& a, const Expr& b) {
  if (a.is_const(0.0) && !b.is_const(0.0)) return Expr::constant(0.0);
  if (b.is_const(1.0)) return a;
  return a / b;
}

Expr mk_pow(const Expr& a, int k) {
  if (k == 0) return Expr::constant(1.0);
  if (k == 1) return a;
  return Expr::pow(a, k);
}

}  // namespace

Expr diff(const Expr& e, int var) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Const:
      return Expr::constant(0.0);
    case K::Var:
      return Expr::constant(e.var_index() == var ? 1.0 : 0.0);
    case K::Add:
      return fadd(diff(e.child(0), var), diff(e.child(1), var));
    case K::Sub:
      return fsub(diff(e.child(0), var), diff(e.child(1), var));
    case K::Mul:
      return fadd(fmul(diff(e.child(0), var), e.child(1)),
                  fmul(e.child(0), diff(e.child(1), var)));
    case K::Div:
      return mk_div(fsub(fmul(diff(e.child(0), var), e.child(1)),
                         fmul(e.child(0), diff(e.child(1), var))),
                    Expr::pow(e.child(1), 2));
    case K::Pow: {
      int k = e.exponent();
      if (k == 0) return Expr::constant(0.0);
      return fmul(fmul(Expr::constant(static_cast<double>(k)),
                       mk_pow(e.child(0), k - 1)),
                  diff(e.child(0), var));
    }
    case K::Neg:
      return fneg(diff(e.child(0), var));
    case K::Exp:
      return fmul(jnalg::exp(e.child(0)), diff(e.child(0), var));
    case K::Ln:
      return mk_div(diff(e.child(0), var), e.child(0));
    case K::Sin:
      return fmul(jnalg::cos(e.child(0)), diff(e.child(0), var));
    case K::Cos:
      return fneg(fmul(jnalg::sin(e.child(0)), diff(e.child(0), var)));
  }
  throw std::logic_error("diff: unknown node kind");
}

// -------------------------------------------------------------- evaluation

double eval(const Expr& e, const Point& p) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Const:
      return e.cval();
    case K::Var: {
      auto i = static_cast<std::size_t>(e.var_index());
      if (i >= p.size()) throw eval_error("point has too few coordinates", to_string(e));
      return p[i];
    }
    case K::Add:
      return eval(e.child(0), p) + eval(e.child(1), p);
    case K::Sub:
      return eval(e.child(0), p) - eval(e.child(1), p);
    case K::Mul:
      return eval(e.child(0), p) * eval(e.child(1), p);
    case K::Div: {
      double num = eval(e.child(0), p);
      double den = eval(e.child(1), p);
      if (std::fabs(den) < 1e-300) throw eval_error("division by zero", to_string(e));
      return num / den;
    }
    case K::Pow: {
      double b = eval(e.child(0), p);
      int k = e.exponent();
      if (k < 0 && std::fabs(b) < 1e-300)
        throw eval_error("zero base with negative exponent", to_string(e));
      return std::pow(b, static_cast<double>(k));
    }
    case K::Neg:
      return -eval(e.child(0), p);
    case K::Exp:
      return std::exp(eval(e.child(0), p));
    case K::Ln: {
      double a = eval(e.child(0), p);
      if (a <= 0.0) throw eval_error("logarithm of a non-positive value", to_string(e));
      return std::log(a);
    }
    case K::Sin:
      return std::sin(eval(e.child(0), p));
    case K::Cos:
      return std::cos(eval(e.child(0), p));
  }
  throw std::logic_error("eval: unknown node kind");
}

// ---------------------------------------------------------- simplification

namespace {

// Splits a (simplified) subtree into signed summands, descending through
// +, - and unary minus.
void flatten_sum(const Expr& e, double sign, std::vector<std::pair<double, Expr>>& out) {
  switch (e.kind()) {
    case Expr::Kind::Add:
      flatten_sum(e.child(0), sign, out);
      flatten_sum(e.child(1), sign, out);
      return;
    case Expr::Kind::Sub:
      flatten_sum(e.child(0), sign, out);
      flatten_sum(e.child(1), -sign, out);
      return;
    case Expr::Kind::Neg:
      flatten_sum(e.child(0), -sign, out);
      return;
    default:
      out.emplace_back(sign, e);
  }
}

// Splits a (simplified) subtree into a scalar coefficient and the ordered
// list of non-constant factors, descending through *, unary minus and
// constant leaves.
void flatten_product(const Expr& e, double& coeff, std::vector<Expr>& factors) {
  switch (e.kind()) {
    case Expr::Kind::Mul:
      flatten_product(e.child(0), coeff, factors);
      flatten_product(e.child(1), coeff, factors);
      return;
    case Expr::Kind::Neg:
      coeff = -coeff;
      flatten_product(e.child(0), coeff, factors);
      return;
    case Expr::Kind::Const:
      coeff *= e.cval();
      return;
    default:
      factors.push_back(e);
  }
}

Expr chain_mul(const std::vector<Expr>& factors) {
  Expr acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
  return acc;
}

Expr rebuild_product(double coeff, const std::vector<Expr>& factors) {
  if (coeff == 0.0) return Expr::constant(0.0);
  if (factors.empty()) return Expr::constant(coeff);
  // Canonical commutative order so that equal products from different
  // computation routes collect (and cancel) by printed key.
  std::vector<Expr> sorted = factors;
  std::stable_sort(sorted.begin(), sorted.end(), [](const Expr& a, const Expr& b) {
    return to_string(a) < to_string(b);
  });
  Expr chain = chain_mul(sorted);
  if (coeff == 1.0) return chain;
  if (coeff == -1.0) return -chain;
  return Expr::constant(coeff) * chain;
}

// Extracts the leading scalar coefficient of a summand produced by
// flatten_sum over already-normalized products.
void peel_coefficient(Expr term, double& coeff, Expr& rest, bool& has_rest) {
  for (;;) {
    if (term.kind() == Expr::Kind::Const) {
      coeff *= term.cval();
      has_rest = false;
      return;
    }
    if (term.kind() == Expr::Kind::Neg) {
      coeff = -coeff;
      term = term.child(0);
      continue;
    }
    if (term.kind() == Expr::Kind::Mul &&
        term.child(0).kind() == Expr::Kind::Const) {
      coeff *= term.child(0).cval();
      term = term.child(1);
      continue;
    }
    rest = term;
    has_rest = true;
    return;
  }
}

Expr collect_sum(const Expr& e) {
  std::vector<std::pair<double, Expr>> raw;
  flatten_sum(e, 1.0, raw);

  double const_part = 0.0;
  std::map<std::string, std::pair<double, Expr>> groups;
  for (auto& [sign, term] : raw) {
    double c = sign;
    Expr rest;
    bool has_rest = false;
    peel_coefficient(term, c, rest, has_rest);
    if (!has_rest) {
      const_part += c;
      continue;
    }
    std::string key = to_string(rest);
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(key, std::make_pair(c, rest));
    else
      it->second.first += c;
  }

  Expr acc;
  bool first = true;
  for (auto& [key, cr] : groups) {
    double c = cr.first;
    if (c == 0.0) continue;
    const Expr& rest = cr.second;
    if (first) {
      if (c == 1.0)
        acc = rest;
      else if (c == -1.0)
        acc = -rest;
      else
        acc = Expr::constant(c) * rest;
      first = false;
    } else if (c > 0.0) {
      acc = acc + (c == 1.0 ? rest : Expr::constant(c) * rest);
    } else {
      acc = acc - (c == -1.0 ? rest : Expr::constant(-c) * rest);
    }
  }
  if (first) return Expr::constant(const_part);
  if (const_part > 0.0) return acc + Expr::constant(const_part);
  if (const_part < 0.0) return acc - Expr::constant(-const_part);
  return acc;
}

}  // namespace

Expr simplify_basic(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Const:
    case K::Var:
      return e;
    case K::Add:
    case K::Sub: {
      Expr a = simplify_basic(e.child(0));
      Expr b = simplify_basic(e.child(1));
      return collect_sum(Expr::binary(e.kind(), a, b));
    }
    case K::Neg: {
      Expr a = simplify_basic(e.child(0));
      if (a.kind() == K::Const) return Expr::constant(-a.cval());
      if (a.kind() == K::Neg) return a.child(0);
      if (a.kind() == K::Add || a.kind() == K::Sub) return collect_sum(-a);
      return -a;
    }
    case K::Mul: {
      Expr a = simplify_basic(e.child(0));
      Expr b = simplify_basic(e.child(1));
      double coeff = 1.0;
      std::vector<Expr> factors;
      flatten_product(a * b, coeff, factors);
      return rebuild_product(coeff, factors);
    }
    case K::Div: {
      Expr a = simplify_basic(e.child(0));
      Expr b = simplify_basic(e.child(1));
      if (b.is_const(1.0)) return a;
      if (a.is_const(0.0) && !b.is_const(0.0)) return Expr::constant(0.0);
      if (a.is_const() && b.is_const() && b.cval() != 0.0)
        return Expr::constant(a.cval() / b.cval());
      return a / b;
    }
    case K::Pow: {
      Expr a = simplify_basic(e.child(0));
      int k = e.exponent();
      if (k == 0) return Expr::constant(1.0);
      if (k == 1) return a;
      if (a.is_const() && !(a.cval() == 0.0 && k < 0)) {
        double v = std::pow(a.cval(), static_cast<double>(k));
        if (std::isfinite(v)) return Expr::constant(v);
      }
      return Expr::pow(a, k);
    }
    case K::Exp: {
      Expr a = simplify_basic(e.child(0));
      if (a.is_const()) {
        double v = std::exp(a.cval());
        if (std::isfinite(v)) return Expr::constant(v);
      }
      return jnalg::exp(a);
    }
    case K::Ln: {
      Expr a = simplify_basic(e.child(0));
      if (a.is_const() && a.cval() > 0.0) return Expr::constant(std::log(a.cval()));
      return jnalg::ln(a);
    }
    case K::Sin: {
      Expr a = simplify_basic(e.child(0));
      if (a.is_const()) return Expr::constant(std::sin(a.cval()));
      return jnalg::sin(a);
    }
    case K::Cos: {
      Expr a = simplify_basic(e.child(0));
      if (a.is_const()) return Expr::constant(std::cos(a.cval()));
      return jnalg::cos(a);
    }
  }
  throw std::logic_error("simplify_basic: unknown node kind");
}

bool is_zero_expr(const Expr& e) { return simplify_basic(e).is_const(0.0); }

}  // namespace jnalg
