#include "jnalg/algebroid.hpp"

#include <algorithm>
#include <stdexcept>

namespace jnalg {

int sort_sign(IdxTuple& A) {
  int sign = 1;
  // Bubble sort keeps the transposition count exact (tuples are tiny).
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j + 1 + i < A.size(); ++j) {
      if (A[j] > A[j + 1]) {
        std::swap(A[j], A[j + 1]);
        sign = -sign;
      } else if (A[j] == A[j + 1]) {
        return 0;
      }
    }
  }
  return sign;
}

void for_each_tuple(int n, int k, const std::function<void(const IdxTuple&)>& fn) {
  if (k < 0 || k > n) return;
  IdxTuple cur;
  cur.reserve(static_cast<std::size_t>(k));
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      fn(cur);
      return;
    }
    int need = k - static_cast<int>(cur.size());
    for (int i = start; i <= n - need; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// ------------------------------------------------------------------ Coeffs

Expr Coeffs::coeff(const IdxTuple& A) const {
  auto it = c.find(A);
  return it == c.end() ? Expr::constant(0.0) : it->second;
}

void Coeffs::add_term(const IdxTuple& A, const Expr& v) {
  if (v.is_const(0.0)) return;
  auto it = c.find(A);
  if (it == c.end())
    c.emplace(A, v);
  else
    it->second = fadd(it->second, v);
}

Coeffs Coeffs::normalized() const {
  Coeffs out;
  out.degree = degree;
  for (const auto& [A, v] : c) {
    Expr s = simplify_basic(v);
    if (!s.is_const(0.0)) out.c.emplace(A, std::move(s));
  }
  return out;
}

bool Coeffs::is_zero() const {
  for (const auto& [A, v] : c)
    if (!is_zero_expr(v)) return false;
  return true;
}

std::vector<Expr> Coeffs::entries() const {
  std::vector<Expr> out;
  out.reserve(c.size());
  for (const auto& [A, v] : c) out.push_back(v);
  return out;
}

Coeffs zero_graded(int degree) {
  Coeffs out;
  out.degree = degree;
  return out;
}

Coeffs scalar_graded(const Expr& f) {
  Coeffs out;
  out.degree = 0;
  out.add_term({}, f);
  return out;
}

Coeffs frame_element(int i) {
  Coeffs out;
  out.degree = 1;
  out.add_term({i}, Expr::constant(1.0));
  return out;
}

Coeffs add(const Coeffs& a, const Coeffs& b) {
  Coeffs out = a;
  for (const auto& [A, v] : b.c) out.add_term(A, v);
  return out;
}

Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs out = a;
  for (const auto& [A, v] : b.c) out.add_term(A, fneg(v));
  return out;
}

Coeffs scale(const Expr& f, const Coeffs& a) {
  Coeffs out;
  out.degree = a.degree;
  for (const auto& [A, v] : a.c) out.add_term(A, fmul(f, v));
  return out;
}

Coeffs scale(double f, const Coeffs& a) { return scale(Expr::constant(f), a); }

Coeffs wedge(const Coeffs& a, const Coeffs& b) {
  Coeffs out;
  out.degree = a.degree + b.degree;
  for (const auto& [A, x] : a.c) {
    for (const auto& [B, y] : b.c) {
      IdxTuple T = A;
      T.insert(T.end(), B.begin(), B.end());
      int s = sort_sign(T);
      if (s == 0) continue;
      Expr term = fmul(x, y);
      out.add_term(T, s < 0 ? fneg(term) : term);
    }
  }
  return out.normalized();
}

Multivector contract_form(const AForm& phi, const Multivector& P) {
  Multivector out;
  out.degree = P.degree - 1;
  for (const auto& [A, v] : P.c) {
    for (std::size_t pos = 0; pos < A.size(); ++pos) {
      Expr pa = phi.coeff({A[pos]});
      if (pa.is_const(0.0)) continue;
      IdxTuple B;
      B.reserve(A.size() - 1);
      for (std::size_t r = 0; r < A.size(); ++r)
        if (r != pos) B.push_back(A[r]);
      Expr term = fmul(pa, v);
      out.add_term(B, (pos & 1) ? fneg(term) : term);
    }
  }
  return out.normalized();
}

namespace {

// Interior product of the basis vector e_j into a form.
Coeffs contract_single(int j, const Coeffs& w) {
  Coeffs out;
  out.degree = w.degree - 1;
  for (const auto& [A, v] : w.c) {
    auto it = std::find(A.begin(), A.end(), j);
    if (it == A.end()) continue;
    std::size_t pos = static_cast<std::size_t>(it - A.begin());
    IdxTuple B;
    B.reserve(A.size() - 1);
    for (std::size_t r = 0; r < A.size(); ++r)
      if (r != pos) B.push_back(A[r]);
    out.add_term(B, (pos & 1) ? fneg(v) : v);
  }
  return out;
}

}  // namespace

AForm contract_mv(const Multivector& X, const AForm& w) {
  AForm out;
  out.degree = w.degree - X.degree;
  for (const auto& [A, v] : X.c) {
    Coeffs cur = w;
    for (int a : A) cur = contract_single(a, cur);
    for (const auto& [B, d] : cur.c) out.add_term(B, fmul(v, d));
  }
  return out.normalized();
}

Expr pairing(const AForm& w, const Multivector& X) {
  Expr s = Expr::constant(0.0);
  for (const auto& [A, v] : w.c) s = fadd(s, fmul(v, X.coeff(A)));
  return simplify_basic(s);
}

Expr top_coefficient(const Coeffs& a, int rank) {
  IdxTuple top(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) top[static_cast<std::size_t>(i)] = i;
  return a.coeff(top);
}

// --------------------------------------------------------------- Algebroid

Multivector Algebroid::bracket_frame(int i, int j) const {
  Multivector out;
  out.degree = 1;
  if (i == j) return out;
  auto it = structure.find({i, j});
  if (it != structure.end()) {
    for (const auto& [k, v] : it->second) out.add_term({k}, v);
    return out;
  }
  it = structure.find({j, i});
  if (it != structure.end())
    for (const auto& [k, v] : it->second) out.add_term({k}, fneg(v));
  return out;
}

Expr Algebroid::rho_apply(int a, const Expr& f) const {
  Expr s = Expr::constant(0.0);
  const auto& row = anchor.at(static_cast<std::size_t>(a));
  for (std::size_t u = 0; u < row.size(); ++u)
    s = fadd(s, fmul(row[u], diff(f, static_cast<int>(u))));
  return s;
}

std::vector<Expr> Algebroid::rho_of(const Multivector& X) const {
  std::vector<Expr> out(vars.size(), Expr::constant(0.0));
  for (const auto& [A, v] : X.c) {
    const auto& row = anchor.at(static_cast<std::size_t>(A.at(0)));
    for (std::size_t u = 0; u < out.size(); ++u)
      out[u] = simplify_basic(fadd(out[u], fmul(v, row[u])));
  }
  return out;
}

Algebroid tangent_algebroid(const VarSpace& vars) {
  Algebroid A;
  A.vars = vars;
  A.rank = static_cast<int>(vars.size());
  for (int a = 0; a < A.rank; ++a) {
    std::vector<Expr> row(vars.size(), Expr::constant(0.0));
    row[static_cast<std::size_t>(a)] = Expr::constant(1.0);
    A.anchor.push_back(std::move(row));
  }
  return A;
}

Multivector schouten(const Algebroid& alg, const Multivector& P, const Multivector& Q) {
  int p = P.degree;
  int q = Q.degree;
  Multivector out;
  out.degree = p + q - 1;
  double s3 = (((p - 1) & 1) && ((q - 1) & 1)) ? 1.0 : -1.0;  // -(-1)^{(p-1)(q-1)}
  for (const auto& [A, cv] : P.c) {
    for (const auto& [B, dv] : Q.c) {
      for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = 0; j < B.size(); ++j) {
          Multivector br = alg.bracket_frame(A[i], B[j]);
          if (br.c.empty()) continue;
          IdxTuple rest;
          rest.reserve(A.size() + B.size() - 1);
          rest.push_back(0);  // placeholder for the bracket index
          for (std::size_t r = 0; r < A.size(); ++r)
            if (r != i) rest.push_back(A[r]);
          for (std::size_t r = 0; r < B.size(); ++r)
            if (r != j) rest.push_back(B[r]);
          double sgn = ((i + j) & 1) ? -1.0 : 1.0;
          for (const auto& [K, v] : br.c) {
            IdxTuple T = rest;
            T[0] = K.at(0);
            int s = sort_sign(T);
            if (s == 0) continue;
            out.add_term(T, fmul(Expr::constant(sgn * s), fmul(cv, fmul(dv, v))));
          }
        }
      }
      for (std::size_t i = 0; i < A.size(); ++i) {
        IdxTuple T;
        T.reserve(A.size() + B.size() - 1);
        for (std::size_t r = 0; r < A.size(); ++r)
          if (r != i) T.push_back(A[r]);
        T.insert(T.end(), B.begin(), B.end());
        int s = sort_sign(T);
        if (s == 0) continue;
        double sgn = ((p - 1 - static_cast<int>(i)) & 1) ? -1.0 : 1.0;
        out.add_term(T, fmul(Expr::constant(sgn * s),
                             fmul(cv, alg.rho_apply(A[i], dv))));
      }
      for (std::size_t j = 0; j < B.size(); ++j) {
        IdxTuple T;
        T.reserve(A.size() + B.size() - 1);
        for (std::size_t r = 0; r < B.size(); ++r)
          if (r != j) T.push_back(B[r]);
        T.insert(T.end(), A.begin(), A.end());
        int s = sort_sign(T);
        if (s == 0) continue;
        double sgn = ((q - 1 - static_cast<int>(j)) & 1) ? -1.0 : 1.0;
        out.add_term(T, fmul(Expr::constant(s3 * sgn * s),
                             fmul(dv, alg.rho_apply(B[j], cv))));
      }
    }
  }
  return out.normalized();
}

AForm differential(const Algebroid& alg, const AForm& w) {
  int k = w.degree;
  AForm out;
  out.degree = k + 1;
  for_each_tuple(alg.rank, k + 1, [&](const IdxTuple& A) {
    Expr tot = Expr::constant(0.0);
    for (std::size_t i = 0; i < A.size(); ++i) {
      IdxTuple rest;
      rest.reserve(A.size() - 1);
      for (std::size_t r = 0; r < A.size(); ++r)
        if (r != i) rest.push_back(A[r]);
      Expr term = alg.rho_apply(A[i], w.coeff(rest));
      tot = fadd(tot, (i & 1) ? fneg(term) : term);
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (std::size_t j = i + 1; j < A.size(); ++j) {
        Multivector br = alg.bracket_frame(A[i], A[j]);
        if (br.c.empty()) continue;
        IdxTuple rest;
        rest.reserve(A.size() - 1);
        rest.push_back(0);  // placeholder
        for (std::size_t r = 0; r < A.size(); ++r)
          if (r != i && r != j) rest.push_back(A[r]);
        double sgn = ((i + j) & 1) ? -1.0 : 1.0;
        for (const auto& [K, v] : br.c) {
          IdxTuple T = rest;
          T[0] = K.at(0);
          int s = sort_sign(T);
          if (s == 0) continue;
          tot = fadd(tot, fmul(Expr::constant(sgn * s), fmul(v, w.coeff(T))));
        }
      }
    }
    if (!tot.is_const(0.0)) out.add_term(A, tot);
  });
  return out.normalized();
}

AForm lie_derivative(const Algebroid& alg, const Multivector& X, const AForm& w) {
  int p = X.degree;
  AForm a = contract_mv(X, differential(alg, w));
  AForm b = differential(alg, contract_mv(X, w));
  return add(a, scale(((p - 1) & 1) ? -1.0 : 1.0, b)).normalized();
}

Multivector anchor_push_bivector(const Algebroid& alg, const Multivector& P) {
  if (P.degree != 2) throw std::invalid_argument("expected a bivector");
  int dim = static_cast<int>(alg.vars.size());
  Multivector out;
  out.degree = 2;
  for (const auto& [A, c] : P.c) {
    int a = A.at(0), b = A.at(1);
    const auto& ra = alg.anchor.at(static_cast<std::size_t>(a));
    const auto& rb = alg.anchor.at(static_cast<std::size_t>(b));
    for (int u = 0; u < dim; ++u)
      for (int v = u + 1; v < dim; ++v) {
        Expr term = fsub(fmul(ra[static_cast<std::size_t>(u)],
                              rb[static_cast<std::size_t>(v)]),
                         fmul(ra[static_cast<std::size_t>(v)],
                              rb[static_cast<std::size_t>(u)]));
        out.add_term({u, v}, fmul(c, term));
      }
  }
  return out.normalized();
}

// -------------------------------------------------------------- validation

namespace {

std::string pair_label(int i, int j) {
  return std::to_string(i + 1) + "," + std::to_string(j + 1);
}

}  // namespace

std::vector<Report> validate_algebroid(const Algebroid& A, const Sampling& s) {
  std::size_t m = A.vars.size();
  if (A.rank < 0) throw std::invalid_argument("negative rank");
  if (A.anchor.size() != static_cast<std::size_t>(A.rank))
    throw std::invalid_argument("anchor must have one row per frame section");
  for (const auto& row : A.anchor)
    if (row.size() != m)
      throw std::invalid_argument("anchor row width must match the coordinate count");
  for (const auto& [ij, entry] : A.structure) {
    if (ij.first < 0 || ij.first >= A.rank || ij.second < 0 || ij.second >= A.rank)
      throw std::invalid_argument("structure key out of range");
    for (const auto& [k, v] : entry)
      if (k < 0 || k >= A.rank)
        throw std::invalid_argument("structure target index out of range");
  }

  std::vector<Point> pts = sample_points(m, s);
  std::vector<Report> out;

  // Antisymmetry is only at issue where a redundant orientation was stored.
  for (const auto& [ij, entry] : A.structure) {
    auto [i, j] = ij;
    if (i == j) {
      std::vector<Expr> diag;
      for (const auto& [k, v] : entry) diag.push_back(v);
      out.push_back(exprs_report("validate_algebroid",
                                 "antisymmetry(" + pair_label(i, j) + ")", diag,
                                 pts, s));
      continue;
    }
    if (i < j && A.structure.count({j, i})) {
      const auto& rev = A.structure.at({j, i});
      std::vector<Expr> sums;
      for (int k = 0; k < A.rank; ++k) {
        auto a = entry.find(k);
        auto b = rev.find(k);
        Expr ea = a == entry.end() ? Expr::constant(0.0) : a->second;
        Expr eb = b == rev.end() ? Expr::constant(0.0) : b->second;
        sums.push_back(fadd(ea, eb));
      }
      out.push_back(exprs_report("validate_algebroid",
                                 "antisymmetry(" + pair_label(i, j) + ")", sums,
                                 pts, s));
    }
  }

  for_each_tuple(A.rank, 3, [&](const IdxTuple& T) {
    int i = T[0], j = T[1], k = T[2];
    Multivector jac = add(
        add(schouten(A, A.bracket_frame(i, j), frame_element(k)),
            schouten(A, A.bracket_frame(j, k), frame_element(i))),
        schouten(A, A.bracket_frame(k, i), frame_element(j)));
    out.push_back(coeffs_report(
        "validate_algebroid",
        "jacobi(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
            std::to_string(k + 1) + ")",
        jac, pts, s));
  });

  for (int i = 0; i < A.rank; ++i) {
    for (int j = i + 1; j < A.rank; ++j) {
      Multivector br = A.bracket_frame(i, j);
      std::vector<Expr> res;
      for (std::size_t u = 0; u < m; ++u) {
        Expr lhs = Expr::constant(0.0);
        for (const auto& [K, v] : br.c)
          lhs = fadd(lhs, fmul(v, A.anchor[static_cast<std::size_t>(K.at(0))][u]));
        Expr rhs = fsub(A.rho_apply(i, A.anchor[static_cast<std::size_t>(j)][u]),
                        A.rho_apply(j, A.anchor[static_cast<std::size_t>(i)][u]));
        res.push_back(fsub(lhs, rhs));
      }
      out.push_back(exprs_report("validate_algebroid",
                                 "anchor_morphism(" + pair_label(i, j) + ")", res,
                                 pts, s));
    }
  }
  return out;
}

Report exprs_report(std::string check, std::string anchor,
                    const std::vector<Expr>& exprs,
                    const std::vector<Point>& pts, const Sampling& s) {
  Residual r;
  for (const Expr& e : exprs) accumulate(r, simplify_basic(e), pts);
  Report rep;
  rep.check = std::move(check);
  rep.anchor = std::move(anchor);
  rep.residual = r.max_abs;
  rep.pass = r.max_abs <= s.tol;
  rep.witness = r.witness;
  rep.seed = s.seed;
  return rep;
}

Report coeffs_report(std::string check, std::string anchor, const Coeffs& diff,
                     const std::vector<Point>& pts, const Sampling& s) {
  return exprs_report(std::move(check), std::move(anchor), diff.entries(), pts, s);
}

}  // namespace jnalg
