#include "jnalg/catalog.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jnalg {

VolumeData SpecDocument::volumes() const {
  if (!eta || !mu || !nu)
    throw std::invalid_argument("document '" + name +
                                "' declares no eta/mu/nu volume sections");
  VolumeData v;
  v.eta = *eta;
  v.mu = *mu;
  v.nu = *nu;
  return v;
}

namespace {

using json = nlohmann::ordered_json;

Expr parse_in(const std::string& src, const VarSpace& vars,
              const std::string& where) {
  try {
    return parse_expr(src, vars);
  } catch (const std::exception& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

std::string str_at(const json& j, const std::string& where) {
  if (!j.is_string())
    throw std::invalid_argument(where + ": expected an expression string");
  return j.get<std::string>();
}

// "k,i,j"-style key into 1-based integers.
std::vector<int> split_key(const std::string& key, std::size_t want,
                           const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("trailing characters");
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(where + ": bad index '" + tok + "'");
    }
  }
  if (out.size() != want)
    throw std::invalid_argument(where + ": expected " + std::to_string(want) +
                                " comma-separated indices");
  return out;
}

void check_range(int v, int rank, const std::string& where) {
  if (v < 1 || v > rank)
    throw std::invalid_argument(where + ": index " + std::to_string(v) +
                                " outside 1.." + std::to_string(rank));
}

}  // namespace

SpecDocument load_spec_json(const std::string& text, const std::string& name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("spec parse: ") + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("spec root must be a JSON object");

  static const char* allowed[] = {"coords", "rank", "anchor", "structure",
                                  "phi0",   "P",    "N",      "eta",
                                  "mu",     "nu",   "sampling"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument("unknown spec key '" + item.key() + "'");
  }
  if (!j.contains("coords") || !j.contains("rank"))
    throw std::invalid_argument("spec needs 'coords' and 'rank'");

  SpecDocument doc;
  doc.name = name;
  if (!j.at("coords").is_array() || j.at("coords").empty())
    throw std::invalid_argument("'coords' must be a non-empty string array");
  std::vector<std::string> names;
  for (const auto& c : j.at("coords")) names.push_back(str_at(c, "coords"));
  for (const auto& n : names)
    if (n == "t")
      throw std::invalid_argument(
          "coordinate 't' is reserved for homogenization");
  VarSpace vars(names);
  std::size_t m = names.size();

  if (!j.at("rank").is_number_integer() || j.at("rank").get<int>() < 1)
    throw std::invalid_argument("'rank' must be a positive integer");
  int rank = j.at("rank").get<int>();

  doc.A.vars = vars;
  doc.A.rank = rank;
  doc.A.anchor.assign(static_cast<std::size_t>(rank),
                      std::vector<Expr>(m, Expr::constant(0.0)));
  if (j.contains("anchor")) {
    const json& an = j.at("anchor");
    if (!an.is_array() || an.size() != static_cast<std::size_t>(rank))
      throw std::invalid_argument("'anchor' must list one row per frame section");
    for (int a = 0; a < rank; ++a) {
      const json& row = an.at(static_cast<std::size_t>(a));
      if (!row.is_array() || row.size() != m)
        throw std::invalid_argument("anchor row " + std::to_string(a + 1) +
                                    " must have one entry per coordinate");
      for (std::size_t u = 0; u < m; ++u) {
        std::string where =
            "anchor[" + std::to_string(a + 1) + "][" + std::to_string(u + 1) + "]";
        doc.A.anchor[static_cast<std::size_t>(a)][u] =
            parse_in(str_at(row.at(u), where), vars, where);
      }
    }
  }
  if (j.contains("structure")) {
    if (!j.at("structure").is_object())
      throw std::invalid_argument("'structure' must be an object");
    for (const auto& item : j.at("structure").items()) {
      std::string where = "structure['" + item.key() + "']";
      std::vector<int> kij = split_key(item.key(), 3, where);
      check_range(kij[0], rank, where);
      check_range(kij[1], rank, where);
      check_range(kij[2], rank, where);
      if (kij[1] >= kij[2])
        throw std::invalid_argument(where + ": store entries with i < j only");
      doc.A.structure[{kij[1] - 1, kij[2] - 1}][kij[0] - 1] =
          parse_in(str_at(item.value(), where), vars, where);
    }
  }
  if (j.contains("phi0")) {
    const json& p = j.at("phi0");
    if (!p.is_array() || p.size() != static_cast<std::size_t>(rank))
      throw std::invalid_argument("'phi0' must list one component per frame section");
    AForm w;
    w.degree = 1;
    for (int a = 0; a < rank; ++a) {
      std::string where = "phi0[" + std::to_string(a + 1) + "]";
      w.add_term({a}, parse_in(str_at(p.at(static_cast<std::size_t>(a)), where),
                               vars, where));
    }
    doc.phi0 = w.normalized();
  }
  if (j.contains("P")) {
    if (!j.at("P").is_object())
      throw std::invalid_argument("'P' must be an object of 'i,j' entries");
    Multivector P;
    P.degree = 2;
    for (const auto& item : j.at("P").items()) {
      std::string where = "P['" + item.key() + "']";
      std::vector<int> ij = split_key(item.key(), 2, where);
      check_range(ij[0], rank, where);
      check_range(ij[1], rank, where);
      if (ij[0] >= ij[1])
        throw std::invalid_argument(where + ": store entries with i < j only");
      P.add_term({ij[0] - 1, ij[1] - 1},
                 parse_in(str_at(item.value(), where), vars, where));
    }
    doc.P = P.normalized();
    doc.has_P = true;
  }
  if (j.contains("N")) {
    const json& nj = j.at("N");
    if (!nj.is_array() || nj.size() != static_cast<std::size_t>(rank))
      throw std::invalid_argument("'N' must be a rank-by-rank matrix");
    doc.N.rank = rank;
    doc.N.m.assign(static_cast<std::size_t>(rank),
                   std::vector<Expr>(static_cast<std::size_t>(rank),
                                     Expr::constant(0.0)));
    for (int a = 0; a < rank; ++a) {
      const json& row = nj.at(static_cast<std::size_t>(a));
      if (!row.is_array() || row.size() != static_cast<std::size_t>(rank))
        throw std::invalid_argument("N row " + std::to_string(a + 1) +
                                    " must have rank entries");
      for (int b = 0; b < rank; ++b) {
        std::string where =
            "N[" + std::to_string(a + 1) + "][" + std::to_string(b + 1) + "]";
        doc.N.m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            parse_in(str_at(row.at(static_cast<std::size_t>(b)), where), vars,
                     where);
      }
    }
    doc.has_N = true;
  }
  for (const char* key : {"eta", "mu", "nu"}) {
    if (!j.contains(key)) continue;
    Expr e = parse_in(str_at(j.at(key), key), vars, key);
    if (std::string(key) == "eta") doc.eta = e;
    if (std::string(key) == "mu") doc.mu = e;
    if (std::string(key) == "nu") doc.nu = e;
  }
  if (j.contains("sampling")) {
    const json& sj = j.at("sampling");
    if (!sj.is_object())
      throw std::invalid_argument("'sampling' must be an object");
    for (const auto& item : sj.items()) {
      const std::string& k = item.key();
      if (k == "points")
        doc.sampling.points = item.value().get<int>();
      else if (k == "seed")
        doc.sampling.seed = item.value().get<std::uint64_t>();
      else if (k == "tol")
        doc.sampling.tol = item.value().get<double>();
      else if (k == "box") {
        if (!item.value().is_array() || item.value().size() != 2)
          throw std::invalid_argument("'sampling.box' must be [lo, hi]");
        doc.sampling.box_lo = item.value().at(0).get<double>();
        doc.sampling.box_hi = item.value().at(1).get<double>();
      } else {
        throw std::invalid_argument("unknown sampling key '" + k + "'");
      }
    }
    if (doc.sampling.points < 1)
      throw std::invalid_argument("'sampling.points' must be positive");
    if (!(doc.sampling.box_lo < doc.sampling.box_hi))
      throw std::invalid_argument("'sampling.box' must satisfy lo < hi");
  }
  return doc;
}

SpecDocument load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot read spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_spec_json(buf.str(), path);
}

// ----------------------------------------------------------------- fixtures

namespace {

Expr one_expr() { return Expr::constant(1.0); }

void set_unit_volumes(SpecDocument& doc) {
  doc.eta = one_expr();
  doc.mu = one_expr();
  doc.nu = one_expr();
}

// The contact pair on R^3 used by the tmr family defaults.
BaseJacobiPair contact_pair() {
  VarSpace vm({"x", "y", "z"});
  BaseJacobiPair pair;
  pair.base_vars = vm;
  pair.Lambda.degree = 2;
  pair.Lambda.add_term({0, 1}, Expr::constant(1.0));
  pair.Lambda.add_term({1, 2}, parse_expr("-y", vm));
  pair.E.degree = 1;
  pair.E.add_term({2}, Expr::constant(1.0));
  return pair;
}

SpecDocument make_abelian2() {
  SpecDocument doc;
  doc.name = "abelian2";
  VarSpace vars({"x"});
  doc.A.vars = vars;
  doc.A.rank = 2;
  doc.A.anchor.assign(2, std::vector<Expr>(1, Expr::constant(0.0)));
  doc.phi0 = frame_element(0);
  doc.P.degree = 2;
  doc.P.add_term({0, 1}, Expr::var(0, "x"));
  doc.has_P = true;
  doc.N = endo_conformal(parse_expr("2+sin(x)", vars), 2);
  doc.has_N = true;
  set_unit_volumes(doc);
  return doc;
}

SpecDocument make_tangent(int m) {
  SpecDocument doc;
  doc.name = "tangent" + std::to_string(m);
  std::vector<std::string> names = {"x", "y", "z"};
  names.resize(static_cast<std::size_t>(m));
  VarSpace vars(names);
  doc.A = tangent_algebroid(vars);
  doc.P.degree = 2;
  doc.P.add_term({0, 1}, Expr::constant(1.0));
  doc.has_P = true;
  // P only reaches the x,y block, so the z-slot of N may vary freely in z
  // (and only in z) without breaking the concomitant.
  doc.N = endo_conformal(parse_expr("2+x*x+y", vars), m);
  if (m > 2) doc.N.m[2][2] = parse_expr("1+z*z", vars);
  doc.has_N = true;
  set_unit_volumes(doc);
  return doc;
}

SpecDocument make_tmr_of_jacobi(const BaseJacobiPair& pair) {
  SpecDocument doc;
  doc.name = "tmr_of_jacobi";
  doc.A = cylinder_algebroid(pair.base_vars);
  doc.phi0 = frame_element(doc.A.rank - 1);
  doc.P = embed_base_pair(pair, doc.A.rank);
  doc.has_P = true;
  set_unit_volumes(doc);
  return doc;
}

SpecDocument make_tmr_dual(const BaseJacobiPair& pair) {
  SpecDocument doc;
  doc.name = "tmr_dual";
  doc.A = jet_algebroid(pair);
  AForm x0;
  x0.degree = 1;
  for (std::size_t u = 0; u < pair.base_vars.size(); ++u)
    x0.add_term({static_cast<int>(u)}, fneg(pair.E.coeff({static_cast<int>(u)})));
  doc.phi0 = x0.normalized();
  set_unit_volumes(doc);
  return doc;
}

SpecDocument make_contact_r3() {
  SpecDocument doc = make_tmr_of_jacobi(contact_pair());
  doc.name = "contact_r3";
  doc.N = endo_conformal(Expr::constant(1.5), doc.A.rank);
  doc.has_N = true;
  return doc;
}

SpecDocument make_e2_line() {
  SpecDocument doc;
  doc.name = "e2_line";
  VarSpace vars({"z"});
  BaseJacobiPair pair;
  pair.base_vars = vars;
  pair.Lambda = zero_graded(2);
  pair.E.degree = 1;
  pair.E.add_term({0}, Expr::constant(1.0));
  doc.A = cylinder_algebroid(vars);
  doc.phi0 = frame_element(1);
  doc.P = embed_base_pair(pair, 2);
  doc.has_P = true;
  doc.N = endo_conformal(parse_expr("2+z*z", vars), 2);
  doc.has_N = true;
  set_unit_volumes(doc);
  return doc;
}

void gate_fixture(const SpecDocument& doc) {
  std::vector<Report> rs = validate_jacobi(doc.jacobi(), doc.sampling);
  if (!all_pass(rs))
    throw std::logic_error("fixture '" + doc.name + "' failed validation");
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"abelian2",  "tangent2",   "tangent3", "tmr_of_jacobi",
          "tmr_dual",  "contact_r3", "e2_line"};
}

SpecDocument fixture(const std::string& name) {
  SpecDocument doc;
  if (name == "abelian2") {
    doc = make_abelian2();
  } else if (name == "tangent2" || name == "tangent(2)") {
    doc = make_tangent(2);
  } else if (name == "tangent3" || name == "tangent(3)") {
    doc = make_tangent(3);
  } else if (name == "tmr_of_jacobi") {
    doc = make_tmr_of_jacobi(contact_pair());
  } else if (name == "tmr_dual") {
    doc = make_tmr_dual(contact_pair());
  } else if (name == "contact_r3") {
    doc = make_contact_r3();
    // The shipped coefficients are gated by the structure-pair identities,
    // not asserted as ground truth.
    std::vector<Report> rs = check_base_pair(contact_pair(), doc.sampling);
    if (!all_pass(rs))
      throw std::logic_error("contact_r3 pair fails its structure identities");
  } else if (name == "e2_line") {
    doc = make_e2_line();
  } else {
    throw std::invalid_argument("unknown fixture '" + name + "'");
  }
  gate_fixture(doc);
  return doc;
}

// ----------------------------------------------------------------- dispatch

namespace {

void append(std::vector<Report>& out, const std::vector<Report>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace

std::vector<Report> run_command(const std::string& command,
                                const SpecDocument& doc, const Sampling& s) {
  JacobiAlgebroid J = doc.jacobi();
  bool has_vols = doc.eta && doc.mu && doc.nu;
  auto need_P = [&]() {
    if (!doc.has_P)
      throw std::invalid_argument("command '" + command +
                                  "' needs a bivector P; document '" +
                                  doc.name + "' declares none");
  };
  auto need_N = [&]() {
    if (!doc.has_N)
      throw std::invalid_argument("command '" + command +
                                  "' needs an endomorphism N; document '" +
                                  doc.name + "' declares none");
  };

  if (command == "validate") return validate_jacobi(J, s);
  if (command == "check-jacobi") {
    need_P();
    return jacobi_battery(J, doc.P, s);
  }
  if (command == "check-compat") {
    need_P();
    std::vector<Report> out = pair_battery(J, doc.P, s);
    if (doc.has_N) {
      append(out, is_compatible(J, doc.P, doc.N, s));
      append(out, strong_compatibility(J, doc.P, doc.N, s));
    }
    return out;
  }
  if (command == "check-nijenhuis") {
    need_N();
    return nijenhuis_battery(J, doc.has_P ? &doc.P : nullptr, doc.N, s);
  }
  if (command == "hierarchy") {
    need_P();
    need_N();
    return hierarchy_battery(J, doc.P, doc.N, 3, s);
  }
  if (command == "modular") {
    need_P();
    VolumeData v = doc.volumes();
    return modular_battery(J, doc.P, doc.has_N ? &doc.N : nullptr, v, nullptr, s);
  }
  if (command == "duality") {
    need_P();
    VolumeData v = doc.volumes();
    return duality_battery(J, doc.P, v, s);
  }
  if (command == "poissonize-diff")
    return poissonization_battery(J, doc.has_P ? &doc.P : nullptr, s);
  if (command == "all") {
    std::vector<Report> out = validate_jacobi(J, s);
    append(out, gerstenhaber_battery(J, s));
    append(out, poissonization_battery(J, doc.has_P ? &doc.P : nullptr, s));
    if (doc.has_P) {
      append(out, jacobi_battery(J, doc.P, s));
      append(out, pair_battery(J, doc.P, s));
    }
    if (doc.has_N)
      append(out, nijenhuis_battery(J, doc.has_P ? &doc.P : nullptr, doc.N, s));
    if (doc.has_P && doc.has_N) {
      append(out, is_compatible(J, doc.P, doc.N, s));
      append(out, strong_compatibility(J, doc.P, doc.N, s));
      append(out, hierarchy_battery(J, doc.P, doc.N, 3, s));
    }
    if (doc.has_P && has_vols) {
      VolumeData v = doc.volumes();
      append(out, modular_battery(J, doc.P, doc.has_N ? &doc.N : nullptr, v,
                                  nullptr, s));
      append(out, duality_battery(J, doc.P, v, s));
    }
    return out;
  }
  throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace jnalg
