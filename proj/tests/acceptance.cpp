// Acceptance gate: one line per criterion.  Exit status 0 only when every
// criterion holds at the pinned tolerance.

#include <chrono>
#include <iostream>
#include <string>

#include "jnalg/catalog.hpp"

using namespace jnalg;

namespace {

constexpr double kTol = 1e-8;

Sampling base_sampling() {
  Sampling s;
  s.points = 25;
  s.seed = 42;
  s.tol = kTol;
  s.box_lo = -1.0;
  s.box_hi = 1.0;
  return s;
}

bool announce(int idx, const std::string& label, bool ok) {
  std::cout << "criterion " << idx << " (" << label
            << "): " << (ok ? "pass" : "FAIL") << std::endl;
  return ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  Sampling s = base_sampling();
  bool all = true;

  SpecDocument ab = fixture("abelian2");
  SpecDocument t2 = fixture("tangent2");
  SpecDocument tmr = fixture("tmr_of_jacobi");

  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const SpecDocument* d : {&ab, &t2, &tmr})
      ok = ok && all_pass(gerstenhaber_battery(d->jacobi(), s));
    ok = ok && seconds_since(t0) < 30.0;
    all &= announce(1, "graded bracket axioms", ok);
  }
  {
    bool ok = true;
    for (const SpecDocument* d : {&ab, &t2, &tmr})
      ok = ok && all_pass(poissonization_battery(
                     d->jacobi(), d->has_P ? &d->P : nullptr, s));
    all &= announce(2, "homogenization transport", ok);
  }
  all &= announce(3, "split catalog and dual presentation",
                  all_pass(catalog_battery(s)));
  {
    JacobiAlgebroid J = tmr.jacobi();
    bool ok = all_pass(pair_battery(J, tmr.P, s));
    ok = ok && all_pass(
                   check_base_compatibility(J, tmr.P, scale(7.0 / 3.0, tmr.P), s));
    all &= announce(4, "pair compatibility projection", ok);
  }
  {
    JacobiAlgebroid J = ab.jacobi();
    bool ok = all_pass(is_compatible(J, ab.P, ab.N, s));
    ok = ok && all_pass(strong_compatibility(J, ab.P, ab.N, s));
    ok = ok && all_pass(hierarchy_battery(J, ab.P, ab.N, 3, s));
    all &= announce(5, "recursion hierarchy", ok);
  }
  {
    bool ok = true;
    SpecDocument e2 = fixture("e2_line");
    // the cross-level equalities ride along with the recursion hierarchy
    ok = ok && all_pass(hierarchy_battery(ab.jacobi(), ab.P, ab.N, 3, s));
    ok = ok && all_pass(
                   modular_battery(ab.jacobi(), ab.P, &ab.N, ab.volumes(), nullptr, s));
    ok = ok && all_pass(
                   modular_battery(e2.jacobi(), e2.P, &e2.N, e2.volumes(), nullptr, s));
    JacobiAlgebroid T = t2.jacobi();
    Multivector piP;
    piP.degree = 2;
    piP.add_term({0, 1}, parse_expr("2+x*x+y", T.A.vars));
    VolumeData unit;
    ok = ok && all_pass(duality_battery(T, piP, unit, s));
    SpecDocument ct = fixture("contact_r3");
    ok = ok && all_pass(duality_battery(ct.jacobi(), ct.P, ct.volumes(), s));
    all &= announce(6, "modular suite", ok);
  }
  all &= announce(7, "base projection bridge",
                  all_pass(bridge_battery(tmr.jacobi(), tmr.P, s)));
  {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Report> r1 = run_command("all", ab, s);
    std::vector<Report> r2 = run_command("all", ab, s);
    bool ok = all_pass(r1) && to_json(r1) == to_json(r2);
    ok = ok && seconds_since(t0) < 300.0;
    all &= announce(8, "deterministic reports", ok);
  }

  std::cout << (all ? "acceptance: all criteria pass"
                    : "acceptance: FAILURES present")
            << std::endl;
  return all ? 0 : 1;
}
