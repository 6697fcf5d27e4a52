#include <string>

#include "doctest.h"
#include "jnalg/catalog.hpp"

using namespace jnalg;

namespace {

std::string msg_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("every shipped fixture loads and self-validates") {
  for (const std::string& name : fixture_names()) {
    SpecDocument doc = fixture(name);
    CHECK(doc.name == name);
    CHECK(all_pass(run_command("validate", doc, doc.sampling)));
  }
  CHECK_THROWS_AS(fixture("no_such"), std::invalid_argument);
  CHECK(fixture("tangent(2)").A.rank == 2);
}

TEST_CASE("document parsing accepts the minimal form") {
  SpecDocument doc =
      load_spec_json(R"({"coords":["x"],"rank":2})", "inline");
  CHECK(doc.A.rank == 2);
  CHECK_FALSE(doc.has_P);
  CHECK_FALSE(doc.eta.has_value());
  CHECK(all_pass(run_command("validate", doc, doc.sampling)));
}

TEST_CASE("document parsing names the offending input") {
  CHECK(msg_of([] {
          load_spec_json(R"({"coords":["x"],"rank":1,"frob":3})", "inline");
        }).find("frob") != std::string::npos);
  CHECK(msg_of([] {
          load_spec_json(R"({"coords":["x"],"rank":1,"eta":"2+"})", "inline");
        }).find("offset") != std::string::npos);
  CHECK(msg_of([] {
          load_spec_json(R"({"coords":["x"],"rank":2,"P":{"2,1":"x"}})", "inline");
        }).find("i < j") != std::string::npos);
  CHECK(msg_of([] {
          load_spec_json(R"({"coords":["x"],"rank":2,"P":{"1,3":"x"}})", "inline");
        }).find("outside") != std::string::npos);
  CHECK_THROWS_AS(load_spec_json(R"({"coords":["x"],"rank":2,"anchor":[["0"]]})",
                                 "inline"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_spec_json(R"([1,2])", "inline"), std::invalid_argument);
  CHECK_THROWS_AS(load_spec_json("{", "inline"), std::invalid_argument);
  CHECK_THROWS_AS(load_spec_json(R"({"coords":["t"],"rank":1})", "inline"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_spec("/nonexistent/path.json"), std::invalid_argument);
}

TEST_CASE("sampling block feeds the run") {
  SpecDocument doc = load_spec_json(
      R"({"coords":["x"],"rank":2,
          "sampling":{"points":7,"seed":9,"tol":1e-6,"box":[-2,2]}})",
      "inline");
  CHECK(doc.sampling.points == 7);
  CHECK(doc.sampling.seed == 9);
  CHECK(doc.sampling.box_hi == 2.0);
  CHECK_THROWS_AS(
      load_spec_json(R"({"coords":["x"],"rank":1,"sampling":{"foo":1}})",
                     "inline"),
      std::invalid_argument);
}

TEST_CASE("commands refuse documents lacking their inputs") {
  SpecDocument doc =
      load_spec_json(R"({"coords":["x"],"rank":2,"P":{"1,2":"x"}})", "inline");
  Sampling s = doc.sampling;
  CHECK_THROWS_AS(run_command("modular", doc, s), std::invalid_argument);
  CHECK_THROWS_AS(run_command("hierarchy", doc, s), std::invalid_argument);
  SpecDocument bare = load_spec_json(R"({"coords":["x"],"rank":2})", "inline");
  CHECK_THROWS_AS(run_command("check-jacobi", bare, s), std::invalid_argument);
  CHECK_THROWS_AS(run_command("frobnicate", doc, s), std::invalid_argument);
}

TEST_CASE("a well-formed document drives the batteries like a fixture") {
  SpecDocument doc = load_spec_json(
      R"doc({"coords":["x"],"rank":2,
          "phi0":["1","0"],
          "P":{"1,2":"x"},
          "N":[["2+sin(x)","0"],["0","2+sin(x)"]],
          "eta":"1","mu":"1","nu":"1"})doc",
      "inline");
  Sampling s = doc.sampling;
  s.points = 8;
  CHECK(all_pass(run_command("check-jacobi", doc, s)));
  CHECK(all_pass(run_command("check-nijenhuis", doc, s)));
}

TEST_CASE("report streams are deterministic") {
  SpecDocument doc = fixture("abelian2");
  Sampling s = doc.sampling;
  std::vector<Report> r1 = run_command("all", doc, s);
  std::vector<Report> r2 = run_command("all", doc, s);
  CHECK(all_pass(r1));
  CHECK(to_json(r1) == to_json(r2));
  CHECK(to_text(r1) == to_text(r2));
  CHECK(exit_code(r1) == 0);

  std::vector<Report> r3 = run_command("all", doc, s);
  CHECK(to_json(r1) == to_json(r3));
}
