#include "nceh/suites.hpp"

#include <doctest.h>

using namespace nceh;

TEST_SUITE("suites") {
  TEST_CASE("configuration validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.grid.n_phi = 4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.modes = 4;  // 2N + 1 = 9 > 8 angular samples
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.format = "xml";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.tol["no_such_key"] = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.a = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("tolerance overrides") {
    RunConfig c;
    CHECK(c.tolerance("christoffel") == default_tolerances().at("christoffel"));
    c.tol["christoffel"] = 1e-3;
    CHECK(c.tolerance("christoffel") == 1e-3);
    c.tol["all"] = 0.5;
    CHECK(c.tolerance("christoffel") == 1e-3);  // explicit key wins over "all"
    CHECK(c.tolerance("trace") == 0.5);
  }

  TEST_CASE("report schema and determinism for one criterion") {
    RunConfig c;
    const Report a = run_verify(c, {3}, 1), b = run_verify(c, {3}, 2);
    const auto ja = report_json(a, false), jb = report_json(b, false);
    CHECK(ja.dump() == jb.dump());
    for (const char* k : {"schema_version", "run_config", "checks", "diagnostics", "summary"}) CHECK(ja.contains(k));
    CHECK(ja["summary"]["criteria"]["3"]["pass"].get<bool>());
    for (const auto& ch : ja["checks"]) {
      CHECK(ch.contains("paper_anchor"));
      CHECK(ch.contains("residual"));
      CHECK(ch.contains("tolerance"));
    }
    CHECK(criterion_pass(a, 3));
    CHECK_FALSE(criterion_pass(a, 1));  // not run, so no checks
  }

  TEST_CASE("commutative reductions hold at zero deformation") {
    RunConfig c;
    c.theta = 0.0;
    for (const auto& ch : commutative_reduction_checks(c))
      if (ch.gating) CHECK_MESSAGE(ch.pass, ch.id);
  }
}
