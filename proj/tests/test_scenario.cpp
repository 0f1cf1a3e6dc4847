#include <fstream>

#include "agnn/scenario.hpp"
#include "doctest.h"

using namespace agnn;

TEST_CASE("scenario parser") {
  ScenarioScript s = parse_scenario_text(
      "# comment\n"
      "workload A n=1000 e=50000\n"
      "run A k=10 layers=2 batch=64\n"
      "plan A batch=8\n"
      "assert-config upe=512x32 scr=1x4096\n"
      "delta A edges=100 nodes=10 seed=3\n");
  REQUIRE(s.steps.size() == 5);
  CHECK(s.steps[0].kind == ScenarioStep::Kind::declare);
  CHECK(s.steps[0].n == 1000);
  CHECK(s.steps[1].kind == ScenarioStep::Kind::run);
  CHECK(s.steps[1].fanout == 10);
  CHECK(s.steps[1].layers == 2);
  CHECK(s.steps[1].batch == 64);
  CHECK(s.steps[3].expect_upe == UpeConfig{512, 32});
  CHECK(s.steps[4].delta_edges == 100);

  CHECK_THROWS_WITH_AS(parse_scenario_text("bogus step\n"),
                       doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_AS(parse_scenario_text("workload A n=1000\n"),
                  std::runtime_error);
}

TEST_CASE("single-workload replay never reconfigures") {
  ScenarioScript s = parse_scenario_text(
      "workload G n=100000 e=5000000\n"
      "run G k=10 layers=2 batch=512\n"
      "run G k=10 layers=2 batch=512\n"
      "run G k=10 layers=2 batch=512\n");
  ReplayResult r = replay(s, ReplayOptions{});
  REQUIRE(r.rows.size() == 3);
  for (const ReplayRow& row : r.rows) {
    CHECK_FALSE(row.reconfigured);
    CHECK(row.dyn_penalty_ms == 0.0);
    CHECK(row.dyn_upe == row.static_upe);
    CHECK(row.dyn_scr == row.static_scr);
    CHECK(row.dyn_cycles == row.static_cycles);
  }
  CHECK(r.rows[2].static_cum_ms ==
        doctest::Approx(3 * r.rows[0].static_ms));
}

TEST_CASE("two-graph replay reconfigures when the saving amortizes") {
  // High-degree graph first, then a much larger low-degree graph whose
  // optimal SCR variant differs; sizes chosen so one run's saving clears the
  // 230 ms penalty.
  ScenarioScript s = parse_scenario_text(
      "workload HI n=4000 e=12000000\n"
      "workload LO n=400000000 e=2800000000\n"
      "run HI k=10 layers=2 batch=64\n"
      "run LO k=10 layers=2 batch=64\n"
      "run LO k=10 layers=2 batch=64\n");
  ReplayOptions opt;
  opt.policy.amortization_horizon = 2;
  ReplayResult r = replay(s, opt);
  REQUIRE(r.rows.size() == 3);
  CHECK_FALSE(r.rows[0].reconfigured);
  CHECK(r.rows[1].reconfigured);
  CHECK(r.rows[1].dyn_penalty_ms > 0);
  CHECK_FALSE(r.rows[2].reconfigured);
  CHECK(r.rows[2].dyn_ms < r.rows[2].static_ms);

  // CSV shape: header + one line per run
  std::string csv = r.to_csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("delta on a declared workload grows the counts") {
  ScenarioScript s = parse_scenario_text(
      "workload G n=1000 e=10000\n"
      "delta G edges=500 nodes=20\n"
      "run G k=2 layers=1 batch=4\n");
  ReplayResult r = replay(s, ReplayOptions{});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].nodes == 1020);
  CHECK(r.rows[0].edges == 10500);
}

TEST_CASE("unknown handle is a diagnostic") {
  ScenarioScript s = parse_scenario_text("run NOPE k=2 layers=1 batch=4\n");
  CHECK_THROWS_WITH_AS(replay(s, ReplayOptions{}),
                       doctest::Contains("unknown handle"),
                       std::runtime_error);
}
