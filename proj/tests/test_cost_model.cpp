#include "agnn/cost_model.hpp"
#include "doctest.h"

using namespace agnn;

TEST_CASE("cost_ordering follows the merge-round formula") {
  WorkloadParams p;
  p.nodes = 1 << 16;
  p.edges = 1 << 20;
  CHECK(cost_ordering(p, UpeConfig{32, 64}) == 13312);  // m = 13

  WorkloadParams tiny;
  tiny.edges = 64;
  CHECK(cost_ordering(tiny, UpeConfig{32, 64}) == 0);  // e = w_upe clamps m

  // exactly inverse-linear in n_upe
  CHECK(cost_ordering(p, UpeConfig{64, 64}) * 2 ==
        cost_ordering(p, UpeConfig{32, 64}));
}

TEST_CASE("cost_selecting follows s = b*k^(l+1) - 1") {
  WorkloadParams p;
  p.batch = 3000;
  p.fanout = 10;
  p.layers = 2;
  CHECK(selection_work(p) == 2999999);
  CHECK(cost_selecting(p, UpeConfig{32, 64}) == 93750);

  WorkloadParams unit;
  unit.batch = 1;
  unit.fanout = 1;
  unit.layers = 5;
  CHECK(cost_selecting(unit, UpeConfig{32, 64}) == 0);

  CHECK(cost_selecting(p, UpeConfig{64, 64}) * 2 ==
        doctest::Approx(cost_selecting(p, UpeConfig{32, 64})).epsilon(1e-4));

  WorkloadParams huge;
  huge.batch = 1ull << 40;
  huge.fanout = 1000;
  huge.layers = 10;
  CHECK_THROWS_AS(selection_work(huge), std::overflow_error);
}

TEST_CASE("cost_reshaping is the max of the two walk rates") {
  WorkloadParams cl;
  cl.nodes = 236000;
  cl.edges = 2360000;
  CHECK(cost_reshaping(cl, ScrConfig{8, 512}) == 29500);

  WorkloadParams one;
  one.nodes = 8;
  one.edges = 512;
  CHECK(cost_reshaping(one, ScrConfig{8, 512}) == 1);

  // Widening slots saturates once the node term dominates.
  WorkloadParams lowdeg;
  lowdeg.nodes = 100000;
  lowdeg.edges = 700000;
  std::uint64_t prev = ~0ull;
  bool saturated = false;
  for (std::uint32_t w = 8; w <= 4096; w <<= 1) {
    std::uint64_t c = cost_reshaping(lowdeg, ScrConfig{8, w});
    CHECK(c <= prev);
    if (c == prev) saturated = true;
    prev = c;
  }
  CHECK(saturated);
  CHECK(prev == 100000 / 8);
}

TEST_CASE("estimate_total sums conversion, selection, and subgraph terms") {
  WorkloadParams p;
  p.nodes = 1 << 16;
  p.edges = 1 << 20;
  p.batch = 3000;
  p.fanout = 10;
  p.layers = 2;
  CostEstimate est = estimate_total(p, UpeConfig{32, 64}, ScrConfig{8, 512});
  CHECK(est.ordering == 13312);
  CHECK(est.selecting == 93750);
  CHECK(est.reshaping == std::max<std::uint64_t>((1 << 16) / 8, (1 << 20) / 512));
  CHECK(est.total() == est.ordering + est.selecting + est.reshaping +
                           est.subgraph_ordering + est.subgraph_reshaping);

  WorkloadParams zero;
  zero.fanout = 1;  // s = 1*1^2 - 1 = 0
  CHECK(estimate_total(zero, UpeConfig{1, 2}, ScrConfig{1, 1}).total() == 0);

  // monotone in e
  WorkloadParams bigger = p;
  bigger.edges *= 2;
  CHECK(estimate_total(bigger, UpeConfig{32, 64}, ScrConfig{8, 512}).total() >=
        est.total());
}

TEST_CASE("generate_catalog halves width and doubles count") {
  VariantCatalog cat = generate_catalog();
  REQUIRE(cat.upe_variants.size() == 10);
  REQUIRE(cat.scr_variants.size() == 10);
  CHECK(cat.upe_variants.front() == UpeConfig{1, 16384});
  CHECK(cat.upe_variants.back() == UpeConfig{512, 32});
  CHECK(cat.scr_variants.front() == ScrConfig{1, 4096});
  CHECK(cat.scr_variants.back() == ScrConfig{512, 8});
  for (const UpeConfig& c : cat.upe_variants)
    CHECK(std::uint64_t(c.count) * c.width == kDefaultUpeCapacity);
  for (const ScrConfig& c : cat.scr_variants)
    CHECK(std::uint64_t(c.count) * c.width == kDefaultScrCapacity);

  CHECK_THROWS_AS(generate_catalog(256, 4096), std::invalid_argument);
}

TEST_CASE("select_config is the exhaustive argmin") {
  WorkloadParams ax;  // low degree
  ax.nodes = 169000;
  ax.edges = 1160000;
  ax.batch = 3000;
  ax.fanout = 10;
  ax.layers = 2;
  WorkloadParams mv;  // high degree
  mv.nodes = 3710;
  mv.edges = 11300000;
  mv.batch = 3000;
  mv.fanout = 10;
  mv.layers = 2;
  VariantCatalog cat = generate_catalog();

  for (const WorkloadParams& p : {ax, mv}) {
    ConfigSelection best = select_config(p, cat);
    for (const UpeConfig& u : cat.upe_variants)
      for (const ScrConfig& s : cat.scr_variants)
        REQUIRE(best.cycles <= estimate_total(p, u, s).total());
  }

  // Divergent SCR choices: node-bound prefers slots, edge-bound width.
  ConfigSelection a = select_config(ax, cat);
  ConfigSelection m = select_config(mv, cat);
  CHECK_FALSE(a.scr == m.scr);
  CHECK(a.scr.count > m.scr.count);

  VariantCatalog single;
  single.upe_variants = {UpeConfig{4, 16}};
  single.scr_variants = {ScrConfig{2, 8}};
  ConfigSelection only = select_config(ax, single);
  CHECK(only.upe == UpeConfig{4, 16});
  CHECK(only.scr == ScrConfig{2, 8});
}

TEST_CASE("reconfig_decision amortizes the penalty") {
  ReconfigPolicy pol;
  CHECK(pol.penalty_ms(true, true) == 230.0);
  CHECK(pol.penalty_ms(true, false) == 115.0);
  CHECK(pol.penalty_ms(false, false) == 0.0);

  WorkloadParams p;
  p.nodes = 1 << 20;
  p.edges = 1ull << 31;
  p.batch = 1;
  p.fanout = 1;
  p.layers = 1;
  UpeConfig slow_u{1, 16384}, fast_u{512, 32};
  ScrConfig slow_s{512, 8}, fast_s{1, 4096};

  // candidate identical: no saving, never reconfigure
  ReconfigDecision same =
      reconfig_decision(fast_u, fast_s, fast_u, fast_s, p, pol);
  CHECK_FALSE(same.reconfigure);

  double saving =
      estimate_total(p, slow_u, slow_s).milliseconds() -
      estimate_total(p, fast_u, fast_s).milliseconds();
  REQUIRE(saving > 0);

  ReconfigPolicy h1 = pol;
  h1.amortization_horizon = std::uint64_t(230.0 / saving);  // just below
  ReconfigPolicy h2 = pol;
  h2.amortization_horizon = h1.amortization_horizon + 1;  // just above
  ReconfigDecision below =
      reconfig_decision(slow_u, slow_s, fast_u, fast_s, p, h1);
  ReconfigDecision above =
      reconfig_decision(slow_u, slow_s, fast_u, fast_s, p, h2);
  CHECK_FALSE(below.reconfigure);
  CHECK(above.reconfigure);
  CHECK(above.penalty_ms == 230.0);

  // single-region switch costs half; selection-heavy shape so more UPEs win
  WorkloadParams selheavy = p;
  selheavy.batch = 1000000;
  selheavy.fanout = 10;
  ReconfigPolicy big = pol;
  big.amortization_horizon = 1000000;
  ReconfigDecision upe_only =
      reconfig_decision(slow_u, fast_s, fast_u, fast_s, selheavy, big);
  CHECK(upe_only.reconfigure);
  CHECK(upe_only.penalty_ms == 115.0);
}
