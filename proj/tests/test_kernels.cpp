#include <random>

#include "agnn/kernels.hpp"
#include "doctest.h"

using namespace agnn;
using namespace agnn::kernels;

namespace {

// Scalar running-sum oracle.
DisplacementArray scan_oracle(const ConditionArray& c) {
  DisplacementArray d(c.size());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    d[i] = sum;
    sum += c[i];
  }
  return d;
}

ConditionArray random_bits(std::size_t len, std::mt19937_64& rng) {
  ConditionArray c(len);
  for (auto& b : c) b = rng() & 1;
  return c;
}

}  // namespace

TEST_CASE("exclusive_prefix_sum examples") {
  CHECK(exclusive_prefix_sum({1, 0, 1, 1}) ==
        DisplacementArray{0, 1, 1, 2});
  CHECK(exclusive_prefix_sum({0, 0, 0, 0}) ==
        DisplacementArray{0, 0, 0, 0});
  CHECK(exclusive_prefix_sum({}).empty());
}

TEST_CASE("exclusive_prefix_sum matches the scalar oracle") {
  std::mt19937_64 rng(11);
  // Exhaustive for L <= 16.
  for (std::size_t L = 0; L <= 16; ++L)
    for (std::uint64_t mask = 0; mask < (1ull << L); ++mask) {
      ConditionArray c(L);
      for (std::size_t i = 0; i < L; ++i) c[i] = (mask >> i) & 1;
      REQUIRE(exclusive_prefix_sum(c) == scan_oracle(c));
    }
  // Randomized above, up to L = 4096.
  for (int t = 0; t < 200; ++t) {
    ConditionArray c = random_bits(1 + rng() % 4096, rng);
    REQUIRE(exclusive_prefix_sum(c) == scan_oracle(c));
  }
}

TEST_CASE("relocate examples") {
  std::vector<std::uint64_t> v{5, 9, 2, 7};
  ConditionArray c{1, 0, 1, 1};
  CHECK(relocate(v, c, exclusive_prefix_sum(c)) ==
        std::vector<std::uint64_t>{5, 2, 7});

  ConditionArray all(4, 1);
  CHECK(relocate(v, all, exclusive_prefix_sum(all)) == v);

  ConditionArray none(4, 0);
  CHECK(relocate(v, none, exclusive_prefix_sum(none)).empty());
}

TEST_CASE("relocate rejects an inconsistent displacement array") {
  std::vector<std::uint64_t> v{1, 2, 3};
  ConditionArray c{1, 1, 0};
  DisplacementArray bad{0, 0, 1};
  CHECK_THROWS_AS(relocate(v, c, bad), std::invalid_argument);
}

TEST_CASE("set_partition is a stable split") {
  std::vector<std::uint64_t> v{5, 9, 2, 7};
  auto [t, f] = set_partition(v, {1, 0, 1, 1});
  CHECK(t == std::vector<std::uint64_t>{5, 2, 7});
  CHECK(f == std::vector<std::uint64_t>{9});

  std::vector<std::uint64_t> empty;
  auto [te, fe] = set_partition(empty, {});
  CHECK(te.empty());
  CHECK(fe.empty());

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t L = rng() % 128;
    std::vector<std::uint64_t> vals(L);
    for (auto& x : vals) x = rng() % 16;
    ConditionArray c = random_bits(L, rng);
    auto [tt, ff] = set_partition(vals, c);
    // Stable partition oracle.
    std::vector<std::uint64_t> ot, of;
    for (std::size_t i = 0; i < L; ++i) (c[i] ? ot : of).push_back(vals[i]);
    REQUIRE(tt == ot);
    REQUIRE(ff == of);
    REQUIRE(tt.size() + ff.size() == L);
  }
}

TEST_CASE("set_count examples and oracle") {
  std::vector<Vid> v{0, 0, 1, 3};
  CHECK(set_count(v, 1, CountMode::greater_equal) == 2);
  CHECK(set_count(v, 0, CountMode::greater_equal) == v.size());
  CHECK(set_count(v, 0, CountMode::equal) == 2);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vid> vals(rng() % 256);
    for (auto& x : vals) x = Vid(rng() % 64);
    Vid t = Vid(rng() % 64);
    std::size_t ge = 0, eq = 0, lt = 0;
    for (Vid x : vals) {
      ge += x >= t;
      eq += x == t;
      lt += x < t;
    }
    REQUIRE(set_count(vals, t, CountMode::greater_equal) == ge);
    REQUIRE(set_count(vals, t, CountMode::equal) == eq);
    // count(>=t) + count(<t) covers the array
    REQUIRE(set_count(vals, t, CountMode::greater_equal) + lt == vals.size());
  }
}
