#include <doctest.h>

#include <bit>
#include <set>

#include "alds/search.hpp"

using namespace alds;

namespace {
VisitOrder order(StrategyKind k, int d) { return visit_order(k, d); }
}  // namespace

TEST_CASE("strategy names") {
  for (StrategyKind k : kAllStrategies) CHECK(parse_strategy(to_string(k)) == k);
  CHECK_THROWS_AS(parse_strategy("bfs"), std::invalid_argument);
}

TEST_CASE("depth-3 sequences") {
  CHECK(order(StrategyKind::Dfs, 3) == VisitOrder{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(order(StrategyKind::Ilds, 3) == VisitOrder{0, 1, 2, 4, 3, 5, 6, 7});
  CHECK(order(StrategyKind::Alds, 3) == VisitOrder{0, 4, 2, 1, 6, 5, 3, 7});
  // discrepancies at the top first, deepest last
  CHECK(order(StrategyKind::Dds, 3) == VisitOrder{0, 4, 2, 6, 1, 3, 5, 7});
  CHECK(order(StrategyKind::Lds, 2) == VisitOrder{0, 0, 1, 2, 0, 1, 2, 3});
}

TEST_CASE("depth 0 has one leaf") {
  for (StrategyKind k : kAllStrategies) CHECK(order(k, 0) == VisitOrder{0});
}

TEST_CASE("permutations and the two-rule characterization") {
  for (int d = 0; d <= 12; ++d) {
    for (StrategyKind k : {StrategyKind::Dfs, StrategyKind::Ilds, StrategyKind::Dds,
                           StrategyKind::Alds}) {
      CHECK(is_permutation_of_leaves(order(k, d), d));
    }
    const VisitOrder a = order(StrategyKind::Alds, d);
    for (std::size_t i = 1; i < a.size(); ++i) {
      const int prev = std::popcount(a[i - 1]);
      const int cur = std::popcount(a[i]);
      REQUIRE(prev <= cur);
      if (prev == cur) REQUIRE(a[i - 1] > a[i]);
    }
  }
}

TEST_CASE("dds groups by deepest discrepancy") {
  const int d = 6;
  const VisitOrder o = order(StrategyKind::Dds, d);
  int last = 0;
  for (LeafIndex v : o) {
    const int deepest = deepest_discrepancy({v, d});
    REQUIRE(deepest >= last);
    last = deepest;
  }
}

TEST_CASE("lds iterations visit every leaf within the bound") {
  const int d = 5;
  const VisitOrder o = order(StrategyKind::Lds, d);
  std::size_t pos = 0;
  for (int k = 0; k <= d; ++k) {
    LeafIndex prev = 0;
    bool first = true;
    std::set<LeafIndex> seen;
    for (LeafIndex v = 0; v < (1u << d); ++v)
      if (std::popcount(v) <= k) seen.insert(v);
    for (std::size_t i = 0; i < seen.size(); ++i, ++pos) {
      REQUIRE(pos < o.size());
      REQUIRE(seen.count(o[pos]) == 1);
      if (!first) REQUIRE(o[pos] > prev);
      prev = o[pos];
      first = false;
    }
  }
  CHECK(pos == o.size());
  CHECK_FALSE(is_permutation_of_leaves(o, d));
}

TEST_CASE("path codes") {
  const PathCode c{0b1010, 4};
  CHECK(c.bit(0));
  CHECK_FALSE(c.bit(1));
  CHECK(c.bit(2));
  CHECK(discrepancies(c) == 2);
  CHECK(deepest_discrepancy(c) == 3);
  CHECK(deepest_discrepancy({0, 4}) == 0);
  CHECK(c.prefix(2).bits == 0b10);
}

TEST_CASE("depth limits") {
  CHECK_THROWS_AS(visit_order(StrategyKind::Dfs, -1), std::invalid_argument);
  CHECK_THROWS_AS(visit_order(StrategyKind::Alds, kMaxOrderDepth + 1), std::invalid_argument);
  CHECK_THROWS_AS(visit_order(StrategyKind::Lds, kMaxLdsDepth + 1), std::invalid_argument);
  CHECK_FALSE(is_permutation_of_leaves({0, 0}, 1));
  CHECK_FALSE(is_permutation_of_leaves({0, 2}, 1));
  CHECK(is_permutation_of_leaves({1, 0}, 1));
}
