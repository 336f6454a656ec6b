#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "alds/experiment.hpp"
#include "alds/stats.hpp"
#include "alds/treemodel.hpp"

using namespace alds;

namespace {

InstanceRecord record(int d, std::initializer_list<std::size_t> bits,
                      std::initializer_list<std::size_t> dead = {}) {
  InstanceRecord r;
  r.d = d;
  r.bits = SubtreeBits::for_depth(d);
  r.live = SubtreeBits::for_depth(d);
  r.live.set_range(0, r.live.size());
  for (auto b : bits) r.bits.set(b);
  for (auto v : dead) {
    SubtreeBits live = SubtreeBits::for_depth(d);
    for (std::size_t i = 0; i < live.size(); ++i)
      if (i != v && r.live.test(i)) live.set(i);
    r.live = live;
  }
  return r;
}

Dataset small_dataset(unsigned jobs) {
  BuildOptions o;
  o.count = 12;
  o.n = 30;
  o.d = 4;
  o.seed0 = 100;
  o.jobs = jobs;
  return build_dataset(o);
}

}  // namespace

TEST_CASE("clause counts round") {
  CHECK(clause_count(100, 4.26) == 426);
  CHECK(clause_count(350, 4.26) == 1491);
  CHECK_THROWS_AS(clause_count(10, -1.0), std::invalid_argument);
}

TEST_CASE("ranks, raw and skipping dead subtrees") {
  const InstanceRecord r = record(2, {3}, {1});
  const VisitOrder dfs = visit_order(StrategyKind::Dfs, 2);
  CHECK(first_solution_rank(dfs, r) == 4);
  CHECK(first_solution_rank(dfs, r, RankMode::SkipDead) == 3);
  CHECK(first_solution_rank(dfs, record(2, {})) == 0);
}

TEST_CASE("evaluate computes the mean normalized rank") {
  std::vector<InstanceRecord> rs = {record(2, {0}), record(2, {1, 3}), record(2, {3})};
  const EvalCurve c = evaluate(visit_order(StrategyKind::Dfs, 2), rs, 2);
  CHECK(c.ranks == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(c.e_star == doctest::Approx((1.0 + 2.0 + 4.0) / 3.0 / 4.0));
  REQUIRE(c.unsolved_fraction.size() == 4);
  CHECK(c.unsolved_fraction[0] == doctest::Approx(2.0 / 3.0));
  CHECK(c.unsolved_fraction[1] == doctest::Approx(1.0 / 3.0));
  CHECK(c.unsolved_fraction[3] == 0.0);

  CHECK(evaluate(visit_order(StrategyKind::Dfs, 2), std::vector<InstanceRecord>{}, 2).e_star ==
        0.0);
  CHECK_THROWS_AS(evaluate({0, 1, 2}, rs, 2), std::invalid_argument);
  rs.push_back(record(2, {}));
  CHECK_THROWS_AS(evaluate(visit_order(StrategyKind::Dfs, 2), rs, 2), std::invalid_argument);
}

TEST_CASE("greedy picks maximal coverage, lowest index on ties") {
  const std::vector<InstanceRecord> rs = {record(2, {1, 2}), record(2, {2}), record(2, {1}),
                                          record(2, {3}), record(2, {3})};
  const GreedyOrder g = greedy_construct(rs, 2);
  // coverage: 1 -> 2, 2 -> 2, 3 -> 2: pick 1; then 2 -> 1, 3 -> 2: pick 3; then 2
  CHECK(g.order == VisitOrder{1, 3, 2, 0});
  CHECK(g.covered == std::vector<std::size_t>{2, 2, 1});
  CHECK(is_permutation_of_leaves(g.order, 2));
}

TEST_CASE("greedy remainder follows ALDS order") {
  const std::vector<InstanceRecord> rs = {record(3, {5})};
  const GreedyOrder g = greedy_construct(rs, 3);
  VisitOrder want{5};
  for (LeafIndex v : visit_order(StrategyKind::Alds, 3))
    if (v != 5) want.push_back(v);
  CHECK(g.order == want);
}

TEST_CASE("linear model order") {
  // A level-independent probability reduces to discrepancy count, then index.
  CHECK(linear_model_order(6, 0.56, 0.0) == visit_order(StrategyKind::Ilds, 6));
  const VisitOrder o = linear_model_order(8, 0.56, 0.015);
  CHECK(o == optimal_order(leaf_probs(DepthProfile::linear(8, 0.56, 0.015))));
  CHECK(o.front() == 0);
}

TEST_CASE("building is deterministic across thread counts") {
  const Dataset a = small_dataset(1);
  const Dataset b = small_dataset(3);
  CHECK(a == b);
  REQUIRE(a.records.size() == 12);
  CHECK(a.meta.attempts == 12 + a.meta.skipped_unsat + a.meta.skipped_budget);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].instance_id == i);
    CHECK(a.records[i].bits.any());
    if (i > 0) CHECK(a.records[i].seed > a.records[i - 1].seed);
    const InstanceRecord again = map_instance(30, a.meta.m, a.records[i].seed, 4,
                                              a.meta.heuristic, a.meta.budget);
    CHECK(again.bits == a.records[i].bits);
    CHECK(again.live == a.records[i].live);
  }
}

TEST_CASE("skips are reported in seed order") {
  BuildOptions o;
  o.count = 5;
  o.n = 20;
  o.ratio = 5.5;  // mostly unsatisfiable
  o.d = 3;
  o.jobs = 2;
  std::vector<std::uint64_t> skipped;
  o.on_skip = [&](std::uint64_t seed, const std::string& why) {
    CHECK(why == "unsat");
    skipped.push_back(seed);
  };
  const Dataset ds = build_dataset(o);
  CHECK(std::is_sorted(skipped.begin(), skipped.end()));
  CHECK(skipped.size() == ds.meta.skipped_unsat);

  o.max_attempts = 3;
  o.on_skip = nullptr;
  CHECK(build_dataset(o).meta.attempts == 3);
}

TEST_CASE("dataset json round trip") {
  const Dataset ds = small_dataset(2);
  std::stringstream first;
  save_dataset(first, ds);
  const Dataset back = load_dataset(first);
  CHECK(back == ds);
  std::stringstream second;
  save_dataset(second, back);
  CHECK(second.str() == first.str());
}

TEST_CASE("dataset load errors") {
  auto load_str = [](const std::string& s) {
    std::istringstream in(s);
    return load_dataset(in);
  };
  CHECK_THROWS_AS(load_str("{"), std::runtime_error);
  CHECK_THROWS_AS(load_str(R"({"format":"other","version":1})"), std::runtime_error);
  CHECK_THROWS_AS(load_str(R"({"format":"alds-subtree-dataset","version":9})"),
                  std::runtime_error);

  std::stringstream good;
  save_dataset(good, small_dataset(1));
  std::string text = good.str();
  const auto pos = text.find("\"bits\": \"");
  REQUIRE(pos != std::string::npos);
  text[pos + 9] = 'z';
  CHECK_THROWS_AS(load_str(text), std::runtime_error);
}

TEST_CASE("split halves") {
  const Dataset ds = small_dataset(2);
  const SplitResult r = split_half_eval(ds, 7);
  CHECK(r.size_a == 6);
  CHECK(r.size_b == 6);
  CHECK(r.greedy_on_a <= r.alds_on_a);
  const SplitResult again = split_half_eval(ds, 7);
  CHECK(again.greedy_on_b == r.greedy_on_b);
  CHECK(again.alds_on_b == r.alds_on_b);
}

TEST_CASE("sign test") {
  CHECK(binomial_upper_tail(0, 10) == doctest::Approx(1.0));
  CHECK(binomial_upper_tail(10, 10) == doctest::Approx(1.0 / 1024.0));
  CHECK(binomial_upper_tail(8, 10) == doctest::Approx(56.0 / 1024.0));
  const std::vector<int> a{1, 2, 3, 4, 5, 6};
  const std::vector<int> b{2, 3, 4, 5, 6, 6};
  const SignTest t = sign_test_less<int>(a, b);
  CHECK(t.wins == 5);
  CHECK(t.ties == 1);
  CHECK(t.losses == 0);
  CHECK(t.p_value == doctest::Approx(1.0 / 32.0));
  CHECK_THROWS_AS(sign_test_less<int>(a, std::span<const int>(b).first(3)),
                  std::invalid_argument);
}
