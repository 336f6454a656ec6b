#include "alds/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>
#include <variant>

#include "alds/treemodel.hpp"

namespace alds {

std::size_t clause_count(Var n, double ratio) {
  if (!(ratio >= 0.0)) throw std::invalid_argument("ratio must be non-negative");
  return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
}

InstanceRecord map_instance(Var n, std::size_t m, std::uint64_t seed, int d,
                            const HeuristicConfig& heuristic, std::uint64_t budget) {
  const Formula f = generate_uniform_ksat(n, m, 3, seed);
  SubtreeMap map = map_subtrees(f, heuristic, d, budget);
  InstanceRecord r;
  r.seed = seed;
  r.n = n;
  r.m = m;
  r.d = d;
  r.bits = std::move(map.solutions);
  r.live = std::move(map.live);
  return r;
}

namespace {

struct Skipped {
  std::string reason;
};
using Attempt = std::variant<InstanceRecord, Skipped>;

Attempt attempt(const BuildOptions& o, std::size_t m, std::uint64_t seed) {
  try {
    InstanceRecord r = map_instance(o.n, m, seed, o.d, o.heuristic, o.budget);
    if (!r.bits.any()) return Skipped{"unsat"};
    return r;
  } catch (const BudgetExhausted&) {
    return Skipped{"budget"};
  }
}

}  // namespace

Dataset build_dataset(const BuildOptions& o) {
  if (o.d < 0 || o.d > kMaxOrderDepth) throw std::invalid_argument("dataset depth out of range");
  o.heuristic.validate();
  Dataset ds;
  ds.meta.n = o.n;
  ds.meta.ratio = o.ratio;
  ds.meta.m = clause_count(o.n, o.ratio);
  ds.meta.d = o.d;
  ds.meta.seed0 = o.seed0;
  ds.meta.requested = o.count;
  ds.meta.heuristic = o.heuristic;
  ds.meta.budget = o.budget;

  const unsigned jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;
  const std::size_t max_attempts = o.max_attempts != 0 ? o.max_attempts : 100 * o.count + 100;
  std::uint64_t next_seed = o.seed0;

  while (ds.records.size() < o.count && ds.meta.attempts < max_attempts) {
    const std::size_t batch =
        std::min<std::size_t>(std::max<std::size_t>(4 * jobs, 2 * (o.count - ds.records.size())),
                              max_attempts - ds.meta.attempts);
    std::vector<std::optional<Attempt>> results(batch);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
      for (std::size_t i = cursor++; i < batch; i = cursor++)
        results[i] = attempt(o, ds.meta.m, next_seed + i);
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < std::min<std::size_t>(jobs, batch); ++t) pool.emplace_back(worker);
      worker();
    }
    for (std::size_t i = 0; i < batch && ds.records.size() < o.count; ++i) {
      ++ds.meta.attempts;
      const std::uint64_t seed = next_seed + i;
      if (auto* rec = std::get_if<InstanceRecord>(&*results[i])) {
        rec->instance_id = ds.records.size();
        ds.records.push_back(std::move(*rec));
      } else {
        const auto& why = std::get<Skipped>(*results[i]).reason;
        (why == "budget" ? ds.meta.skipped_budget : ds.meta.skipped_unsat)++;
        if (o.on_skip) o.on_skip(seed, why);
      }
    }
    next_seed += batch;
  }
  return ds;
}

std::uint64_t first_solution_rank(const VisitOrder& order, const InstanceRecord& record,
                                  RankMode mode) {
  std::uint64_t rank = 0;
  for (LeafIndex v : order) {
    if (mode == RankMode::Raw || record.live.test(v)) ++rank;
    if (record.bits.test(v)) return rank;
  }
  return 0;
}

EvalCurve evaluate(const VisitOrder& order, std::span<const InstanceRecord> records, int d,
                   RankMode mode) {
  const std::size_t leaves = std::size_t{1} << d;
  if (order.size() != leaves || !is_permutation_of_leaves(order, d))
    throw std::invalid_argument("evaluation order must be a permutation of 2^d leaves");
  EvalCurve curve;
  curve.unsolved_fraction.assign(leaves, 0.0);
  if (records.empty()) return curve;

  std::vector<std::size_t> solved_at(leaves + 1, 0);
  double total = 0.0;
  for (const auto& r : records) {
    if (r.d != d) throw std::invalid_argument("record depth does not match evaluation depth");
    const std::uint64_t rank = first_solution_rank(order, r, mode);
    if (rank == 0) throw std::invalid_argument("record without a satisfiable subtree");
    curve.ranks.push_back(rank);
    ++solved_at[rank];
    total += static_cast<double>(rank);
  }
  const double n = static_cast<double>(records.size());
  std::size_t unsolved = records.size();
  for (std::size_t k = 1; k <= leaves; ++k) {
    unsolved -= solved_at[k];
    curve.unsolved_fraction[k - 1] = static_cast<double>(unsolved) / n;
  }
  curve.e_star = total / n / static_cast<double>(leaves);
  return curve;
}

EvalCurve evaluate(const VisitOrder& order, const Dataset& dataset, RankMode mode) {
  return evaluate(order, dataset.records, dataset.depth(), mode);
}

GreedyOrder greedy_construct(std::span<const InstanceRecord> records, int d) {
  const std::size_t leaves = std::size_t{1} << d;
  for (const auto& r : records)
    if (r.d != d) throw std::invalid_argument("greedy_construct: mixed depths");
  GreedyOrder g;
  std::vector<char> remaining(records.size(), 1), used(leaves, 0);
  std::size_t left = records.size();
  std::vector<std::size_t> cover(leaves);
  while (left > 0) {
    std::fill(cover.begin(), cover.end(), 0);
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!remaining[i]) continue;
      for (std::size_t v = 0; v < leaves; ++v)
        if (records[i].bits.test(v)) ++cover[v];
    }
    const auto best = static_cast<std::size_t>(
        std::max_element(cover.begin(), cover.end()) - cover.begin());
    if (cover[best] == 0) break;  // remaining instances have no set bit
    g.order.push_back(static_cast<LeafIndex>(best));
    g.covered.push_back(cover[best]);
    used[best] = 1;
    for (std::size_t i = 0; i < records.size(); ++i)
      if (remaining[i] && records[i].bits.test(best)) {
        remaining[i] = 0;
        --left;
      }
  }
  for (LeafIndex v : visit_order(StrategyKind::Alds, d))
    if (!used[v]) g.order.push_back(v);
  return g;
}

SplitResult split_half_eval(const Dataset& dataset, std::uint64_t seed) {
  const int d = dataset.depth();
  std::vector<std::size_t> idx(dataset.records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Xorshift64Star rng(seed);
  for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.uniform(i)]);

  const std::size_t half = (idx.size() + 1) / 2;
  std::vector<InstanceRecord> a, b;
  for (std::size_t i = 0; i < idx.size(); ++i)
    (i < half ? a : b).push_back(dataset.records[idx[i]]);

  const VisitOrder greedy = greedy_construct(a, d).order;
  const VisitOrder alds = visit_order(StrategyKind::Alds, d);
  SplitResult r;
  r.size_a = a.size();
  r.size_b = b.size();
  r.greedy_on_a = evaluate(greedy, a, d).e_star;
  r.alds_on_a = evaluate(alds, a, d).e_star;
  r.greedy_on_b = evaluate(greedy, b, d).e_star;
  r.alds_on_b = evaluate(alds, b, d).e_star;
  return r;
}

VisitOrder linear_model_order(int d, double y, double x) {
  return optimal_order(leaf_probs(DepthProfile::linear(d, y, x)));
}

std::vector<SweepPoint> linear_sweep(const Dataset& dataset, double y,
                                     std::span<const double> xs) {
  std::vector<SweepPoint> out;
  out.reserve(xs.size());
  for (double x : xs)
    out.push_back({x, evaluate(linear_model_order(dataset.depth(), y, x), dataset).e_star});
  return out;
}

}  // namespace alds
