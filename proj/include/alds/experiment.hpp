// Empirical strategy evaluation over datasets of random 3-SAT subtree maps.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "alds/heuristics.hpp"
#include "alds/search.hpp"
#include "alds/subtree_bits.hpp"

namespace alds {

/// One satisfiable instance: which depth-d subtrees contain models.
struct InstanceRecord {
  std::uint64_t instance_id = 0;
  std::uint64_t seed = 0;
  Var n = 0;
  std::size_t m = 0;
  int d = 0;
  SubtreeBits bits;
  SubtreeBits live;

  bool operator==(const InstanceRecord&) const = default;
};

struct DatasetMeta {
  Var n = 0;
  double ratio = 0.0;
  std::size_t m = 0;
  std::size_t k = 3;
  int d = 0;
  std::uint64_t seed0 = 0;
  std::size_t requested = 0;
  HeuristicConfig heuristic;
  std::uint64_t budget = 100'000'000;
  std::size_t attempts = 0;
  std::size_t skipped_unsat = 0;
  std::size_t skipped_budget = 0;

  bool operator==(const DatasetMeta&) const = default;
};

struct Dataset {
  DatasetMeta meta;
  std::vector<InstanceRecord> records;

  int depth() const { return meta.d; }
  bool operator==(const Dataset&) const = default;
};

struct BuildOptions {
  std::size_t count = 200;
  Var n = 100;
  double ratio = 4.26;
  int d = 8;
  std::uint64_t seed0 = 1;
  HeuristicConfig heuristic;
  std::uint64_t budget = 100'000'000;
  unsigned jobs = 1;
  /// Gives up after this many generated instances (0: 100 * count + 100).
  std::size_t max_attempts = 0;
  /// Called (from the builder thread, in seed order) for every skipped seed.
  std::function<void(std::uint64_t seed, const std::string& reason)> on_skip;
};

/// m = round(ratio * n).
std::size_t clause_count(Var n, double ratio);

/// Generates the instance for `seed` and maps its subtrees.
/// Throws BudgetExhausted.
InstanceRecord map_instance(Var n, std::size_t m, std::uint64_t seed, int d,
                            const HeuristicConfig& heuristic, std::uint64_t budget);

/// Seeds seed0, seed0 + 1, ... are processed in batches across `jobs`
/// threads and merged in seed order, keeping satisfiable instances until
/// `count` records exist. The result does not depend on `jobs`.
Dataset build_dataset(const BuildOptions& options);

enum class RankMode { Raw, SkipDead };

struct EvalCurve {
  /// Fraction of instances with rank > k, for k = 1..2^d.
  std::vector<double> unsolved_fraction;
  /// mean(rank) / 2^d; 0 for an empty dataset.
  double e_star = 0.0;
  std::vector<std::uint64_t> ranks;
};

/// First satisfiable subtree's 1-based position in `order`; with SkipDead only
/// live subtrees are counted. Returns 0 if the instance has no set bit.
std::uint64_t first_solution_rank(const VisitOrder& order, const InstanceRecord& record,
                                  RankMode mode = RankMode::Raw);

EvalCurve evaluate(const VisitOrder& order, std::span<const InstanceRecord> records, int d,
                   RankMode mode = RankMode::Raw);
EvalCurve evaluate(const VisitOrder& order, const Dataset& dataset,
                   RankMode mode = RankMode::Raw);

struct GreedyOrder {
  VisitOrder order;
  /// Instances newly covered by each greedy pick, in pick order.
  std::vector<std::size_t> covered;
};

/// Repeatedly picks the subtree holding a model for the most remaining
/// instances (lowest index on ties) and drops those instances; the unpicked
/// subtrees follow in ALDS order.
GreedyOrder greedy_construct(std::span<const InstanceRecord> records, int d);

struct SplitResult {
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  double greedy_on_a = 0.0;
  double alds_on_a = 0.0;
  double greedy_on_b = 0.0;
  double alds_on_b = 0.0;
};

/// Shuffles the records with Xorshift64Star(seed), takes the first ceil(N/2)
/// as A and the rest as B, and evaluates Greedy(A) and ALDS on both halves.
SplitResult split_half_eval(const Dataset& dataset, std::uint64_t seed);

/// Visit order from the linear profile p_l = y + x * l: leaves by descending
/// goal probability, ties by index.
VisitOrder linear_model_order(int d, double y, double x);

struct SweepPoint {
  double x = 0.0;
  double e_star = 0.0;
};

std::vector<SweepPoint> linear_sweep(const Dataset& dataset, double y,
                                     std::span<const double> xs);

/// Versioned JSON persistence; bitsets use SubtreeBits::to_hex.
void save_dataset(std::ostream& out, const Dataset& dataset);
Dataset load_dataset(std::istream& in);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace alds
