// Strategy-ordered DPLL: discrepancy-based traversal of the top `jump_depth`
// branching levels, plain DFS below.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alds/cnf.hpp"
#include "alds/heuristics.hpp"
#include "alds/subtree_bits.hpp"

namespace alds {

enum class StrategyKind { Dfs, Lds, Ilds, Dds, Alds };

StrategyKind parse_strategy(std::string_view name);
std::string_view to_string(StrategyKind kind);
inline constexpr StrategyKind kAllStrategies[] = {StrategyKind::Dfs, StrategyKind::Lds,
                                                  StrategyKind::Ilds, StrategyKind::Dds,
                                                  StrategyKind::Alds};

using LeafIndex = std::uint32_t;
using VisitOrder = std::vector<LeafIndex>;

inline constexpr int kMaxOrderDepth = 24;
/// LDS repeats leaves, so its sequence grows as roughly depth/2 * 2^depth.
inline constexpr int kMaxLdsDepth = 20;

/// Address of a node in the top of the tree: bit 0 takes the preferred branch,
/// bit 1 a discrepancy. The first decision is the most significant bit.
struct PathCode {
  std::uint32_t bits = 0;
  int length = 0;

  bool bit(int level) const { return ((bits >> (length - 1 - level)) & 1u) != 0; }
  PathCode prefix(int len) const { return {bits >> (length - len), len}; }
};

int discrepancies(PathCode code);

/// Level (1-based, from the root) of the deepest discrepancy; 0 for the
/// all-preferred path.
int deepest_discrepancy(PathCode code);

/// Leaf visiting sequence for a strategy over a tree of depth `depth`:
///   DFS  leaf index ascending
///   ILDS (discrepancies, index) ascending
///   DDS  (deepest discrepancy level, discrepancies, index) ascending
///   ALDS discrepancies ascending, index descending within a count
///   LDS  iterations k = 0..depth of every leaf with <= k discrepancies, in
///        index order (leaves repeat across iterations)
/// Throws std::invalid_argument for depth outside [0, kMaxOrderDepth].
VisitOrder visit_order(StrategyKind kind, int depth);

/// True iff `order` holds every leaf of a depth-`depth` tree exactly once.
bool is_permutation_of_leaves(const VisitOrder& order, int depth);

enum class SolveStatus { Sat, Unsat, BudgetExhausted };
std::string_view to_string(SolveStatus status);

struct SolveOptions {
  HeuristicConfig heuristic;
  StrategyKind strategy = StrategyKind::Alds;
  int jump_depth = 0;
  std::uint64_t budget = 100'000'000;
  bool skip_dead_prefixes = true;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Unsat;
  /// Indexed by variable, entry 0 unused. Unassigned variables are false.
  std::vector<bool> model;
  std::uint64_t subtrees_entered = 0;
  /// 1-based position in the visit order of the subtree holding the model.
  std::optional<std::uint64_t> rank_of_first_solution;
  std::uint64_t nodes_expanded = 0;
};

/// Walks the strategy's visit order over the top `jump_depth` decisions,
/// re-descending from the root for every leaf code and searching each reached
/// subtree with DFS. Every node runs the look-ahead (weights, diffs, failed
/// literals). Forced literals never consume a code bit. A node that conflicts
/// kills every code sharing its prefix; a node whose residual formula is empty
/// makes every code below it a solution. Deterministic for fixed input.
SolveReport solve(const Formula& formula, const SolveOptions& options);

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t budget);
};

struct SubtreeMap {
  /// Bit v set iff the depth-d subtree with leaf index v holds a model.
  SubtreeBits solutions;
  /// Bit v set iff code v reaches depth d (or a solved node) without conflict.
  SubtreeBits live;
  std::uint64_t nodes_expanded = 0;
};

/// Complete exploration: which of the 2^depth subtrees contain a model.
/// Throws BudgetExhausted once more than `budget` nodes were expanded.
SubtreeMap map_subtrees(const Formula& formula, const HeuristicConfig& heuristic,
                        int depth, std::uint64_t budget = 100'000'000);

}  // namespace alds
