// Single-goal probabilistic model of a binary search tree: heuristic
// probability per level, induced goal probability per leaf, and the expected
// normalized rank of the goal leaf under a visit order.

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "alds/search.hpp"

namespace alds {

/// Heuristic probability p_l of picking the goal's branch at branching level
/// l = 1..depth (root is level 1).
class DepthProfile {
 public:
  /// Throws std::invalid_argument unless every p is in (0, 1].
  explicit DepthProfile(std::vector<double> per_level);
  /// p_l = y + x * l for l = 1..depth.
  static DepthProfile linear(int depth, double y, double x);

  int depth() const { return static_cast<int>(p_.size()); }
  double operator[](int level) const { return p_[static_cast<std::size_t>(level - 1)]; }
  std::span<const double> levels() const { return p_; }

 private:
  std::vector<double> p_;
};

using LeafProbs = std::vector<double>;

/// prob(leaf) = product over levels of p_l (preferred branch) or 1 - p_l
/// (discrepancy), leaf bits read most significant first.
LeafProbs leaf_probs(const DepthProfile& profile);

/// (1/2^d) * sum over leaves of rank(v) * prob(v), rank 1-based.
/// Throws std::invalid_argument unless `order` is a permutation of the leaves.
double e_goal(const VisitOrder& order, const LeafProbs& probs);

/// Like e_goal but for sequences with repeats (LDS): a leaf's rank is the
/// position of its first visit. Every leaf must be visited.
double e_goal_first_visit(const VisitOrder& order, const LeafProbs& probs);

/// Leaves by descending probability; ties (within a relative 1e-12, to absorb
/// rounding between equal products) by ascending index.
VisitOrder optimal_order(const LeafProbs& probs);

/// Fraction of goals not yet found after exploring k leaves, k = 0..2^d.
std::vector<double> unsolved_curve(const VisitOrder& order, const LeafProbs& probs);

/// E_goal per strategy name ("dfs", "lds", "ilds", "dds", "alds", "optimal").
std::map<std::string, double> strategy_table(const DepthProfile& profile,
                                             std::span<const StrategyKind> strategies,
                                             bool include_optimal = true);

}  // namespace alds
