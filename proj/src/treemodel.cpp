#include "alds/treemodel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace alds {

DepthProfile::DepthProfile(std::vector<double> per_level) : p_(std::move(per_level)) {
  if (static_cast<int>(p_.size()) > kMaxOrderDepth)
    throw std::invalid_argument("profile depth exceeds " + std::to_string(kMaxOrderDepth));
  for (std::size_t i = 0; i < p_.size(); ++i)
    if (!(p_[i] > 0.0 && p_[i] <= 1.0))
      throw std::invalid_argument("heuristic probability at level " + std::to_string(i + 1) +
                                  " must be in (0, 1], got " + std::to_string(p_[i]));
}

DepthProfile DepthProfile::linear(int depth, double y, double x) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(depth));
  for (int level = 1; level <= depth; ++level) p.push_back(y + x * level);
  return DepthProfile(std::move(p));
}

LeafProbs leaf_probs(const DepthProfile& profile) {
  // Built level by level: each node splits into (p, 1 - p) children.
  LeafProbs probs{1.0};
  for (double p : profile.levels()) {
    LeafProbs next(probs.size() * 2);
    for (std::size_t v = 0; v < probs.size(); ++v) {
      next[2 * v] = probs[v] * p;
      next[2 * v + 1] = probs[v] * (1.0 - p);
    }
    probs.swap(next);
  }
  return probs;
}

namespace {

int depth_of(const LeafProbs& probs) {
  const auto n = probs.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("leaf probabilities must have a power-of-two size");
  return std::countr_zero(n);
}

}  // namespace

double e_goal(const VisitOrder& order, const LeafProbs& probs) {
  const int d = depth_of(probs);
  if (order.size() != probs.size())
    throw std::invalid_argument("order size " + std::to_string(order.size()) +
                                " does not match " + std::to_string(probs.size()) + " leaves");
  if (!is_permutation_of_leaves(order, d))
    throw std::invalid_argument("order is not a permutation of the leaves");
  double sum = 0.0;
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    sum += static_cast<double>(pos + 1) * probs[order[pos]];
  return sum / static_cast<double>(probs.size());
}

double e_goal_first_visit(const VisitOrder& order, const LeafProbs& probs) {
  depth_of(probs);
  std::vector<std::size_t> rank(probs.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    if (order[pos] >= probs.size()) throw std::invalid_argument("leaf index out of range");
    if (rank[order[pos]] == 0) rank[order[pos]] = pos + 1;
  }
  double sum = 0.0;
  for (std::size_t v = 0; v < probs.size(); ++v) {
    if (rank[v] == 0) throw std::invalid_argument("order never visits leaf " + std::to_string(v));
    sum += static_cast<double>(rank[v]) * probs[v];
  }
  return sum / static_cast<double>(probs.size());
}

VisitOrder optimal_order(const LeafProbs& probs) {
  depth_of(probs);
  // Quantize in log space so products that are equal up to rounding tie.
  std::vector<std::int64_t> key(probs.size());
  for (std::size_t v = 0; v < probs.size(); ++v)
    key[v] = probs[v] > 0.0 ? std::llround(std::log(probs[v]) * 1e12)
                            : std::numeric_limits<std::int64_t>::min();
  VisitOrder order(probs.size());
  std::iota(order.begin(), order.end(), LeafIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](LeafIndex a, LeafIndex b) { return key[a] > key[b]; });
  return order;
}

std::vector<double> unsolved_curve(const VisitOrder& order, const LeafProbs& probs) {
  std::vector<char> seen(probs.size(), 0);
  std::vector<double> curve{1.0};
  double found = 0.0;
  for (LeafIndex v : order) {
    if (!seen.at(v)) {
      seen[v] = 1;
      found += probs[v];
    }
    curve.push_back(std::max(0.0, 1.0 - found));
  }
  return curve;
}

std::map<std::string, double> strategy_table(const DepthProfile& profile,
                                             std::span<const StrategyKind> strategies,
                                             bool include_optimal) {
  const LeafProbs probs = leaf_probs(profile);
  std::map<std::string, double> table;
  for (StrategyKind kind : strategies) {
    const VisitOrder order = visit_order(kind, profile.depth());
    table[std::string(to_string(kind))] =
        kind == StrategyKind::Lds ? e_goal_first_visit(order, probs) : e_goal(order, probs);
  }
  if (include_optimal) table["optimal"] = e_goal(optimal_order(probs), probs);
  return table;
}

}  // namespace alds
