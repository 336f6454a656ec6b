#include <algorithm>
#include <bit>
#include <numeric>

#include "alds/search.hpp"

namespace alds {

StrategyKind parse_strategy(std::string_view name) {
  if (name == "dfs") return StrategyKind::Dfs;
  if (name == "lds") return StrategyKind::Lds;
  if (name == "ilds") return StrategyKind::Ilds;
  if (name == "dds") return StrategyKind::Dds;
  if (name == "alds") return StrategyKind::Alds;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Dfs: return "dfs";
    case StrategyKind::Lds: return "lds";
    case StrategyKind::Ilds: return "ilds";
    case StrategyKind::Dds: return "dds";
    case StrategyKind::Alds: return "alds";
  }
  return "?";
}

int discrepancies(PathCode code) {
  return std::popcount(code.bits & ((code.length >= 32) ? ~0u : ((1u << code.length) - 1)));
}

int deepest_discrepancy(PathCode code) {
  if (code.bits == 0) return 0;
  return code.length - std::countr_zero(code.bits);
}

VisitOrder visit_order(StrategyKind kind, int depth) {
  if (depth < 0 || depth > kMaxOrderDepth)
    throw std::invalid_argument("order depth must be in [0, " +
                                std::to_string(kMaxOrderDepth) + "]");
  const LeafIndex leaves = LeafIndex{1} << depth;
  VisitOrder order(leaves);
  std::iota(order.begin(), order.end(), LeafIndex{0});
  auto count = [](LeafIndex v) { return std::popcount(v); };

  switch (kind) {
    case StrategyKind::Dfs:
      break;
    case StrategyKind::Ilds:
      std::stable_sort(order.begin(), order.end(),
                       [&](LeafIndex a, LeafIndex b) { return count(a) < count(b); });
      break;
    case StrategyKind::Alds:
      std::reverse(order.begin(), order.end());
      std::stable_sort(order.begin(), order.end(),
                       [&](LeafIndex a, LeafIndex b) { return count(a) < count(b); });
      break;
    case StrategyKind::Dds: {
      auto key = [&](LeafIndex v) {
        return std::pair{deepest_discrepancy({v, depth}), count(v)};
      };
      std::stable_sort(order.begin(), order.end(),
                       [&](LeafIndex a, LeafIndex b) { return key(a) < key(b); });
      break;
    }
    case StrategyKind::Lds: {
      if (depth > kMaxLdsDepth)
        throw std::invalid_argument("LDS order depth must be at most " +
                                    std::to_string(kMaxLdsDepth));
      VisitOrder seq;
      for (int k = 0; k <= depth; ++k)
        for (LeafIndex v = 0; v < leaves; ++v)
          if (count(v) <= k) seq.push_back(v);
      return seq;
    }
  }
  return order;
}

bool is_permutation_of_leaves(const VisitOrder& order, int depth) {
  const std::size_t leaves = std::size_t{1} << depth;
  if (order.size() != leaves) return false;
  std::vector<char> seen(leaves, 0);
  for (LeafIndex v : order) {
    if (v >= leaves || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace alds
