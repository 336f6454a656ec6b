#include "alds/search.hpp"

#include <algorithm>

namespace alds {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

BudgetExhausted::BudgetExhausted(std::uint64_t budget)
    : std::runtime_error("node budget of " + std::to_string(budget) + " exhausted") {}

namespace {

bool all_satisfied(const Formula& f, const Assignment& a) {
  return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](Literal l) { return a.is_true(l); });
  });
}

enum class NodeKind : std::uint8_t { Unexpanded, Conflict, Satisfied, Branch };

struct NodeResult {
  NodeKind kind = NodeKind::Conflict;
  Decision decision;
};

// DPLL node expansion and plain DFS over one shared assignment.
class Engine {
 public:
  Engine(const Formula& formula, const HeuristicConfig& config, std::uint64_t budget)
      : formula_(formula), config_(config), budget_(budget), assignment_(formula.num_vars()) {}

  Assignment& assignment() { return assignment_; }
  std::uint64_t nodes_expanded() const { return nodes_; }

  // Look-ahead at the current node. Forced literals stay assigned.
  NodeResult expand() {
    if (++nodes_ > budget_) throw BudgetExhausted(budget_);
    const ReducedView view(formula_, assignment_);
    if (view.empty()) return {NodeKind::Satisfied, {}};
    const auto table = compute_weights(view, config_);
    const auto result = lookahead_all(formula_, assignment_, view, table, config_);
    if (result.dead_end) return {NodeKind::Conflict, {}};
    if (!result.forced_literals.empty() && all_satisfied(formula_, assignment_))
      return {NodeKind::Satisfied, {}};
    const bool has_candidate =
        std::any_of(result.entries.begin(), result.entries.end(), [](const auto& e) {
          return e.forced == Forced::None && e.free_after;
        });
    if (!has_candidate) return {NodeKind::Satisfied, {}};
    return {NodeKind::Branch, select_decision(result)};
  }

  // Complete DFS below the current node; on success the assignment is left at
  // the model.
  bool dfs() {
    const NodeResult node = expand();
    if (node.kind == NodeKind::Conflict) return false;
    if (node.kind == NodeKind::Satisfied) return true;
    const Literal first = node.decision.first_literal();
    for (Literal lit : {first, ~first}) {
      const std::size_t mark = assignment_.mark();
      if (!unit_propagate(formula_, assignment_, lit).conflict() && dfs()) return true;
      assignment_.rollback(mark);
    }
    return false;
  }

  std::vector<bool> model() const {
    std::vector<bool> m(static_cast<std::size_t>(formula_.num_vars()) + 1, false);
    for (Var v = 1; v <= formula_.num_vars(); ++v)
      m[v] = assignment_.value(v) == Value::True;
    return m;
  }

 private:
  const Formula& formula_;
  HeuristicConfig config_;
  std::uint64_t budget_;
  Assignment assignment_;
  std::uint64_t nodes_ = 0;
};

// Cache of the top of the tree. A node holds the literals its incoming edge
// propagated, then (once expanded) the literals its look-ahead forced, so a
// replay re-assigns both slices without repeating any work.
struct TopNode {
  NodeKind kind = NodeKind::Unexpanded;
  Decision decision;
  std::vector<Literal> arrival;
  std::vector<Literal> forced;
  int child[2] = {-1, -1};
};

enum class Descent { Dead, Solved, Exhausted };

class TopTree {
 public:
  TopTree(Engine& engine, const Formula& formula)
      : engine_(engine), formula_(formula), nodes_(1) {}

  // Known-dead check without touching the assignment.
  bool known_dead(PathCode code) const {
    int node = 0;
    for (int level = 0; level < code.length; ++level) {
      const TopNode& t = nodes_[node];
      if (t.kind == NodeKind::Conflict) return true;
      if (t.kind != NodeKind::Branch) return false;
      node = t.child[code.bit(level)];
      if (node < 0) return false;
    }
    return nodes_[node].kind == NodeKind::Conflict;
  }

  // Replays `code` from the root state and searches the reached subtree.
  Descent descend(PathCode code) {
    Assignment& a = engine_.assignment();
    int node = 0;
    for (int level = 0; level < code.length; ++level) {
      if (nodes_[node].kind == NodeKind::Unexpanded) {
        const std::size_t mark = a.mark();
        const NodeResult r = engine_.expand();
        TopNode& t = nodes_[node];
        t.kind = r.kind;
        t.decision = r.decision;
        const auto trail = a.trail();
        t.forced.assign(trail.begin() + static_cast<std::ptrdiff_t>(mark), trail.end());
      } else if (nodes_[node].kind != NodeKind::Conflict) {
        for (Literal l : nodes_[node].forced) a.assign(l);
      }
      const NodeKind kind = nodes_[node].kind;
      if (kind == NodeKind::Conflict) return Descent::Dead;
      if (kind == NodeKind::Satisfied) return Descent::Solved;

      const int bit = code.bit(level) ? 1 : 0;
      if (nodes_[node].child[bit] < 0) {
        const Literal first = nodes_[node].decision.first_literal();
        const Literal lit = bit ? ~first : first;
        const std::size_t mark = a.mark();
        const bool conflict = unit_propagate(formula_, a, lit).conflict();
        TopNode child;
        const auto trail = a.trail();
        child.arrival.assign(trail.begin() + static_cast<std::ptrdiff_t>(mark), trail.end());
        if (conflict) child.kind = NodeKind::Conflict;
        nodes_.push_back(std::move(child));
        nodes_[node].child[bit] = static_cast<int>(nodes_.size() - 1);
        node = nodes_[node].child[bit];
      } else {
        node = nodes_[node].child[bit];
        if (nodes_[node].kind != NodeKind::Conflict)
          for (Literal l : nodes_[node].arrival) a.assign(l);
      }
      if (nodes_[node].kind == NodeKind::Conflict) return Descent::Dead;
    }
    return engine_.dfs() ? Descent::Solved : Descent::Exhausted;
  }

 private:
  Engine& engine_;
  const Formula& formula_;
  std::vector<TopNode> nodes_;
};

}  // namespace

SolveReport solve(const Formula& formula, const SolveOptions& options) {
  options.heuristic.validate();
  if (options.jump_depth < 0 || options.jump_depth > kMaxOrderDepth)
    throw std::invalid_argument("jump depth must be in [0, " +
                                std::to_string(kMaxOrderDepth) + "]");
  SolveReport report;
  Engine engine(formula, options.heuristic, options.budget);
  Assignment& a = engine.assignment();
  if (propagate_units(formula, a).conflict()) {
    report.status = SolveStatus::Unsat;
    return report;
  }
  const std::size_t root_mark = a.mark();
  const VisitOrder order = visit_order(options.strategy, options.jump_depth);
  TopTree tree(engine, formula);

  try {
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const PathCode code{order[pos], options.jump_depth};
      if (options.skip_dead_prefixes && tree.known_dead(code)) continue;
      ++report.subtrees_entered;
      const Descent result = tree.descend(code);
      if (result == Descent::Solved) {
        report.status = SolveStatus::Sat;
        report.model = engine.model();
        report.rank_of_first_solution = pos + 1;
        break;
      }
      a.rollback(root_mark);
    }
  } catch (const BudgetExhausted&) {
    report.status = SolveStatus::BudgetExhausted;
  }
  report.nodes_expanded = engine.nodes_expanded();
  if (report.status == SolveStatus::Sat && !satisfies(formula, report.model))
    throw std::logic_error("solver produced a non-model");
  return report;
}

SubtreeMap map_subtrees(const Formula& formula, const HeuristicConfig& heuristic, int depth,
                        std::uint64_t budget) {
  heuristic.validate();
  if (depth < 0 || depth > kMaxOrderDepth)
    throw std::invalid_argument("map depth must be in [0, " + std::to_string(kMaxOrderDepth) +
                                "]");
  SubtreeMap out{SubtreeBits::for_depth(depth), SubtreeBits::for_depth(depth), 0};
  Engine engine(formula, heuristic, budget);
  Assignment& a = engine.assignment();
  if (propagate_units(formula, a).conflict()) return out;

  auto visit = [&](auto&& self, int level, std::uint32_t prefix) -> void {
    const std::size_t mark = a.mark();
    if (level == depth) {
      out.live.set(prefix);
      if (engine.dfs()) out.solutions.set(prefix);
      a.rollback(mark);
      return;
    }
    const NodeResult node = engine.expand();
    if (node.kind == NodeKind::Satisfied) {
      const int rest = depth - level;
      out.solutions.set_range(std::size_t{prefix} << rest, std::size_t{prefix + 1} << rest);
      out.live.set_range(std::size_t{prefix} << rest, std::size_t{prefix + 1} << rest);
    } else if (node.kind == NodeKind::Branch) {
      const Literal first = node.decision.first_literal();
      for (std::uint32_t bit = 0; bit < 2; ++bit) {
        const std::size_t child_mark = a.mark();
        if (!unit_propagate(formula, a, bit ? ~first : first).conflict())
          self(self, level + 1, prefix * 2 + bit);
        a.rollback(child_mark);
      }
    }
    a.rollback(mark);
  };
  visit(visit, 0, 0);
  out.nodes_expanded = engine.nodes_expanded();
  return out;
}

}  // namespace alds
