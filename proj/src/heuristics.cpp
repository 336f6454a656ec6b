#include "alds/heuristics.hpp"

#include <algorithm>
#include <charconv>

namespace alds {

void HeuristicConfig::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (iterations < 0 || iterations > kMaxIterations)
    throw std::invalid_argument("iterations must be in [0, " +
                                std::to_string(kMaxIterations) + "]");
}

HeuristicConfig HeuristicConfig::preset(std::string_view name, int iterations) {
  HeuristicConfig c;
  if (name == "w0x") {
    c.combiner = Combiner::Product;
    c.iterations = 0;
  } else if (name == "w1plus") {
    c.combiner = Combiner::Sum;
    c.iterations = 1;
  } else if (name == "w1x") {
    c.combiner = Combiner::Product;
    c.iterations = 1;
  } else if (name == "wix") {
    c.combiner = Combiner::Product;
    c.iterations = iterations;
  } else {
    throw std::invalid_argument("unknown heuristic '" + std::string(name) + "'");
  }
  c.validate();
  return c;
}

std::string HeuristicConfig::name() const {
  return "w" + std::to_string(iterations) + (combiner == Combiner::Sum ? "plus" : "x");
}

UnsupportedWidth::UnsupportedWidth(std::size_t width)
    : std::runtime_error("residual clause of width " + std::to_string(width) +
                         " is not supported (binary and ternary clauses only)") {}

LiteralWeightTable LiteralWeightTable::scaled(double c) const {
  std::vector<double> h = h_;
  for (double& x : h) x *= c;
  return {std::move(h), mu_ * c};
}

LiteralWeightTable compute_weights(const ReducedView& view, const HeuristicConfig& config) {
  config.validate();
  const std::size_t num_lits = 2 * static_cast<std::size_t>(view.num_vars());
  for (const ResidualClause rc : view) {
    if (rc.literals.size() > 3) throw UnsupportedWidth(rc.literals.size());
  }

  std::vector<double> h(num_lits, 0.0);
  for (Var v : view.variables()) {
    h[Literal(v, true).index()] = 1.0;
    h[Literal(v, false).index()] = 1.0;
  }
  const std::size_t free_lits = 2 * view.variables().size();
  auto mean = [&](const std::vector<double>& w) {
    if (free_lits == 0) return 1.0;
    double s = 0.0;
    for (Var v : view.variables())
      s += w[Literal(v, true).index()] + w[Literal(v, false).index()];
    return s / static_cast<double>(free_lits);
  };

  double mu = mean(h);
  std::vector<double> next(num_lits, 0.0);
  for (int it = 0; it < config.iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    // All weights collapsed to zero: keep the zero table instead of dividing.
    const double inv = mu > 0.0 ? 1.0 / mu : 0.0;
    for (const ResidualClause rc : view) {
      const auto lits = rc.literals;
      if (lits.size() == 3) {
        for (std::size_t i = 0; i < 3; ++i) {
          const Literal y = lits[(i + 1) % 3], z = lits[(i + 2) % 3];
          next[lits[i].index()] += (h[(~y).index()] * inv) * (h[(~z).index()] * inv);
        }
      } else if (lits.size() == 2) {
        next[lits[0].index()] += config.gamma * h[(~lits[1]).index()] * inv;
        next[lits[1].index()] += config.gamma * h[(~lits[0]).index()] * inv;
      }
    }
    h.swap(next);
    mu = mean(h);
  }
  return {std::move(h), mu};
}

double clause_weight(std::span<const Literal> binary, const LiteralWeightTable& table,
                     const HeuristicConfig& config) {
  if (binary.size() != 2)
    throw std::invalid_argument("clause_weight expects a binary clause, got width " +
                                std::to_string(binary.size()));
  const double a = table[~binary[0]];
  const double b = table[~binary[1]];
  return config.combiner == Combiner::Product ? a * b : a + b;
}

const VariableLookahead* LookaheadResult::find(Var v) const {
  const auto it = std::lower_bound(entries.begin(), entries.end(), v,
                                   [](const VariableLookahead& e, Var x) { return e.var < x; });
  return it != entries.end() && it->var == v ? &*it : nullptr;
}

namespace {

// Per-node scratch: the width of every clause that is unsatisfied at the node
// (0 for satisfied ones) and a stamp to count each clause once per look-ahead.
class DiffCounter {
 public:
  DiffCounter(const Formula& formula, const ReducedView& view)
      : formula_(formula), node_width_(formula.num_clauses(), 0),
        stamp_(formula.num_clauses(), 0) {
    for (const ResidualClause rc : view)
      node_width_[rc.clause_index] = static_cast<std::uint8_t>(std::min<std::size_t>(rc.literals.size(), 255));
  }

  double diff(const Assignment& a, std::span<const Literal> implied,
              const LiteralWeightTable& table, const HeuristicConfig& config) {
    ++epoch_;
    double total = 0.0;
    Literal free_lits[2];
    for (Literal lit : implied) {
      for (std::uint32_t ci : formula_.occurrences(~lit)) {
        if (node_width_[ci] != 3 || stamp_[ci] == epoch_) continue;
        stamp_[ci] = epoch_;
        int free = 0;
        bool satisfied = false;
        for (Literal l : formula_.clause(ci)) {
          const Value v = a.value(l);
          if (v == Value::True) { satisfied = true; break; }
          if (v == Value::Unassigned) {
            if (free < 2) free_lits[free] = l;
            ++free;
          }
        }
        if (!satisfied && free == 2) total += clause_weight(free_lits, table, config);
      }
    }
    return total;
  }

 private:
  const Formula& formula_;
  std::vector<std::uint8_t> node_width_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

LookaheadResult lookahead_all(const Formula& formula, Assignment& assignment,
                              const ReducedView& view, const LiteralWeightTable& table,
                              const HeuristicConfig& config) {
  LookaheadResult result;
  result.entries.reserve(view.variables().size());
  DiffCounter counter(formula, view);

  for (Var v : view.variables()) {
    VariableLookahead entry;
    entry.var = v;
    bool failed[2] = {false, false};
    for (int value = 0; value < 2; ++value) {
      const std::size_t mark = assignment.mark();
      const auto outcome = unit_propagate(formula, assignment, Literal(v, value == 1));
      failed[value] = outcome.conflict();
      const double d = counter.diff(assignment, outcome.implied, table, config);
      (value == 1 ? entry.diff_true : entry.diff_false) = d;
      assignment.rollback(mark);
    }
    if (config.failed_literal_detection) {
      if (failed[0] && failed[1]) {
        entry.forced = Forced::BothFail;
        result.dead_end = true;
      } else if (failed[0]) {
        entry.forced = Forced::MustTrue;
        result.forced_literals.emplace_back(v, true);
      } else if (failed[1]) {
        entry.forced = Forced::MustFalse;
        result.forced_literals.emplace_back(v, false);
      }
    }
    result.entries.push_back(entry);
    if (result.dead_end) return result;
  }

  for (Literal lit : result.forced_literals) {
    if (assignment.is_true(lit)) continue;
    if (assignment.is_false(lit) || unit_propagate(formula, assignment, lit).conflict()) {
      result.dead_end = true;
      return result;
    }
  }
  for (auto& e : result.entries) e.free_after = assignment.is_free(e.var);
  return result;
}

Decision select_decision(const LookaheadResult& result) {
  const VariableLookahead* best = nullptr;
  double best_product = 0.0, best_sum = 0.0;
  for (const auto& e : result.entries) {
    if (e.forced != Forced::None || !e.free_after) continue;
    const double product = e.diff_false * e.diff_true;
    const double sum = e.diff_false + e.diff_true;
    // Entries are in ascending variable order, so strict comparison keeps the
    // lowest index on full ties.
    if (best == nullptr || product > best_product ||
        (product == best_product && sum > best_sum)) {
      best = &e;
      best_product = product;
      best_sum = sum;
    }
  }
  if (best == nullptr) throw std::invalid_argument("select_decision: no free variable");
  return {best->var, best->diff_true < best->diff_false};
}

}  // namespace alds
