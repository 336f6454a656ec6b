// Recursive literal weights, look-ahead evaluation and branching decisions.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alds/cnf.hpp"

namespace alds {

enum class Combiner { Product, Sum };

struct HeuristicConfig {
  Combiner combiner = Combiner::Product;
  int iterations = 3;
  double gamma = 3.3;
  bool failed_literal_detection = true;

  static constexpr int kMaxIterations = 16;

  /// Throws std::invalid_argument when gamma <= 0 or iterations is outside
  /// [0, kMaxIterations].
  void validate() const;

  /// "w0x", "w1plus", "w1x" or "wix" (product with `iterations`).
  static HeuristicConfig preset(std::string_view name, int iterations = 3);
  /// Short name such as "w3x" or "w1plus".
  std::string name() const;

  bool operator==(const HeuristicConfig&) const = default;
};

class UnsupportedWidth : public std::runtime_error {
 public:
  explicit UnsupportedWidth(std::size_t width);
};

/// Per-literal weights h, indexed by Literal::index(), together with the mean
/// mu of the final iteration over the free literals of the view.
class LiteralWeightTable {
 public:
  LiteralWeightTable() = default;
  LiteralWeightTable(std::vector<double> h, double mu) : h_(std::move(h)), mu_(mu) {}

  double operator[](Literal lit) const { return h_[lit.index()]; }
  double mu() const { return mu_; }
  std::span<const double> values() const { return h_; }

  LiteralWeightTable scaled(double c) const;

 private:
  std::vector<double> h_;
  double mu_ = 1.0;
};

/// Iterates h_{i+1}(x) = sum over ternary (x|y|z) of h_i(~y)/mu_i * h_i(~z)/mu_i
///                     + gamma * sum over binary (x|y) of h_i(~y)/mu_i
/// from h_0 = 1, where mu_i is the mean of h_i over both literals of every
/// free variable occurring in the view. Literals of variables outside the view
/// keep weight 0. Throws UnsupportedWidth for residual clauses wider than 3.
LiteralWeightTable compute_weights(const ReducedView& view, const HeuristicConfig& config);

/// Weight of a newly created binary clause (y | z): h(~y) * h(~z) or
/// h(~y) + h(~z). Throws std::invalid_argument unless the clause has width 2.
double clause_weight(std::span<const Literal> binary, const LiteralWeightTable& table,
                     const HeuristicConfig& config);

enum class Forced : std::uint8_t { None, MustTrue, MustFalse, BothFail };

struct VariableLookahead {
  Var var = 0;
  double diff_false = 0.0;
  double diff_true = 0.0;
  Forced forced = Forced::None;
  /// False when the variable got assigned while applying forced literals.
  bool free_after = true;
};

struct LookaheadResult {
  std::vector<VariableLookahead> entries;
  /// Forced literals in discovery order (ascending variable).
  std::vector<Literal> forced_literals;
  bool dead_end = false;

  const VariableLookahead* find(Var v) const;
};

/// Looks ahead on both polarities of every free variable of the node's view,
/// all against the same pre-look-ahead state. The Diff of a look-ahead is the
/// summed clause_weight of the clauses that were ternary at the node and are
/// binary and unsatisfied afterwards. Failed literals are collected during the
/// pass and, if detection is enabled, assigned and propagated at the node once
/// the pass is complete; the assignment keeps them on return. A variable that
/// fails both ways, or a conflict while applying forced literals, marks the
/// node as a dead end.
LookaheadResult lookahead_all(const Formula& formula, Assignment& assignment,
                              const ReducedView& view, const LiteralWeightTable& table,
                              const HeuristicConfig& config);

struct Decision {
  Var var = 0;
  bool first_value = false;

  Literal first_literal() const { return Literal(var, first_value); }
  bool operator==(const Decision&) const = default;
};

/// Maximizes diff_false * diff_true over the unforced, still-free variables;
/// ties go to the larger sum, then the lower index. The first branch is the
/// side with the smaller diff (false on ties). Throws std::invalid_argument if
/// no candidate exists.
Decision select_decision(const LookaheadResult& result);

}  // namespace alds
