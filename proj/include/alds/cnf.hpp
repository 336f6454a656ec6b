// CNF formulas, DIMACS I/O, uniform random k-SAT generation and unit
// propagation over a backtrackable assignment.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alds {

using Var = std::uint32_t;

/// A literal over a 1-based variable. Stored as 2*(var-1) + (negative ? 1 : 0)
/// so that it doubles as a dense index into per-literal tables.
class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool positive)
      : code_(2 * (var - 1) + (positive ? 0u : 1u)) {}

  static Literal from_dimacs(long value);
  static constexpr Literal from_index(std::size_t index) {
    Literal l;
    l.code_ = static_cast<std::uint32_t>(index);
    return l;
  }

  constexpr Var var() const { return code_ / 2 + 1; }
  constexpr bool positive() const { return (code_ & 1u) == 0; }
  constexpr std::size_t index() const { return code_; }
  constexpr long to_dimacs() const {
    return positive() ? static_cast<long>(var()) : -static_cast<long>(var());
  }

  constexpr Literal operator~() const { return from_index(code_ ^ 1u); }
  constexpr auto operator<=>(const Literal&) const = default;

 private:
  std::uint32_t code_ = 0;
};

/// Non-empty clause without duplicate or complementary literals.
class Clause {
 public:
  /// Drops duplicate literals (first occurrence kept); returns nullopt for a
  /// tautology. Throws std::invalid_argument on an empty literal list.
  static std::optional<Clause> normalized(std::vector<Literal> literals);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  Literal operator[](std::size_t i) const { return literals_[i]; }
  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }
  bool operator==(const Clause&) const = default;

 private:
  explicit Clause(std::vector<Literal> lits) : literals_(std::move(lits)) {}
  std::vector<Literal> literals_;
};

/// Immutable CNF instance. Occurrence lists are built once at construction,
/// each in ascending clause index.
class Formula {
 public:
  Formula() = default;
  Formula(Var num_vars, std::vector<Clause> clauses);

  Var num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_[i]; }
  std::span<const std::uint32_t> occurrences(Literal lit) const {
    return occurrences_[lit.index()];
  }
  std::size_t max_width() const;

  bool operator==(const Formula& other) const {
    return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
  }

 private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::uint32_t>> occurrences_;
};

enum class Value : std::int8_t { False = 0, True = 1, Unassigned = 2 };

/// Tri-state assignment with an ordered trail. `mark()` / `rollback()` and
/// `push_level()` / `pop_level()` restore the exact prior state.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(Var num_vars)
      : values_(static_cast<std::size_t>(num_vars) + 1, Value::Unassigned) {}

  Var num_vars() const { return static_cast<Var>(values_.size() - 1); }
  Value value(Var v) const { return values_[v]; }
  Value value(Literal lit) const {
    const Value v = values_[lit.var()];
    if (v == Value::Unassigned) return v;
    return (v == Value::True) == lit.positive() ? Value::True : Value::False;
  }
  bool is_free(Var v) const { return values_[v] == Value::Unassigned; }
  bool is_true(Literal lit) const { return value(lit) == Value::True; }
  bool is_false(Literal lit) const { return value(lit) == Value::False; }

  /// Precondition: lit's variable is unassigned.
  void assign(Literal lit) {
    values_[lit.var()] = lit.positive() ? Value::True : Value::False;
    trail_.push_back(lit);
  }

  std::size_t mark() const { return trail_.size(); }
  void rollback(std::size_t mark);

  void push_level() { levels_.push_back(trail_.size()); }
  void pop_level();
  std::size_t decision_level() const { return levels_.size(); }

  std::span<const Literal> trail() const { return trail_; }
  std::span<const Value> values() const { return values_; }

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<Value> values_{Value::Unassigned};
  std::vector<Literal> trail_;
  std::vector<std::size_t> levels_;
};

enum class PropagationStatus { Consistent, Conflict };

struct PropagationOutcome {
  PropagationStatus status = PropagationStatus::Consistent;
  /// Literals assigned by this call, starting with the propagated literal.
  std::vector<Literal> implied;

  bool conflict() const { return status == PropagationStatus::Conflict; }
};

/// Assigns `lit` and propagates unit clauses to fixpoint. Clauses are scanned
/// breadth-first over the trail, each occurrence list in ascending clause
/// index. On Conflict the implied literals stay on the trail; roll back with
/// the caller's mark.
PropagationOutcome unit_propagate(const Formula& formula,
                                  Assignment& assignment, Literal lit);

/// Propagates the formula's unit clauses from the current assignment.
PropagationOutcome propagate_units(const Formula& formula,
                                   Assignment& assignment);

/// One clause of the reduced formula: falsified literals dropped.
struct ResidualClause {
  std::uint32_t clause_index;
  std::span<const Literal> literals;
};

/// Materialized reduced formula: every clause not satisfied under the
/// assignment, with falsified literals removed, in clause index order.
class ReducedView {
 public:
  ReducedView(const Formula& formula, const Assignment& assignment);

  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  ResidualClause operator[](std::size_t i) const;

  class Iterator {
   public:
    using value_type = ResidualClause;
    using difference_type = std::ptrdiff_t;
    Iterator() = default;
    Iterator(const ReducedView* view, std::size_t pos) : view_(view), pos_(pos) {}
    ResidualClause operator*() const { return (*view_)[pos_]; }
    Iterator& operator++() { ++pos_; return *this; }
    Iterator operator++(int) { auto t = *this; ++pos_; return t; }
    bool operator==(const Iterator& o) const { return pos_ == o.pos_; }
   private:
    const ReducedView* view_ = nullptr;
    std::size_t pos_ = 0;
  };

  Iterator begin() const { return {this, 0}; }
  Iterator end() const { return {this, index_.size()}; }

  /// Free variables occurring in the view, ascending.
  const std::vector<Var>& variables() const { return variables_; }
  Var num_vars() const { return num_vars_; }
  bool has_empty_clause() const { return has_empty_; }

 private:
  Var num_vars_ = 0;
  std::vector<std::uint32_t> index_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Literal> literals_;
  std::vector<Var> variables_;
  bool has_empty_ = false;
};

ReducedView reduced_view(const Formula& formula, const Assignment& assignment);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct DimacsFile {
  Formula formula;
  /// Clauses exactly as read, before normalization; used to verify models.
  std::vector<std::vector<long>> raw_clauses;
  std::size_t tautologies_removed = 0;
  std::size_t duplicate_literals_removed = 0;
  std::vector<std::string> comments;
};

DimacsFile parse_dimacs(std::istream& in);
DimacsFile parse_dimacs(std::string_view text);

void write_dimacs(std::ostream& out, const Formula& formula,
                  std::span<const std::string> comments = {});

/// xorshift64* (Vigna 2016): 64-bit state, multiplier 0x2545F4914F6CDD1D.
/// The seed is scrambled through one splitmix64 step so that seed 0 and
/// nearby seeds yield unrelated non-zero states.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  bool coin() { return (next() >> 63) != 0; }
  /// Uniform double in [0, 1) from the top 53 bits.
  double unit();

 private:
  std::uint64_t state_;
};

/// Uniform random k-SAT: each clause draws k distinct variables uniformly
/// (rejection on repeats, in draw order) and an independent fair polarity
/// per literal, both from one Xorshift64Star stream seeded with `seed`.
Formula generate_uniform_ksat(Var n, std::size_t m, std::size_t k,
                              std::uint64_t seed);

/// True iff every clause has a true literal under `model` (index 1..n).
bool satisfies(const Formula& formula, const std::vector<bool>& model);
bool satisfies(std::span<const std::vector<long>> raw_clauses,
               const std::vector<bool>& model);

}  // namespace alds
