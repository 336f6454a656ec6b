#include "alds/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace alds {

Literal Literal::from_dimacs(long value) {
  if (value == 0) throw std::invalid_argument("literal 0 is not a variable");
  const bool positive = value > 0;
  const auto var = static_cast<Var>(positive ? value : -value);
  return Literal(var, positive);
}

std::optional<Clause> Clause::normalized(std::vector<Literal> literals) {
  if (literals.empty()) throw std::invalid_argument("empty clause");
  std::vector<Literal> out;
  out.reserve(literals.size());
  for (Literal lit : literals) {
    if (std::find(out.begin(), out.end(), ~lit) != out.end()) return std::nullopt;
    if (std::find(out.begin(), out.end(), lit) == out.end()) out.push_back(lit);
  }
  return Clause(std::move(out));
}

Formula::Formula(Var num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars),
      clauses_(std::move(clauses)),
      occurrences_(2 * static_cast<std::size_t>(num_vars)) {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    for (Literal lit : clauses_[i]) {
      if (lit.var() > num_vars_) {
        throw std::invalid_argument("clause " + std::to_string(i) +
                                    " mentions variable " +
                                    std::to_string(lit.var()) + " > " +
                                    std::to_string(num_vars_));
      }
      occurrences_[lit.index()].push_back(static_cast<std::uint32_t>(i));
    }
  }
}

std::size_t Formula::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.size());
  return w;
}

void Assignment::rollback(std::size_t mark) {
  while (trail_.size() > mark) {
    values_[trail_.back().var()] = Value::Unassigned;
    trail_.pop_back();
  }
}

void Assignment::pop_level() {
  if (levels_.empty()) throw std::logic_error("pop_level at level 0");
  rollback(levels_.back());
  levels_.pop_back();
}

namespace {

// Returns Conflict if the queue drains into an empty clause.
PropagationStatus propagate_from(const Formula& formula, Assignment& a,
                                 std::size_t head) {
  while (head < a.mark()) {
    const Literal falsified = ~a.trail()[head++];
    for (std::uint32_t ci : formula.occurrences(falsified)) {
      const Clause& c = formula.clause(ci);
      Literal unit{};
      int free = 0;
      bool satisfied = false;
      for (Literal l : c) {
        const Value v = a.value(l);
        if (v == Value::True) {
          satisfied = true;
          break;
        }
        if (v == Value::Unassigned) {
          ++free;
          unit = l;
        }
      }
      if (satisfied) continue;
      if (free == 0) return PropagationStatus::Conflict;
      if (free == 1) a.assign(unit);
    }
  }
  return PropagationStatus::Consistent;
}

PropagationOutcome outcome_since(const Assignment& a, std::size_t start,
                                 PropagationStatus status) {
  const auto trail = a.trail();
  return {status, {trail.begin() + static_cast<std::ptrdiff_t>(start), trail.end()}};
}

}  // namespace

PropagationOutcome unit_propagate(const Formula& formula, Assignment& assignment,
                                  Literal lit) {
  const std::size_t start = assignment.mark();
  assignment.assign(lit);
  const auto status = propagate_from(formula, assignment, start);
  return outcome_since(assignment, start, status);
}

PropagationOutcome propagate_units(const Formula& formula, Assignment& assignment) {
  const std::size_t start = assignment.mark();
  for (const Clause& c : formula.clauses()) {
    Literal unit{};
    int free = 0;
    bool satisfied = false;
    for (Literal l : c) {
      const Value v = assignment.value(l);
      if (v == Value::True) { satisfied = true; break; }
      if (v == Value::Unassigned) { ++free; unit = l; }
    }
    if (satisfied) continue;
    if (free == 0) return outcome_since(assignment, start, PropagationStatus::Conflict);
    if (free == 1) {
      const std::size_t head = assignment.mark();
      assignment.assign(unit);
      if (propagate_from(formula, assignment, head) == PropagationStatus::Conflict)
        return outcome_since(assignment, start, PropagationStatus::Conflict);
    }
  }
  return outcome_since(assignment, start, PropagationStatus::Consistent);
}

ReducedView::ReducedView(const Formula& formula, const Assignment& assignment)
    : num_vars_(formula.num_vars()) {
  std::vector<char> seen(static_cast<std::size_t>(num_vars_) + 1, 0);
  for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
    const Clause& c = formula.clause(i);
    if (std::any_of(c.begin(), c.end(),
                    [&](Literal l) { return assignment.is_true(l); }))
      continue;
    const std::size_t before = literals_.size();
    for (Literal l : c) {
      if (assignment.is_false(l)) continue;
      literals_.push_back(l);
      seen[l.var()] = 1;
    }
    if (literals_.size() == before) has_empty_ = true;
    index_.push_back(static_cast<std::uint32_t>(i));
    offsets_.push_back(static_cast<std::uint32_t>(literals_.size()));
  }
  for (Var v = 1; v <= num_vars_; ++v)
    if (seen[v]) variables_.push_back(v);
}

ResidualClause ReducedView::operator[](std::size_t i) const {
  return {index_[i], std::span<const Literal>(literals_).subspan(
                         offsets_[i], offsets_[i + 1] - offsets_[i])};
}

ReducedView reduced_view(const Formula& formula, const Assignment& assignment) {
  return ReducedView(formula, assignment);
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool parse_long(std::string_view tok, long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

DimacsFile parse_dimacs(std::istream& in) {
  DimacsFile result;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  long n = 0, m = 0;
  std::vector<Clause> clauses;
  std::vector<long> current;
  std::size_t current_line = 0;

  auto finish_clause = [&](std::size_t at) {
    if (current.empty()) throw ParseError(at, "empty clause");
    if (static_cast<long>(result.raw_clauses.size()) >= m)
      throw ParseError(at, "more clauses than declared in header");
    std::vector<Literal> lits;
    lits.reserve(current.size());
    for (long v : current) lits.push_back(Literal::from_dimacs(v));
    result.raw_clauses.push_back(current);
    const std::size_t raw_size = lits.size();
    if (auto c = Clause::normalized(std::move(lits))) {
      result.duplicate_literals_removed += raw_size - c->size();
      clauses.push_back(std::move(*c));
    } else {
      ++result.tautologies_removed;
    }
    current.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    const auto first = sv.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    sv.remove_prefix(first);
    if (sv.front() == 'c') {
      auto body = sv.substr(1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      result.comments.emplace_back(body);
      continue;
    }
    if (sv.front() == '%') break;  // SATLIB end marker
    std::istringstream tokens{std::string(sv)};
    if (sv.front() == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string p, fmt, ns, ms, extra;
      tokens >> p >> fmt >> ns >> ms;
      if (p != "p" || fmt != "cnf" || !parse_long(ns, n) || !parse_long(ms, m) ||
          n < 0 || m < 0 || (tokens >> extra))
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before 'p cnf' header");
    std::string tok;
    while (tokens >> tok) {
      long v = 0;
      if (!parse_long(tok, v)) throw ParseError(line_no, "bad literal '" + tok + "'");
      if (v == 0) {
        finish_clause(line_no);
        continue;
      }
      if (v > n || -v > n)
        throw ParseError(line_no, "literal " + tok + " out of range 1.." + std::to_string(n));
      if (current.empty()) current_line = line_no;
      current.push_back(v);
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(current_line, "clause missing terminating 0");
  if (static_cast<long>(result.raw_clauses.size()) != m)
    throw ParseError(line_no, "header declares " + std::to_string(m) + " clauses, found " +
                                  std::to_string(result.raw_clauses.size()));
  result.formula = Formula(static_cast<Var>(n), std::move(clauses));
  return result;
}

DimacsFile parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Formula& formula,
                  std::span<const std::string> comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const Clause& c : formula.clauses()) {
    for (Literal l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z ^= z >> 31;
  state_ = z != 0 ? z : 0x9E3779B97F4A7C15ull;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

std::uint64_t Xorshift64Star::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: bound must be positive");
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double Xorshift64Star::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Formula generate_uniform_ksat(Var n, std::size_t m, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("clause width must be at least 1");
  if (k > n) throw std::invalid_argument("clause width " + std::to_string(k) +
                                         " exceeds variable count " + std::to_string(n));
  Xorshift64Star rng(seed);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  std::vector<Var> vars;
  for (std::size_t i = 0; i < m; ++i) {
    vars.clear();
    while (vars.size() < k) {
      const auto v = static_cast<Var>(rng.uniform(n) + 1);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<Literal> lits;
    lits.reserve(k);
    for (Var v : vars) lits.emplace_back(v, rng.coin());
    clauses.push_back(*Clause::normalized(std::move(lits)));
  }
  return Formula(n, std::move(clauses));
}

bool satisfies(const Formula& formula, const std::vector<bool>& model) {
  return std::all_of(formula.clauses().begin(), formula.clauses().end(),
                     [&](const Clause& c) {
                       return std::any_of(c.begin(), c.end(), [&](Literal l) {
                         return model[l.var()] == l.positive();
                       });
                     });
}

bool satisfies(std::span<const std::vector<long>> raw_clauses, const std::vector<bool>& model) {
  return std::all_of(raw_clauses.begin(), raw_clauses.end(), [&](const auto& c) {
    return std::any_of(c.begin(), c.end(), [&](long v) {
      const auto var = static_cast<std::size_t>(v > 0 ? v : -v);
      return var < model.size() && model[var] == (v > 0);
    });
  });
}

}  // namespace alds
