// Slow reference implementations the tests compare against.

#pragma once

#include <optional>
#include <vector>

#include "alds/cnf.hpp"

namespace alds::test {

inline constexpr const char* kFla =
    "p cnf 4 5\n"
    "-1 3 0\n"
    "1 2 3 0\n"
    "1 -2 4 0\n"
    "1 -2 -4 0\n"
    "2 -3 4 0\n";

// Truth-table satisfiability, n <= ~22.
inline bool brute_force_sat(const Formula& f) {
  const Var n = f.num_vars();
  std::vector<bool> m(n + 1);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (Var v = 1; v <= n; ++v) m[v] = ((bits >> (v - 1)) & 1u) != 0;
    if (satisfies(f, m)) return true;
  }
  return false;
}

// Rescans every clause until nothing changes. nullopt on conflict.
inline std::optional<std::vector<Value>> naive_propagate(const Formula& f,
                                                         const std::vector<Literal>& assume,
                                                         std::vector<Value> start = {}) {
  std::vector<Value> val = start.empty() ? std::vector<Value>(f.num_vars() + 1, Value::Unassigned)
                                         : std::move(start);
  auto lit_value = [&](Literal l) {
    const Value v = val[l.var()];
    if (v == Value::Unassigned) return v;
    return (v == Value::True) == l.positive() ? Value::True : Value::False;
  };
  for (Literal l : assume) {
    if (lit_value(l) == Value::False) return std::nullopt;
    val[l.var()] = l.positive() ? Value::True : Value::False;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : f.clauses()) {
      int unassigned = 0;
      Literal last;
      bool sat = false;
      for (Literal l : c) {
        const Value v = lit_value(l);
        if (v == Value::True) sat = true;
        else if (v == Value::Unassigned) {
          ++unassigned;
          last = l;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return std::nullopt;
      if (unassigned == 1) {
        val[last.var()] = last.positive() ? Value::True : Value::False;
        changed = true;
      }
    }
  }
  return val;
}

// Unweighted diff from first principles: clauses of width >= 3 under `base`
// that end up unsatisfied with exactly two free literals after propagating
// `lit`. nullopt if `lit` fails.
inline std::optional<int> naive_diff(const Formula& f, const std::vector<Value>& base, Literal lit) {
  const auto after = naive_propagate(f, {lit}, base);
  if (!after) return std::nullopt;
  auto value_in = [](const std::vector<Value>& val, Literal l) {
    const Value v = val[l.var()];
    if (v == Value::Unassigned) return v;
    return (v == Value::True) == l.positive() ? Value::True : Value::False;
  };
  int diff = 0;
  for (const Clause& c : f.clauses()) {
    int free_before = 0, free_after = 0;
    bool sat_before = false, sat_after = false;
    for (Literal l : c) {
      const Value b = value_in(base, l);
      const Value a = value_in(*after, l);
      if (b == Value::True) sat_before = true;
      if (b == Value::Unassigned) ++free_before;
      if (a == Value::True) sat_after = true;
      if (a == Value::Unassigned) ++free_after;
    }
    if (!sat_before && free_before >= 3 && !sat_after && free_after == 2) ++diff;
  }
  return diff;
}

}  // namespace alds::test
