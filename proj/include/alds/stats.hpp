// Paired sign test used by the experiment reports.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace alds {

/// P(X >= successes) for X ~ Binomial(trials, 1/2).
inline double binomial_upper_tail(std::size_t successes, std::size_t trials) {
  if (successes > trials) return 0.0;
  if (trials == 0) return 1.0;
  double p = 0.0;
  const double n = static_cast<double>(trials);
  for (std::size_t k = successes; k <= trials; ++k) {
    const double kk = static_cast<double>(k);
    p += std::exp(std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1) -
                  n * std::log(2.0));
  }
  return std::min(1.0, p);
}

struct SignTest {
  std::size_t wins = 0;    // pairs with a < b
  std::size_t losses = 0;  // pairs with a > b
  std::size_t ties = 0;
  double p_value = 1.0;    // one-sided, H1: a tends to be smaller
};

/// One-sided paired sign test of "a < b"; ties are dropped.
template <class T>
SignTest sign_test_less(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sign test: unpaired samples");
  SignTest t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) ++t.wins;
    else if (b[i] < a[i]) ++t.losses;
    else ++t.ties;
  }
  t.p_value = binomial_upper_tail(t.wins, t.wins + t.losses);
  return t;
}

}  // namespace alds
