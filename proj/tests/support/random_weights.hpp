#pragma once

#include <map>
#include <random>

#include "etaforge/arith.hpp"
#include "etaforge/phimap.hpp"

namespace etaforge::testing {

// A random admissible weight vector on D_{M/N}: per prime a sequence with
// b_0 = 1 drawn by rejection, multiplied across primes and scaled by c.
inline PhiWeights random_admissible_weights(std::int64_t m, std::int64_t n, std::mt19937_64& rng) {
  const std::int64_t quotient = m / n;
  std::map<std::int64_t, std::map<int, std::int64_t>> per_prime;
  for (const auto& pp : factor(quotient)) {
    std::uniform_int_distribution<std::int64_t> dist(0, pp.prime * pp.prime);
    for (;;) {
      std::map<int, std::int64_t> b{{0, 1}};
      for (int j = 1; j <= pp.exponent; ++j) b[j] = dist(rng);
      auto at = [&](int j) { return (j < 0 || j > pp.exponent) ? Rational(0) : Rational(static_cast<long>(b[j])); };
      bool ok = true;
      for (int j = 0; j <= pp.exponent && ok; ++j) {
        const bool exact = j == 0 || j == pp.exponent;
        const Rational c = exact ? Rational(static_cast<long>(pp.prime))
                                 : Rational(static_cast<long>(pp.prime)) + make_rational(1, pp.prime);
        ok = at(j - 1) + at(j + 1) <= c * at(j);
      }
      if (ok) {
        per_prime[pp.prime] = b;
        break;
      }
    }
  }
  const std::int64_t scale = std::uniform_int_distribution<std::int64_t>(1, 3)(rng);
  std::map<std::int64_t, std::int64_t> values;
  for (std::int64_t d : divisors(quotient)) {
    std::int64_t v = scale;
    for (const auto& [p, b] : per_prime) v *= b.at(valuation(d, p));
    values[d] = v;
  }
  return validate_weights(m, n, values);
}

}  // namespace etaforge::testing
