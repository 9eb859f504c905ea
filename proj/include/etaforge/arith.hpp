#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace etaforge {

// Exact rational number. GMP keeps every mpq_class in canonical form
// (reduced, positive denominator) after each arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

struct PrimePower {
  std::int64_t prime;
  int exponent;

  std::int64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

// Trial division; levels handled here are small.
Factorization factor(std::int64_t n);

std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t totient(std::int64_t n);

// True iff every prime factor of n is <= m.
bool is_smooth(std::int64_t n, std::int64_t m);

// Index of Gamma_0(N) in SL_2(Z): N * prod_{p | N} (1 + 1/p).
std::int64_t index_mu(std::int64_t n);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

// d || n: d divides n and gcd(d, n/d) = 1.
bool exactly_divides(std::int64_t d, std::int64_t n);

// Largest power of p dividing n (p^v_p(n)).
std::int64_t prime_part(std::int64_t n, std::int64_t p);

int valuation(std::int64_t n, std::int64_t p);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

std::int64_t floor_div(const Rational& r);
std::int64_t ceil_div(const Rational& r);

}  // namespace etaforge
