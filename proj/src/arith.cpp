#include "etaforge/arith.hpp"

#include <algorithm>
#include <numeric>

#include "etaforge/error.hpp"

namespace etaforge {

namespace {

void require_positive(std::int64_t n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": argument must be positive, got " + std::to_string(n));
}

std::int64_t to_int64(const BigInt& z) {
  if (!z.fits_slong_p()) throw DomainError("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace

std::int64_t PrimePower::value() const {
  std::int64_t v = 1;
  for (int i = 0; i < exponent; ++i) v *= prime;
  return v;
}

Factorization factor(std::int64_t n) {
  require_positive(n, "factor");
  Factorization out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  require_positive(n, "divisors");
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t base = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t totient(std::int64_t n) {
  require_positive(n, "totient");
  std::int64_t phi = n;
  for (const auto& pp : factor(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

bool is_smooth(std::int64_t n, std::int64_t m) {
  require_positive(n, "is_smooth");
  for (const auto& pp : factor(n))
    if (pp.prime > m) return false;
  return true;
}

std::int64_t index_mu(std::int64_t n) {
  require_positive(n, "index_mu");
  std::int64_t mu = n;
  for (const auto& pp : factor(n)) mu = mu / pp.prime * (pp.prime + 1);
  return mu;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

bool exactly_divides(std::int64_t d, std::int64_t n) {
  return d >= 1 && n >= 1 && n % d == 0 && std::gcd(d, n / d) == 1;
}

std::int64_t prime_part(std::int64_t n, std::int64_t p) {
  std::int64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

std::int64_t floor_div(const Rational& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(q);
}

std::int64_t ceil_div(const Rational& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return to_int64(q);
}

}  // namespace etaforge
