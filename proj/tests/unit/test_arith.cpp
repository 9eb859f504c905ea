#include <numeric>
#include <random>

#include "doctest.h"
#include "etaforge/arith.hpp"
#include "etaforge/cyclotomic.hpp"
#include "etaforge/error.hpp"

using namespace etaforge;

TEST_CASE("factor") {
  CHECK(factor(72) == Factorization{{2, 3}, {3, 2}});
  CHECK(factor(1).empty());
  CHECK(factor(121) == Factorization{{11, 2}});
  CHECK(factor(999983) == Factorization{{999983, 1}});
  CHECK_THROWS_AS(factor(0), DomainError);

  for (std::int64_t n = 1; n <= 3000; ++n) {
    std::int64_t prod = 1;
    std::int64_t last = 1;
    for (const auto& pp : factor(n)) {
      CHECK(pp.prime > last);
      last = pp.prime;
      prod *= pp.value();
    }
    CHECK(prod == n);
  }
}

TEST_CASE("divisors") {
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(divisors(72) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72});
  CHECK_THROWS_AS(divisors(0), DomainError);
}

TEST_CASE("totient") {
  CHECK(totient(1) == 1);
  CHECK(totient(6) == 2);
  CHECK(totient(49) == 42);
  CHECK_THROWS_AS(totient(0), DomainError);
}

TEST_CASE("totient and divisors agree with brute force up to 10000") {
  for (std::int64_t n = 1; n <= 10000; ++n) {
    std::int64_t phi = 0;
    std::vector<std::int64_t> divs;
    for (std::int64_t k = 1; k <= n; ++k) {
      if (std::gcd(k, n) == 1) ++phi;
      if (n % k == 0) divs.push_back(k);
    }
    REQUIRE(totient(n) == phi);
    REQUIRE(divisors(n) == divs);
  }
}

TEST_CASE("is_smooth") {
  CHECK(is_smooth(72, 3));
  CHECK_FALSE(is_smooth(10, 3));
  CHECK(is_smooth(1, 2));
  CHECK(is_smooth(10, 5));
}

TEST_CASE("index_mu matches the size of P^1(Z/N)") {
  CHECK(index_mu(1) == 1);
  CHECK(index_mu(2) == 3);
  CHECK(index_mu(72) == 144);
  // Right cosets of Gamma_0(N) <-> bottom rows (c : d) in P^1(Z/N).
  for (std::int64_t n = 1; n <= 60; ++n) {
    std::int64_t primitive_pairs = 0;
    for (std::int64_t c = 0; c < n; ++c)
      for (std::int64_t d = 0; d < n; ++d)
        if (std::gcd(std::gcd(c, d), n) == 1) ++primitive_pairs;
    CHECK(index_mu(n) == primitive_pairs / totient(n));
  }
}

TEST_CASE("exact divisibility and rationals") {
  CHECK(exactly_divides(8, 72));
  CHECK_FALSE(exactly_divides(4, 72));
  CHECK(exactly_divides(1, 72));
  CHECK(exactly_divides(72, 72));
  CHECK(to_string(make_rational(6, -8)) == "-3/4");
  CHECK(to_string(make_rational(0, 5)) == "0");
  CHECK(floor_div(make_rational(-7, 2)) == -4);
  CHECK(ceil_div(make_rational(-7, 2)) == -3);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(-1000000, 1000000);
  for (int i = 0; i < 500; ++i) {
    Rational a = make_rational(dist(rng), std::max<std::int64_t>(1, std::abs(dist(rng))));
    Rational b = make_rational(dist(rng), std::max<std::int64_t>(1, std::abs(dist(rng))));
    CHECK(Rational((a + b) - b) == a);
    if (a != 0) CHECK(Rational(a * (Rational(1) / a)) == 1);
    CHECK(gcd(abs(a.get_num()), a.get_den()) == 1);
  }
}

namespace {

// Z[zeta_n] -> F_97 with zeta_n -> root (97 = 2 * 48 + 1).
constexpr long kPrime = 97;

long eval_mod(const CyclotomicInt& x, long root) {
  long acc = 0;
  long pw = 1;
  for (const auto& c : x.coefficients()) {
    long r = mpz_fdiv_ui(c.get_mpz_t(), kPrime);
    acc = (acc + r * pw) % kPrime;
    pw = pw * root % kPrime;
  }
  return acc;
}

long pow_mod(long b, long e) {
  long r = 1;
  for (; e > 0; --e) r = r * b % kPrime;
  return r;
}

CyclotomicInt random_element(int order, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-50, 50);
  std::vector<BigInt> poly(static_cast<std::size_t>(order) + 3);
  for (auto& c : poly) c = dist(rng);
  return CyclotomicInt(order, poly);
}

}  // namespace

TEST_CASE("cyclotomic roots of unity have exact order n") {
  for (int n : {1, 2, 4, 12, 24, 48}) {
    const auto zeta = CyclotomicInt::root_of_unity(n, 1);
    CyclotomicInt acc(n, BigInt(1));
    for (int k = 1; k <= n; ++k) {
      acc *= zeta;
      if (k < n) CHECK_FALSE(acc == CyclotomicInt(n, BigInt(1)));
    }
    CHECK(acc == CyclotomicInt(n, BigInt(1)));
    CHECK(zeta.root_index() == (n == 1 ? 0 : 1));
    CHECK(zeta.times_root(n - 1) == CyclotomicInt(n, BigInt(1)));
  }
  // i^2 = -1 and omega = zeta_12^4 satisfies omega^2 + omega + 1 = 0.
  const auto i = CyclotomicInt::root_of_unity(12, 3);
  CHECK(i * i == CyclotomicInt(12, BigInt(-1)));
  const auto w = CyclotomicInt::root_of_unity(12, 4);
  CHECK((w * w + w + CyclotomicInt(12, BigInt(1))).is_zero());
}

TEST_CASE("cyclotomic arithmetic is a ring homomorphism image-wise") {
  std::mt19937_64 rng(11);
  // g = 5 generates F_97^*, so 5^(96/n) is a primitive n-th root.
  for (int n : {1, 2, 4, 12, 24, 48}) {
    const long root = pow_mod(5, 96 / n);
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_element(n, rng);
      auto b = random_element(n, rng);
      CHECK(eval_mod(a * b, root) == eval_mod(a, root) * eval_mod(b, root) % kPrime);
      CHECK(eval_mod(a + b, root) == (eval_mod(a, root) + eval_mod(b, root)) % kPrime);
      CHECK(eval_mod(a.times_root(5), root) == eval_mod(a, root) * pow_mod(root, 5) % kPrime);
    }
  }
}

TEST_CASE("embedding commutes with ring operations") {
  std::mt19937_64 rng(3);
  const std::vector<std::pair<int, int>> pairs{{1, 4}, {2, 4}, {4, 12}, {12, 24}, {12, 48}, {24, 48}, {1, 48}, {4, 48}};
  for (auto [m, n] : pairs) {
    for (int trial = 0; trial < 30; ++trial) {
      auto a = random_element(m, rng);
      auto b = random_element(m, rng);
      CHECK((a * b).embed(n) == a.embed(n) * b.embed(n));
      CHECK((a - b).embed(n) == a.embed(n) - b.embed(n));
      // injective: a nonzero element stays nonzero
      if (!a.is_zero()) CHECK_FALSE(a.embed(n).is_zero());
    }
    CHECK(CyclotomicInt::root_of_unity(m, 1).embed(n) == CyclotomicInt::root_of_unity(n, n / m));
  }
  CHECK_THROWS_AS(CyclotomicInt(12).embed(16), DomainError);
  CHECK_THROWS_AS(CyclotomicInt(12) + CyclotomicInt(24), DomainError);
}

TEST_CASE("cyclotomic canonical form") {
  // zeta_4^2 reduces to -1.
  CHECK(CyclotomicInt(4, {BigInt(0), BigInt(0), BigInt(1)}) == CyclotomicInt(4, BigInt(-1)));
  CHECK(CyclotomicInt(12, BigInt(3)).to_integer() == 3);
  CHECK_THROWS_AS(CyclotomicInt::root_of_unity(12, 1).to_integer(), DomainError);
  CHECK(CyclotomicInt::root_of_unity(4, 1).to_string() == "z");
  CHECK((CyclotomicInt(4, BigInt(2)) - CyclotomicInt::root_of_unity(4, 1)).to_string() == "2 - z");
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(cyclotomic_polynomial(48) == std::vector<long>{1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1});
}
