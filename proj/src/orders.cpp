#include "etaforge/orders.hpp"

#include <limits>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

namespace etaforge {

namespace {

void require_level(std::int64_t n) {
  if (n < 1) throw DomainError("level must be positive, got " + std::to_string(n));
}

void require_on_level(const ExponentVector& x, std::int64_t n) {
  require_level(n);
  if (n % level(x) != 0)
    throw DomainError("level " + std::to_string(level(x)) + " does not divide " + std::to_string(n));
}

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw DomainError("64-bit overflow in order computation");
  return static_cast<std::int64_t>(v);
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// 24 ord_{1/t}(eta_d; Gamma_0(N)), integral for d, t | N.
std::int64_t order_numerator(std::int64_t d, std::int64_t t, std::int64_t n) {
  const __int128 g = std::gcd(d, t);
  const __int128 num = static_cast<__int128>(n) * g * g;
  const __int128 den = static_cast<__int128>(d) * std::gcd(static_cast<std::int64_t>(static_cast<__int128>(t) * t % n), n);
  return checked(num / den);
}

// Applies per-prime (e+1)x(e+1) blocks along each prime axis of D_N.
template <typename Block>
std::vector<Rational> apply_along_primes(std::int64_t n, std::vector<Rational> v, Block block_for) {
  const auto divs = divisors(n);
  auto pos = [&](std::int64_t d) {
    return static_cast<std::size_t>(std::lower_bound(divs.begin(), divs.end(), d) - divs.begin());
  };
  for (const auto& pp : factor(n)) {
    const RationalDivisorMatrix block = block_for(pp.prime, pp.exponent);
    const std::size_t len = block.size();
    std::vector<std::size_t> fiber(len);
    std::vector<Rational> out(len);
    for (std::int64_t m : divs) {
      if (m % pp.prime == 0) continue;  // fibers start at the p-free divisors
      std::int64_t d = m;
      for (std::size_t j = 0; j < len; ++j, d *= pp.prime) fiber[j] = pos(d);
      for (std::size_t i = 0; i < len; ++i) {
        out[i] = 0;
        for (std::size_t j = 0; j < len; ++j) out[i] += block(i, j) * v[fiber[j]];
      }
      for (std::size_t i = 0; i < len; ++i) v[fiber[i]] = out[i];
    }
  }
  return v;
}

}  // namespace

CuspClass cusp_normalize(std::int64_t a, std::int64_t b, std::int64_t n) {
  require_level(n);
  if (std::gcd(a, b) != 1)
    throw DomainError("[" + std::to_string(a) + " : " + std::to_string(b) + "] is not in lowest terms");
  const std::int64_t t = std::gcd(n, b);  // gcd(n, 0) = n: infinity
  const std::int64_t g = std::gcd(t, n / t);
  if (g == 1) return {t, 0, n};
  // Bring b to t with a diagonal element delta = (b/t)^{-1} mod N/t;
  // the top entry becomes a * (b/t) modulo gcd(t, N/t).
  const std::int64_t b1 = b / t;
  return {t, mod(static_cast<std::int64_t>(static_cast<__int128>(mod(a, g)) * mod(b1, g) % g), g), n};
}

std::vector<CuspClass> cusp_classes(std::int64_t n) {
  require_level(n);
  std::vector<CuspClass> out;
  for (std::int64_t t : divisors(n)) {
    const std::int64_t g = std::gcd(t, n / t);
    if (g == 1) {
      out.push_back({t, 0, n});
      continue;
    }
    for (std::int64_t a = 1; a < g; ++a)
      if (std::gcd(a, g) == 1) out.push_back({t, a, n});
  }
  return out;
}

Rational order_eta_d(std::int64_t d, std::int64_t t, std::int64_t n) {
  require_level(n);
  if (d < 1 || t < 1 || n % d != 0 || n % t != 0)
    throw DomainError("order_eta_d needs d, t dividing " + std::to_string(n));
  return make_rational(order_numerator(d, t, n), 24);
}

IntDivisorMatrix order_matrix(std::int64_t n) {
  require_level(n);
  auto divs = divisors(n);
  std::vector<std::int64_t> values;
  values.reserve(divs.size() * divs.size());
  for (std::int64_t t : divs)
    for (std::int64_t d : divs) values.push_back(order_numerator(d, t, n));
  return {std::move(divs), std::move(values)};
}

IntDivisorMatrix sym_order_matrix(std::int64_t n) {
  IntDivisorMatrix a = order_matrix(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t t = a.divisors()[i];
    const std::int64_t g = std::gcd(t, n / t);
    for (std::size_t j = 0; j < a.size(); ++j) a(i, j) = checked(static_cast<__int128>(a(i, j)) * g);
  }
  return a;
}

IntDivisorMatrix sym_order_matrix_kronecker(std::int64_t n) {
  require_level(n);
  const auto fac = factor(n);
  auto divs = divisors(n);
  std::vector<std::int64_t> values;
  values.reserve(divs.size() * divs.size());
  for (std::int64_t t : divs) {
    for (std::int64_t d : divs) {
      __int128 v = 1;
      for (const auto& pp : fac) {
        const int gap = std::abs(valuation(t, pp.prime) - valuation(d, pp.prime));
        for (int k = gap; k < pp.exponent; ++k) v *= pp.prime;
      }
      values.push_back(checked(v));
    }
  }
  return {std::move(divs), std::move(values)};
}

RationalDivisorMatrix prime_power_sym_inverse(std::int64_t p, int e) {
  if (p < 2 || e < 0) throw DomainError("prime_power_sym_inverse needs a prime and e >= 0");
  std::vector<std::int64_t> divs;
  std::int64_t pk = 1;
  for (int k = 0; k <= e; ++k, pk *= p) divs.push_back(pk);
  const std::size_t len = divs.size();
  std::vector<Rational> values(len * len, Rational(0));
  if (e == 0) {
    values[0] = 1;
    return {std::move(divs), std::move(values)};
  }
  // 1 / (p^e (1 - 1/p^2)) times the tridiagonal pattern.
  const Rational scale = Rational(1) / (Rational(divs.back()) * (Rational(1) - make_rational(1, p * p)));
  const Rational off = -make_rational(1, p);
  const Rational mid = Rational(1) + make_rational(1, p * p);
  for (std::size_t i = 0; i < len; ++i) {
    values[i * len + i] = scale * ((i == 0 || i + 1 == len) ? Rational(1) : mid);
    if (i + 1 < len) {
      values[i * len + i + 1] = scale * off;
      values[(i + 1) * len + i] = scale * off;
    }
  }
  return {std::move(divs), std::move(values)};
}

RationalDivisorMatrix sym_order_matrix_inverse(std::int64_t n) {
  require_level(n);
  const auto fac = factor(n);
  std::vector<RationalDivisorMatrix> blocks;
  for (const auto& pp : fac) blocks.push_back(prime_power_sym_inverse(pp.prime, pp.exponent));
  auto divs = divisors(n);
  std::vector<Rational> values;
  values.reserve(divs.size() * divs.size());
  for (std::int64_t t : divs) {
    for (std::int64_t d : divs) {
      Rational v = 1;
      for (std::size_t k = 0; k < fac.size() && v != 0; ++k)
        v *= blocks[k](static_cast<std::size_t>(valuation(t, fac[k].prime)),
                       static_cast<std::size_t>(valuation(d, fac[k].prime)));
      values.push_back(v);
    }
  }
  return {std::move(divs), std::move(values)};
}

std::vector<Rational> apply_sym_inverse(std::int64_t n, std::span<const Rational> v) {
  require_level(n);
  if (v.size() != divisors(n).size()) throw DomainError("vector length does not match the divisors of the level");
  return apply_along_primes(n, std::vector<Rational>(v.begin(), v.end()), prime_power_sym_inverse);
}

std::shared_ptr<const LevelMatrices> level_matrices(std::int64_t n) {
  static std::shared_mutex mu;
  static std::unordered_map<std::int64_t, std::shared_ptr<const LevelMatrices>> cache;
  {
    std::shared_lock lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // Built without the lock held; a racing duplicate build is harmless.
  auto built = std::make_shared<const LevelMatrices>(LevelMatrices{n, order_matrix(n), sym_order_matrix(n)});
  std::unique_lock lock(mu);
  return cache.try_emplace(n, std::move(built)).first->second;
}

std::map<std::int64_t, Rational> order_map(const ExponentVector& x, std::int64_t n) {
  require_on_level(x, n);
  const auto mats = level_matrices(n);
  const auto xs = x.dense(n);
  std::map<std::int64_t, Rational> out;
  for (std::size_t i = 0; i < mats->order.size(); ++i) {
    __int128 acc = 0;
    auto row = mats->order.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) acc += static_cast<__int128>(row[j]) * xs[j];
    out.emplace(mats->order.divisors()[i], make_rational(checked(acc), 24));
  }
  return out;
}

std::vector<std::int64_t> sym_orders(const ExponentVector& x, std::int64_t n) {
  require_on_level(x, n);
  const auto mats = level_matrices(n);
  const auto xs = x.dense(n);
  std::vector<std::int64_t> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    __int128 acc = 0;
    auto row = mats->sym.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) acc += static_cast<__int128>(row[j]) * xs[j];
    out[i] = checked(acc);
  }
  return out;
}

bool is_holomorphic(const ExponentVector& x, std::int64_t n) {
  for (std::int64_t v : sym_orders(x, n))
    if (v < 0) return false;
  return true;
}

bool valence_check(const ExponentVector& x, std::int64_t n) {
  Rational total = 0;
  for (const auto& [t, ord] : order_map(x, n)) total += ord * totient(std::gcd(t, n / t));
  return total == make_rational(weight2(x), 24) * index_mu(n);
}

}  // namespace etaforge
