#include "etaforge/phimap.hpp"

#include <numeric>

#include "etaforge/arith.hpp"
#include "etaforge/orders.hpp"

namespace etaforge {

namespace {

void require_exact(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw DomainError("levels must be positive");
  if (m % n != 0 || !exactly_divides(n, m))
    throw DomainError(std::to_string(n) + " does not exactly divide " + std::to_string(m));
}

}  // namespace

PhiWeights validate_weights(std::int64_t m, std::int64_t n, const std::map<std::int64_t, std::int64_t>& values) {
  require_exact(m, n);
  const std::int64_t quotient = m / n;
  const auto divs = divisors(quotient);
  for (std::int64_t d : divs)
    if (!values.count(d)) throw DomainError("missing weight for divisor " + std::to_string(d));
  for (const auto& [d, a] : values)
    if (d < 1 || quotient % d != 0) throw DomainError(std::to_string(d) + " does not divide " + std::to_string(quotient));

  const std::int64_t a1 = values.at(1);
  for (std::int64_t d1 : divs) {
    for (std::int64_t d2 : divs) {
      if (d1 > d2 || std::gcd(d1, d2) != 1 || quotient % (d1 * d2) != 0) continue;
      const __int128 lhs = static_cast<__int128>(values.at(d1 * d2)) * a1;
      const __int128 rhs = static_cast<__int128>(values.at(d1)) * values.at(d2);
      if (lhs != rhs)
        throw DomainError("weights are not multiplicative at " + std::to_string(d1) + " * " + std::to_string(d2));
    }
  }

  PhiWeights w;
  w.m_ = m;
  w.n_ = n;
  w.values_ = values;
  for (const auto& pp : factor(quotient)) {
    auto a = [&](int j) -> Rational {
      if (j < 0 || j > pp.exponent) return 0;
      std::int64_t pj = 1;
      for (int k = 0; k < j; ++k) pj *= pp.prime;
      return Rational(static_cast<long>(values.at(pj)));
    };
    for (int j = 0; j <= pp.exponent; ++j) {
      const bool exact = j == 0 || j == pp.exponent;
      const Rational c = exact ? Rational(static_cast<long>(pp.prime))
                               : Rational(static_cast<long>(pp.prime)) + make_rational(1, pp.prime);
      const Rational lhs = a(j - 1) + a(j + 1), rhs = c * a(j);
      if (lhs > rhs)
        throw InadmissibleWeights("admissibility fails at p = " + std::to_string(pp.prime) + ", j = " +
                                      std::to_string(j) + ": " + to_string(lhs) + " > " + to_string(rhs),
                                  pp.prime, j);
      if (lhs == rhs) w.strict_ = false;
    }
  }

  // The inequalities exist to make the inverse image nonnegative.
  std::vector<Rational> ahat;
  for (std::int64_t d : divs) ahat.push_back(static_cast<long>(values.at(d)));
  for (const auto& v : apply_sym_inverse(quotient, ahat)) {
    if (v < 0 || (w.strict_ && v == 0))
      throw ConsistencyError("admissible weights with a " + std::string(v < 0 ? "negative" : "zero") +
                             " entry in the inverse image");
  }
  return w;
}

PhiWeights ones_weights(std::int64_t m, std::int64_t n) {
  require_exact(m, n);
  std::map<std::int64_t, std::int64_t> values;
  for (std::int64_t d : divisors(m / n)) values[d] = 1;
  return validate_weights(m, n, values);
}

PhiWeights corollary2_weights(std::int64_t m, std::int64_t n, int j, std::int64_t mult) {
  require_exact(m, n);
  const auto fac = factor(m / n);
  if (fac.size() != 1) throw DomainError("M/N must be a power of a single prime");
  const auto [p, e] = fac[0];
  if (j < 0 || j > e) throw DomainError("j out of range 0.." + std::to_string(e));
  if (mult < 1 || mult > p - 1) throw DomainError("multiplier out of range 1.." + std::to_string(p - 1));
  std::map<std::int64_t, std::int64_t> values;
  std::int64_t pk = 1;
  for (int k = 0; k <= e; ++k, pk *= p) values[pk] = k == j ? mult : 1;
  return validate_weights(m, n, values);
}

ExponentVector apply_phi(const ExponentVector& x, const PhiWeights& w) {
  const std::int64_t m = w.source_level(), n = w.target_level();
  if (m % level(x) != 0)
    throw DomainError("level " + std::to_string(level(x)) + " does not divide " + std::to_string(m));
  const ReindexedMatrix r = reindex(x, m, m / n);
  ExponentVector::Map out;
  for (std::size_t i = 0; i < r.row_divisors.size(); ++i) {
    __int128 acc = 0;
    for (std::size_t k = 0; k < r.col_divisors.size(); ++k)
      acc += static_cast<__int128>(r.at(i, k)) * w.at(r.col_divisors[k]);
    if (acc > INT64_MAX || acc < INT64_MIN) throw DomainError("64-bit overflow in apply_phi");
    if (acc != 0) out[r.row_divisors[i]] = static_cast<std::int64_t>(acc);
  }
  return ExponentVector(out);
}

PrimeProjection project_to_prime_part(const ExponentVector& x, std::int64_t m, std::int64_t p) {
  const auto fac = factor(m);
  std::int64_t pe = 1;
  for (const auto& pp : fac)
    if (pp.prime == p) pe = pp.value();
  if (factor(p).size() != 1 || factor(p)[0].exponent != 1) throw DomainError(std::to_string(p) + " is not prime");
  PrimeProjection out{apply_phi(x, ones_weights(m, pe)), std::nullopt};
  if (out.image.size() == 1 && out.image.entries().begin()->second == 1) {
    const std::int64_t d = out.image.entries().begin()->first;
    out.j0 = valuation(d, p);
  }
  if (p >= 3 && weight2(x) == 1 && is_holomorphic(x, m) && !out.j0)
    throw ConsistencyError("weight 1/2 quotient " + format(x) + " projects to " + format(out.image) +
                           ", not to a single eta_{" + std::to_string(p) + "^j}");
  return out;
}

}  // namespace etaforge
