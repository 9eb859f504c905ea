#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace etaforge {

// Exponent vector X of the eta quotient prod_d eta(d z)^{X_d}.
//
// Only nonzero exponents are stored; the empty vector is the constant 1.
// The level is not stored: the same quotient can be viewed on Gamma_0(M)
// for every multiple M of its level.
class ExponentVector {
 public:
  using Map = std::map<std::int64_t, std::int64_t>;

  ExponentVector() = default;
  // Zero entries are dropped; bases must be positive.
  explicit ExponentVector(const Map& entries);
  ExponentVector(std::initializer_list<std::pair<const std::int64_t, std::int64_t>> entries);

  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  // X_d, 0 when absent.
  std::int64_t operator[](std::int64_t d) const;

  // Dense vector over the (ascending) divisors of n. Requires level() | n.
  std::vector<std::int64_t> dense(std::int64_t n) const;
  static ExponentVector from_dense(const std::vector<std::int64_t>& divs, const std::vector<std::int64_t>& values);

  // Exponent vectors add when quotients multiply.
  ExponentVector& operator+=(const ExponentVector& o);
  ExponentVector& operator-=(const ExponentVector& o);
  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }
  ExponentVector operator-() const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;

 private:
  void add(std::int64_t d, std::int64_t e);

  Map entries_;
};

ExponentVector parse(std::string_view text);
// Canonical text: ascending base, single spaces, exponent always written.
std::string format(const ExponentVector& x);

std::int64_t level(const ExponentVector& x);
// sigma(X) = sum of exponents = twice the weight.
std::int64_t weight2(const ExponentVector& x);
// z -> nu z: every base d becomes nu * d.
ExponentVector rescale(const ExponentVector& x, std::int64_t nu);
// gcd of the support keys (0 for the constant quotient).
std::int64_t content(const ExponentVector& x);
bool is_primitive(const ExponentVector& x);
// The unique primitive P with x = rescale(P, content(x)).
ExponentVector primitive_part(const ExponentVector& x);

// X^[d] for d || n: rows indexed by D_{n/d}, columns by D_d,
// entry (r, c) = X_{r*c}.
struct ReindexedMatrix {
  std::vector<std::int64_t> row_divisors;
  std::vector<std::int64_t> col_divisors;
  std::vector<std::int64_t> values;  // row-major

  std::int64_t at(std::size_t r, std::size_t c) const { return values[r * col_divisors.size() + c]; }
  // Inverse of the bijection.
  ExponentVector flatten() const;
};

ReindexedMatrix reindex(const ExponentVector& x, std::int64_t n, std::int64_t d);

// Z_{d d'} = X_d Y_{d'}; requires gcd(level(x), level(y)) = 1.
ExponentVector star_product(const ExponentVector& x, const ExponentVector& y);

}  // namespace etaforge
