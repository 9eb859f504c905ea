#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etaforge/arith.hpp"

namespace etaforge {

// Element of Z[zeta_n], stored as the unique polynomial in zeta_n of degree
// < phi(n) (i.e. reduced modulo the n-th cyclotomic polynomial).
class CyclotomicInt {
 public:
  CyclotomicInt() : CyclotomicInt(1) {}
  explicit CyclotomicInt(int order);
  CyclotomicInt(int order, const BigInt& integer);
  // Takes an arbitrary-length polynomial in zeta and reduces it.
  CyclotomicInt(int order, std::vector<BigInt> poly);

  // zeta_n^k, any integer k.
  static CyclotomicInt root_of_unity(int order, long k);

  int order() const { return order_; }
  std::span<const BigInt> coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_integer() const;
  // Throws DomainError unless is_integer().
  BigInt to_integer() const;

  // Multiplication by zeta_n^k.
  CyclotomicInt times_root(long k) const;
  // Image under Z[zeta_m] -> Z[zeta_n], zeta_m -> zeta_n^(n/m); requires order() | n.
  CyclotomicInt embed(int n) const;
  // k in [0, n) with *this == zeta_n^k, if any.
  std::optional<int> root_index() const;

  CyclotomicInt operator-() const;
  CyclotomicInt& operator+=(const CyclotomicInt& o);
  CyclotomicInt& operator-=(const CyclotomicInt& o);
  CyclotomicInt& operator*=(const CyclotomicInt& o);
  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
  friend CyclotomicInt operator*(CyclotomicInt a, const CyclotomicInt& b) { return a *= b; }
  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);

  // e.g. "2 - z + 3*z^3" in powers of z = zeta_n; "0" for zero.
  std::string to_string() const;

 private:
  void require_same_order(const CyclotomicInt& o) const;
  void reduce(std::vector<BigInt>& poly) const;

  int order_;
  std::vector<BigInt> coeffs_;
};

// Coefficients (ascending) of the n-th cyclotomic polynomial.
const std::vector<long>& cyclotomic_polynomial(int n);

}  // namespace etaforge
