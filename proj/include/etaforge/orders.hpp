#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "etaforge/arith.hpp"
#include "etaforge/error.hpp"
#include "etaforge/etaq.hpp"

namespace etaforge {

// Gamma_0(N)-class of the cusp a/t: t | N and a is a residue modulo
// gcd(t, N/t), coprime to it (a = 0 when gcd(t, N/t) = 1).
struct CuspClass {
  std::int64_t t;
  std::int64_t a;
  std::int64_t level;

  friend bool operator==(const CuspClass&, const CuspClass&) = default;
  friend auto operator<=>(const CuspClass&, const CuspClass&) = default;
};

// Class of [a : b] in P^1(Q); b = 0 is the cusp at infinity.
CuspClass cusp_normalize(std::int64_t a, std::int64_t b, std::int64_t n);
std::vector<CuspClass> cusp_classes(std::int64_t n);

// Square matrix indexed by the divisors of a level, in ascending order.
// at() looks entries up by divisor value, operator() by position.
template <typename T>
class DivisorMatrix {
 public:
  DivisorMatrix() = default;
  DivisorMatrix(std::vector<std::int64_t> divisors, std::vector<T> values)
      : divisors_(std::move(divisors)), values_(std::move(values)) {
    if (values_.size() != divisors_.size() * divisors_.size())
      throw DomainError("divisor matrix shape mismatch");
  }

  std::size_t size() const { return divisors_.size(); }
  const std::vector<std::int64_t>& divisors() const { return divisors_; }

  std::size_t index_of(std::int64_t d) const {
    auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
    if (it == divisors_.end() || *it != d) throw DomainError(std::to_string(d) + " is not an index of this matrix");
    return static_cast<std::size_t>(it - divisors_.begin());
  }

  const T& operator()(std::size_t row, std::size_t col) const { return values_[row * size() + col]; }
  T& operator()(std::size_t row, std::size_t col) { return values_[row * size() + col]; }
  const T& at(std::int64_t t, std::int64_t d) const { return (*this)(index_of(t), index_of(d)); }
  std::span<const T> row(std::size_t i) const { return {values_.data() + i * size(), size()}; }

  friend bool operator==(const DivisorMatrix&, const DivisorMatrix&) = default;

 private:
  std::vector<std::int64_t> divisors_;
  std::vector<T> values_;
};

using IntDivisorMatrix = DivisorMatrix<std::int64_t>;
using RationalDivisorMatrix = DivisorMatrix<Rational>;

// ord_{a/t}(eta_d; Gamma_0(N)) = N gcd(d,t)^2 / (24 d gcd(t^2, N)).
Rational order_eta_d(std::int64_t d, std::int64_t t, std::int64_t n);

// A_N(t, d) = 24 ord_{1/t}(eta_d).
IntDivisorMatrix order_matrix(std::int64_t n);
// Symmetrized order matrix: row t of A_N scaled by gcd(t, N/t).
IntDivisorMatrix sym_order_matrix(std::int64_t n);
// Same matrix assembled from the prime-power blocks p^{e - |i - j|}.
IntDivisorMatrix sym_order_matrix_kronecker(std::int64_t n);
// Closed-form tridiagonal inverse for the prime power p^e.
RationalDivisorMatrix prime_power_sym_inverse(std::int64_t p, int e);
// Exact inverse, entrywise product of prime-power inverses.
RationalDivisorMatrix sym_order_matrix_inverse(std::int64_t n);

// Multiplies a vector indexed by D_N by the inverse of the symmetrized order
// matrix one prime at a time, without materializing the full inverse.
std::vector<Rational> apply_sym_inverse(std::int64_t n, std::span<const Rational> v);

// Cached A_N and its symmetrization; safe for concurrent readers.
struct LevelMatrices {
  std::int64_t level;
  IntDivisorMatrix order;
  IntDivisorMatrix sym;
};
std::shared_ptr<const LevelMatrices> level_matrices(std::int64_t n);

// t -> ord_{1/t}(eta^X; Gamma_0(N)) for every t | N.
std::map<std::int64_t, Rational> order_map(const ExponentVector& x, std::int64_t n);
// Symmetrized orders (A-hat_N X), indexed like divisors(n).
std::vector<std::int64_t> sym_orders(const ExponentVector& x, std::int64_t n);
bool is_holomorphic(const ExponentVector& x, std::int64_t n);
// sum_t phi(gcd(t, N/t)) ord_{1/t}(eta^X) == sigma(X) index_mu(N) / 24.
bool valence_check(const ExponentVector& x, std::int64_t n);

}  // namespace etaforge
