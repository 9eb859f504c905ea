#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etaforge/cyclotomic.hpp"
#include "etaforge/etaq.hpp"

namespace etaforge {

// sum_{m < P} c_m u^(e0 + m) + O(u^(e0 + P)) with u = q^(1/24) and
// coefficients in Z[zeta_n]. Leading zeros are stripped on construction
// (the horizon e0 + P is kept), so c_0 != 0 unless the series is zero.
class PuiseuxSeries {
 public:
  PuiseuxSeries(int ring_order, std::int64_t e0, std::vector<CyclotomicInt> coeffs);
  static PuiseuxSeries zero(int ring_order, std::int64_t horizon);
  // 1 + O(u^precision)
  static PuiseuxSeries one(int ring_order, std::int64_t precision);
  // Integer coefficients.
  static PuiseuxSeries from_integers(std::int64_t e0, const std::vector<BigInt>& coeffs);

  int ring_order() const { return order_; }
  std::int64_t leading_exponent() const { return e0_; }
  std::int64_t precision() const { return static_cast<std::int64_t>(coeffs_.size()); }
  std::int64_t horizon() const { return e0_ + precision(); }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<CyclotomicInt>& coefficients() const { return coeffs_; }
  // Coefficient of u^m; requires m < horizon().
  CyclotomicInt coefficient(std::int64_t m) const;
  // Exponents (in u) of the nonzero coefficients.
  std::vector<std::int64_t> support() const;

  // Coefficients embedded into Z[zeta_n]; requires ring_order() | n.
  PuiseuxSeries embed(int n) const;
  // Multiplication by c u^k.
  PuiseuxSeries scaled(const CyclotomicInt& c, std::int64_t k) const;
  PuiseuxSeries truncated(std::int64_t horizon) const;

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  // Same ring, horizon and coefficients.
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b);

  // "q^{1/24} - q^{25/24} + O(q^{17/8})"
  std::string to_string() const;

 private:
  void normalize();

  int order_;
  std::int64_t e0_;
  std::vector<CyclotomicInt> coeffs_;
};

// Exponent m/24 of q as a reduced fraction, e.g. "25/24", "3/8", "2", "-1".
std::string q_exponent(std::int64_t m);

// u prod (1 - u^(24n)), precision P, via the pentagonal number theorem.
PuiseuxSeries eta_series(std::int64_t precision);
// The same truncation from the product; the independent oracle.
PuiseuxSeries eta_series_by_product(std::int64_t precision);
// eta^X with precision P beyond its leading exponent sum d X_d.
PuiseuxSeries quotient_series(const ExponentVector& x, std::int64_t precision);

// zeta_12^unit u^exponent.
struct JtpSubstitution {
  int unit;
  std::int64_t exponent;
};

struct JtpCell {
  PuiseuxSeries lhs, rhs;
  // lhs = zeta_24^unit u^shift rhs
  int unit;
  std::int64_t shift;
};

// Both sides of the Jacobi triple product at the substitution, in Z[zeta_24].
// lhs has precision P; rhs is cut at the same horizon. Throws
// ConsistencyError if no unit and shift relate the two sides.
JtpCell jtp_cell(JtpSubstitution x, JtpSubstitution y, std::int64_t precision);

struct JtpTableEntry {
  JtpSubstitution x, y;
  ExponentVector quotient;
};
// The fourteen cells, in row order.
const std::array<JtpTableEntry, 14>& jtp_table();

struct JtpTableCheck {
  JtpCell cell;
  // lhs = scalar u^shift eta^X within precision, if such a relation holds.
  std::optional<CyclotomicInt> scalar;
  std::int64_t shift = 0;
};
JtpTableCheck check_jtp_table_cell(const JtpTableEntry& entry, std::int64_t precision);

struct ThetaSupport {
  std::int64_t t;
  // n >= 0 -> coefficient of u^(t n^2)
  std::map<std::int64_t, BigInt> coefficients;
};

// Largest t | 24 with every exponent of the expansion equal to t n^2.
// Throws ConsistencyError if none fits, DomainError if fewer than ten
// support points are visible at this precision.
ThetaSupport theta_extract(const ExponentVector& x, std::int64_t precision);

// q -> -q: the coefficient of u^m is multiplied by zeta_48^m. Output ring
// order is lcm(ring order, 48).
PuiseuxSeries sign_transform(const PuiseuxSeries& s);

struct InvolutionEntry {
  int from, to;  // 1-based list indices
  int unit;      // sign_transform(f_from) = zeta_48^unit f_to
};

// Requires P >= 600. Throws ConsistencyError if a member has no match, more
// than one match, or the pairing is not an involution.
std::vector<InvolutionEntry> involution_pairing(std::int64_t precision);

}  // namespace etaforge
