#include "etaforge/series.hpp"

#include <algorithm>
#include <numeric>

#include "etaforge/error.hpp"
#include "etaforge/zagier.hpp"

namespace etaforge {

namespace {

CyclotomicInt one_in(int order) { return CyclotomicInt(order, BigInt(1)); }

void require_precision(std::int64_t p) {
  if (p < 1) throw DomainError("precision must be positive, got " + std::to_string(p));
}

std::string coefficient_text(const CyclotomicInt& c, bool bare_unit) {
  if (c.is_integer()) {
    BigInt v = abs(c.to_integer());
    if (bare_unit && v == 1) return "";
    return v.get_str();
  }
  return "(" + c.to_string() + ")";
}

std::string power_text(std::int64_t m) {
  if (m == 0) return "1";
  if (m == 24) return "q";
  const std::string e = q_exponent(m);
  if (m % 24 == 0 && m > 0) return "q^" + e;
  return "q^{" + e + "}";
}

}  // namespace

std::string q_exponent(std::int64_t m) {
  const std::int64_t g = std::gcd(m < 0 ? -m : m, std::int64_t{24});
  const std::int64_t num = m / (g == 0 ? 1 : g), den = 24 / (g == 0 ? 24 : g);
  if (m == 0) return "0";
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

PuiseuxSeries::PuiseuxSeries(int ring_order, std::int64_t e0, std::vector<CyclotomicInt> coeffs)
    : order_(ring_order), e0_(e0), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c.order() != order_) throw DomainError("coefficient ring order mismatch");
  normalize();
}

PuiseuxSeries PuiseuxSeries::zero(int ring_order, std::int64_t horizon) { return PuiseuxSeries(ring_order, horizon, {}); }

PuiseuxSeries PuiseuxSeries::one(int ring_order, std::int64_t precision) {
  require_precision(precision);
  std::vector<CyclotomicInt> c(static_cast<std::size_t>(precision), CyclotomicInt(ring_order));
  c[0] = one_in(ring_order);
  return PuiseuxSeries(ring_order, 0, std::move(c));
}

PuiseuxSeries PuiseuxSeries::from_integers(std::int64_t e0, const std::vector<BigInt>& coeffs) {
  std::vector<CyclotomicInt> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.emplace_back(1, v);
  return PuiseuxSeries(1, e0, std::move(c));
}

void PuiseuxSeries::normalize() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == 0) return;
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
  e0_ += static_cast<std::int64_t>(lead);
}

CyclotomicInt PuiseuxSeries::coefficient(std::int64_t m) const {
  if (m >= horizon()) throw DomainError("exponent " + std::to_string(m) + " is beyond the precision horizon");
  if (m < e0_) return CyclotomicInt(order_);
  return coeffs_[static_cast<std::size_t>(m - e0_)];
}

std::vector<std::int64_t> PuiseuxSeries::support() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) out.push_back(e0_ + static_cast<std::int64_t>(i));
  return out;
}

PuiseuxSeries PuiseuxSeries::embed(int n) const {
  std::vector<CyclotomicInt> c;
  c.reserve(coeffs_.size());
  for (const auto& v : coeffs_) c.push_back(v.embed(n));
  return PuiseuxSeries(n, e0_, std::move(c));
}

PuiseuxSeries PuiseuxSeries::scaled(const CyclotomicInt& c, std::int64_t k) const {
  std::vector<CyclotomicInt> out;
  out.reserve(coeffs_.size());
  for (const auto& v : coeffs_) out.push_back(v.is_zero() ? v : v * c);
  const std::int64_t h = horizon() + k;
  PuiseuxSeries s(c.order(), e0_ + k, std::move(out));
  if (s.is_zero()) s.e0_ = h;
  return s;
}

PuiseuxSeries PuiseuxSeries::truncated(std::int64_t h) const {
  if (h > horizon()) throw DomainError("cannot extend a series beyond its horizon");
  if (h <= e0_) return zero(order_, h);
  return PuiseuxSeries(order_, e0_, std::vector<CyclotomicInt>(coeffs_.begin(), coeffs_.begin() + (h - e0_)));
}

namespace {

PuiseuxSeries add(const PuiseuxSeries& a, const PuiseuxSeries& b, bool subtract) {
  if (a.ring_order() != b.ring_order()) throw DomainError("series over different coefficient rings");
  const int n = a.ring_order();
  const std::int64_t h = std::min(a.horizon(), b.horizon());
  const std::int64_t e0 = std::min(a.leading_exponent(), b.leading_exponent());
  if (h <= e0) return PuiseuxSeries::zero(n, h);
  std::vector<CyclotomicInt> c(static_cast<std::size_t>(h - e0), CyclotomicInt(n));
  for (std::int64_t m = e0; m < h; ++m) {
    auto& slot = c[static_cast<std::size_t>(m - e0)];
    slot = a.coefficient(m);
    if (subtract)
      slot -= b.coefficient(m);
    else
      slot += b.coefficient(m);
  }
  PuiseuxSeries out(n, e0, std::move(c));
  return out.is_zero() ? PuiseuxSeries::zero(n, h) : out;
}

}  // namespace

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b, false); }
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return add(a, b, true); }

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.order_ != b.order_) throw DomainError("series over different coefficient rings");
  const std::int64_t h = std::min(a.horizon() + b.e0_, b.horizon() + a.e0_);
  const std::int64_t e0 = a.e0_ + b.e0_;
  if (a.is_zero() || b.is_zero() || h <= e0) return PuiseuxSeries::zero(a.order_, h);
  const std::size_t len = static_cast<std::size_t>(h - e0);
  std::vector<CyclotomicInt> c(len, CyclotomicInt(a.order_));
  for (std::size_t i = 0; i < len && i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < len && j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  PuiseuxSeries out(a.order_, e0, std::move(c));
  return out.is_zero() ? PuiseuxSeries::zero(a.order_, h) : out;
}

bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  return a.order_ == b.order_ && a.e0_ == b.e0_ && a.coeffs_ == b.coeffs_;
}

std::string PuiseuxSeries::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    const std::int64_t m = e0_ + static_cast<std::int64_t>(i);
    const bool negative = c.is_integer() && c.to_integer() < 0;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const std::string coef = coefficient_text(c, m != 0);
    out += coef;
    if (m != 0) out += power_text(m);
  }
  out += out.empty() ? "O(" : " + O(";
  out += power_text(horizon()) + ")";
  return out;
}

PuiseuxSeries eta_series(std::int64_t precision) {
  require_precision(precision);
  std::vector<BigInt> c(static_cast<std::size_t>(precision), BigInt(0));
  // (-1)^k at exponent 24 k(3k-1)/2, k = 0, 1, -1, 2, -2, ...
  c[0] = 1;
  for (std::int64_t k = 1; 12 * k * (3 * k - 1) < precision; ++k) {
    const int sign = k % 2 == 0 ? 1 : -1;
    c[static_cast<std::size_t>(12 * k * (3 * k - 1))] = sign;
    if (12 * k * (3 * k + 1) < precision) c[static_cast<std::size_t>(12 * k * (3 * k + 1))] = sign;
  }
  return PuiseuxSeries::from_integers(1, c);
}

PuiseuxSeries eta_series_by_product(std::int64_t precision) {
  require_precision(precision);
  const std::size_t terms = static_cast<std::size_t>((precision + 23) / 24);
  std::vector<BigInt> a(terms, BigInt(0));
  a[0] = 1;
  for (std::size_t n = 1; n < terms; ++n)
    for (std::size_t m = terms - 1; m >= n; --m) a[m] -= a[m - n];
  std::vector<BigInt> c(static_cast<std::size_t>(precision), BigInt(0));
  for (std::size_t j = 0; j < terms; ++j) c[24 * j] = a[j];
  return PuiseuxSeries::from_integers(1, c);
}

PuiseuxSeries quotient_series(const ExponentVector& x, std::int64_t precision) {
  require_precision(precision);
  std::int64_t e0 = 0;
  for (const auto& [d, e] : x.entries()) e0 += d * e;
  // Work in powers of q: the expansion lives on e0 + 24 Z.
  const std::int64_t terms = (precision + 23) / 24;
  std::vector<BigInt> a(static_cast<std::size_t>(terms), BigInt(0));
  a[0] = 1;
  for (const auto& [d, e] : x.entries()) {
    for (std::int64_t k = d; k < terms; k += d) {
      const std::size_t ks = static_cast<std::size_t>(k);
      for (std::int64_t rep = 0; rep < (e < 0 ? -e : e); ++rep) {
        if (e > 0) {
          // times (1 - q^k)
          for (std::size_t m = static_cast<std::size_t>(terms) - 1; m >= ks; --m) a[m] -= a[m - ks];
        } else {
          // divided by (1 - q^k): 1 + q^k + q^2k + ...
          for (std::size_t m = ks; m < static_cast<std::size_t>(terms); ++m) a[m] += a[m - ks];
        }
      }
    }
  }
  std::vector<BigInt> c(static_cast<std::size_t>(precision), BigInt(0));
  for (std::int64_t j = 0; j < terms; ++j) c[static_cast<std::size_t>(24 * j)] = a[static_cast<std::size_t>(j)];
  return PuiseuxSeries::from_integers(e0, c);
}

namespace {

constexpr int kJtpRing = 24;

long mod_ring(long k) { return ((k % kJtpRing) + kJtpRing) % kJtpRing; }

// Multiplies s in place by (1 + zeta^unit u^k), k > 0, within its length.
void times_binomial(std::vector<CyclotomicInt>& s, long unit, std::int64_t k) {
  const std::size_t len = s.size();
  if (k <= 0 || static_cast<std::size_t>(k) >= len) return;
  const std::size_t ks = static_cast<std::size_t>(k);
  for (std::size_t m = len - 1; m >= ks; --m)
    if (!s[m - ks].is_zero()) s[m] += s[m - ks].times_root(unit);
}

}  // namespace

JtpCell jtp_cell(JtpSubstitution x, JtpSubstitution y, std::int64_t precision) {
  require_precision(precision);
  if (x.exponent <= 0) throw DomainError("x must have positive exponent for the product to converge");
  const long ux = 2L * x.unit, uy = 2L * y.unit;  // zeta_12 -> zeta_24^2
  std::vector<CyclotomicInt> s(static_cast<std::size_t>(precision), CyclotomicInt(kJtpRing));
  s[0] = one_in(kJtpRing);
  CyclotomicInt scalar = one_in(kJtpRing);
  std::int64_t shift = 0;

  auto factor = [&](long unit, std::int64_t k) {
    unit = mod_ring(unit);
    if (k > 0) {
      times_binomial(s, unit, k);
    } else if (k == 0) {
      scalar *= one_in(kJtpRing) + CyclotomicInt::root_of_unity(kJtpRing, unit);
    } else {
      // 1 + c u^k = c u^k (1 + c^-1 u^-k)
      scalar = scalar.times_root(unit);
      shift += k;
      times_binomial(s, mod_ring(-unit), -k);
    }
  };
  for (std::int64_t n = 1;; ++n) {
    const std::int64_t e_even = 2 * n * x.exponent;
    const std::int64_t e_odd = (2 * n - 1) * x.exponent;
    if (e_even >= precision && e_odd - std::abs(y.exponent) >= precision) break;
    factor(2 * n * ux + kJtpRing / 2, e_even);  // 1 - x^{2n}
    factor((2 * n - 1) * ux + uy, e_odd + y.exponent);
    factor((2 * n - 1) * ux - uy, e_odd - y.exponent);
  }
  const PuiseuxSeries lhs = scalar.is_zero()
                                ? PuiseuxSeries::zero(kJtpRing, shift + precision)
                                : PuiseuxSeries(kJtpRing, 0, std::move(s)).scaled(scalar, shift);

  // sum over n of x^{n^2} y^n below the same horizon
  const std::int64_t h = lhs.horizon();
  std::int64_t reach = 0;
  while (x.exponent * reach * reach - std::abs(y.exponent) * reach < h) ++reach;
  std::int64_t lo = h;
  for (std::int64_t n = -reach; n <= reach; ++n) lo = std::min(lo, x.exponent * n * n + y.exponent * n);
  std::vector<CyclotomicInt> r(static_cast<std::size_t>(std::max<std::int64_t>(0, h - lo)), CyclotomicInt(kJtpRing));
  for (std::int64_t n = -reach; n <= reach; ++n) {
    const std::int64_t m = x.exponent * n * n + y.exponent * n;
    if (m >= h) continue;
    r[static_cast<std::size_t>(m - lo)] += CyclotomicInt::root_of_unity(kJtpRing, mod_ring(ux * n * n + uy * n));
  }
  PuiseuxSeries rhs(kJtpRing, lo, std::move(r));
  if (rhs.is_zero()) rhs = PuiseuxSeries::zero(kJtpRing, h);

  JtpCell cell{lhs, rhs, 0, 0};
  if (lhs.is_zero() && rhs.is_zero()) return cell;
  if (lhs.is_zero() != rhs.is_zero()) throw ConsistencyError("triple product: one side vanishes and the other does not");
  cell.shift = lhs.leading_exponent() - rhs.leading_exponent();
  for (int k = 0; k < kJtpRing; ++k) {
    if (rhs.coefficients()[0].times_root(k) != lhs.coefficients()[0]) continue;
    const PuiseuxSeries moved = rhs.scaled(CyclotomicInt::root_of_unity(kJtpRing, k), cell.shift);
    const std::int64_t common = std::min(moved.horizon(), lhs.horizon());
    if (moved.truncated(common) == lhs.truncated(common)) {
      cell.unit = k;
      return cell;
    }
  }
  throw ConsistencyError("triple product sides differ by more than a 24th root of unity and a shift");
}

const std::array<JtpTableEntry, 14>& jtp_table() {
  // units are powers of zeta_12: i = 3, -1 = 6, -i = 9, omega = 4, i omega = 7, -omega = 10
  static const std::array<JtpTableEntry, 14> cells{{
      {{0, 12}, {0, 12}, ExponentVector{{1, -1}, {2, 2}}},
      {{0, 12}, {4, 12}, ExponentVector{{1, 2}, {2, -1}, {3, -1}, {6, 1}}},
      {{3, 12}, {3, 12}, ExponentVector{{1, 1}, {2, -1}, {4, 1}}},
      {{3, 12}, {7, 12}, ExponentVector{{1, -2}, {2, 5}, {3, 1}, {4, -2}, {6, -2}, {12, 1}}},
      {{0, 24}, {6, 48}, ExponentVector{{1, 2}, {2, -1}}},
      {{0, 24}, {10, 48}, ExponentVector{{1, -1}, {2, 2}, {3, 1}, {6, -1}}},
      {{6, 24}, {6, 48}, ExponentVector{{1, -2}, {2, 5}, {4, -2}}},
      {{6, 24}, {10, 48}, ExponentVector{{1, 1}, {2, -1}, {3, -1}, {4, 1}, {6, 2}, {12, -1}}},
      {{0, 36}, {0, 12}, ExponentVector{{1, -1}, {2, 1}, {3, 2}, {6, -1}}},
      {{0, 36}, {6, 12}, ExponentVector{{1, 1}}},
      {{3, 36}, {3, 12}, ExponentVector{{1, -1}, {2, 3}, {4, -1}}},
      {{3, 36}, {9, 12}, ExponentVector{{1, 1}, {2, -2}, {3, -2}, {4, 1}, {6, 5}, {12, -2}}},
      {{0, 72}, {6, 48}, ExponentVector{{1, 1}, {2, -1}, {3, -1}, {6, 2}}},
      {{6, 72}, {6, 48}, ExponentVector{{1, -1}, {2, 2}, {3, 1}, {4, -1}, {6, -1}, {12, 1}}},
  }};
  return cells;
}

JtpTableCheck check_jtp_table_cell(const JtpTableEntry& entry, std::int64_t precision) {
  JtpTableCheck out{jtp_cell(entry.x, entry.y, precision), std::nullopt, 0};
  const PuiseuxSeries& lhs = out.cell.lhs;
  if (lhs.is_zero()) return out;
  const PuiseuxSeries f = quotient_series(entry.quotient, precision).embed(kJtpRing);
  // f has leading coefficient 1, so the scalar is the leading coefficient of lhs.
  const CyclotomicInt c = lhs.coefficients()[0];
  const std::int64_t shift = lhs.leading_exponent() - f.leading_exponent();
  const PuiseuxSeries moved = f.scaled(c, shift);
  const std::int64_t common = std::min(moved.horizon(), lhs.horizon());
  if (moved.truncated(common) == lhs.truncated(common)) {
    out.scalar = c;
    out.shift = shift;
  }
  return out;
}

ThetaSupport theta_extract(const ExponentVector& x, std::int64_t precision) {
  const PuiseuxSeries s = quotient_series(x, precision);
  const auto support = s.support();
  if (support.size() < 10)
    throw DomainError("only " + std::to_string(support.size()) + " support points below the horizon; raise the precision");
  auto square_root = [](std::int64_t v) -> std::optional<std::int64_t> {
    if (v < 0) return std::nullopt;
    BigInt z(static_cast<long>(v));
    if (!mpz_perfect_square_p(z.get_mpz_t())) return std::nullopt;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
    return r.get_si();
  };
  for (std::int64_t t : {24, 12, 8, 6, 4, 3, 2, 1}) {
    ThetaSupport out{t, {}};
    bool fits = true;
    for (std::int64_t m : support) {
      const auto n = m % t == 0 ? square_root(m / t) : std::nullopt;
      if (!n) {
        fits = false;
        break;
      }
      out.coefficients[*n] = s.coefficient(m).to_integer();
    }
    if (fits) return out;
  }
  throw ConsistencyError("expansion of " + format(x) + " has support off every t n^2 grid with t | 24");
}

PuiseuxSeries sign_transform(const PuiseuxSeries& s) {
  const int n = std::lcm(s.ring_order(), 48);
  const int step = n / 48;  // zeta_48 = zeta_n^step
  std::vector<CyclotomicInt> c;
  c.reserve(s.coefficients().size());
  for (std::size_t i = 0; i < s.coefficients().size(); ++i) {
    const std::int64_t m = s.leading_exponent() + static_cast<std::int64_t>(i);
    const long k = static_cast<long>(((m % 48) + 48) % 48) * step;
    c.push_back(s.coefficients()[i].embed(n).times_root(k));
  }
  if (s.is_zero()) return PuiseuxSeries::zero(n, s.horizon());
  return PuiseuxSeries(n, s.leading_exponent(), std::move(c));
}

std::vector<InvolutionEntry> involution_pairing(std::int64_t precision) {
  if (precision < 600) throw DomainError("involution_pairing needs precision >= 600");
  const auto& list = zagier_list();
  std::vector<PuiseuxSeries> plain, transformed;
  for (const auto& x : list) {
    plain.push_back(quotient_series(x, precision).embed(48));
    transformed.push_back(sign_transform(quotient_series(x, precision)));
  }
  std::vector<InvolutionEntry> out;
  for (std::size_t f = 0; f < list.size(); ++f) {
    std::vector<InvolutionEntry> matches;
    const auto& sf = transformed[f];
    for (std::size_t g = 0; g < list.size(); ++g) {
      if (plain[g].leading_exponent() != sf.leading_exponent()) continue;
      const auto k = sf.coefficients()[0].root_index();
      if (!k) continue;
      if (plain[g].scaled(CyclotomicInt::root_of_unity(48, *k), 0) == sf)
        matches.push_back({static_cast<int>(f + 1), static_cast<int>(g + 1), *k});
    }
    if (matches.size() != 1)
      throw ConsistencyError("sign transform of list member " + std::to_string(f + 1) + " matches " +
                             std::to_string(matches.size()) + " members");
    out.push_back(matches[0]);
  }
  for (const auto& e : out) {
    const auto& back = out[static_cast<std::size_t>(e.to - 1)];
    if (back.to != e.from) throw ConsistencyError("sign transform pairing is not an involution");
    // Applying the transform twice multiplies u^m by zeta_24^m.
    const std::int64_t e0 = plain[static_cast<std::size_t>(e.from - 1)].leading_exponent();
    if ((e.unit + back.unit) % 48 != ((2 * e0) % 48 + 48) % 48)
      throw ConsistencyError("sign transform units are inconsistent for member " + std::to_string(e.from));
  }
  return out;
}

}  // namespace etaforge
