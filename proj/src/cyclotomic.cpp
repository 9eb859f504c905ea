#include "etaforge/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "etaforge/error.hpp"

namespace etaforge {

namespace {

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division by a monic polynomial.
std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    q[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  for (long r : num)
    if (r != 0) throw ConsistencyError("cyclotomic polynomial division left a remainder");
  return q;
}

std::vector<long> compute_cyclotomic(int n) {
  // x^n - 1 = prod_{d | n} Phi_d
  std::vector<long> num(static_cast<std::size_t>(n) + 1, 0);
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  std::vector<long> den{1};
  for (std::int64_t d : divisors(n))
    if (d < n) den = poly_mul(den, cyclotomic_polynomial(static_cast<int>(d)));
  return poly_div_exact(num, den);
}

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw DomainError("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<long>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // Computed outside the lock: the recursion re-enters this function.
  auto poly = n == 1 ? std::vector<long>{-1, 1} : compute_cyclotomic(n);
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(poly)).first->second;
}

CyclotomicInt::CyclotomicInt(int order) : order_(order) {
  if (order < 1) throw DomainError("cyclotomic order must be positive");
  coeffs_.assign(static_cast<std::size_t>(totient(order)), BigInt(0));
}

CyclotomicInt::CyclotomicInt(int order, const BigInt& integer) : CyclotomicInt(order) {
  coeffs_[0] = integer;
}

CyclotomicInt::CyclotomicInt(int order, std::vector<BigInt> poly) : CyclotomicInt(order) {
  reduce(poly);
  for (std::size_t i = 0; i < coeffs_.size() && i < poly.size(); ++i) coeffs_[i] = std::move(poly[i]);
}

void CyclotomicInt::reduce(std::vector<BigInt>& poly) const {
  const auto& phi = cyclotomic_polynomial(order_);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k] == 0) continue;
    const BigInt c = poly[k];
    // x^deg = -sum_{i<deg} phi[i] x^i
    for (std::size_t i = 0; i < deg; ++i)
      if (phi[i] != 0) poly[k - deg + i] -= c * phi[i];
    poly[k] = 0;
  }
  if (poly.size() > deg) poly.resize(deg);
}

CyclotomicInt CyclotomicInt::root_of_unity(int order, long k) {
  std::vector<BigInt> poly(static_cast<std::size_t>(mod(k, order)) + 1, BigInt(0));
  poly.back() = 1;
  return CyclotomicInt(order, std::move(poly));
}

bool CyclotomicInt::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicInt::is_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

BigInt CyclotomicInt::to_integer() const {
  if (!is_integer()) throw DomainError("cyclotomic integer " + to_string() + " is not rational");
  return coeffs_[0];
}

CyclotomicInt CyclotomicInt::times_root(long k) const {
  const long shift = mod(k, order_);
  if (shift == 0) return *this;
  std::vector<BigInt> poly(coeffs_.size() + static_cast<std::size_t>(shift), BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i + static_cast<std::size_t>(shift)] = coeffs_[i];
  return CyclotomicInt(order_, std::move(poly));
}

CyclotomicInt CyclotomicInt::embed(int n) const {
  if (n < 1 || n % order_ != 0)
    throw DomainError("cannot embed Z[zeta_" + std::to_string(order_) + "] into Z[zeta_" + std::to_string(n) + "]");
  const std::size_t step = static_cast<std::size_t>(n / order_);
  std::vector<BigInt> poly((coeffs_.size() - 1) * step + 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * step] = coeffs_[i];
  return CyclotomicInt(n, std::move(poly));
}

std::optional<int> CyclotomicInt::root_index() const {
  for (int k = 0; k < order_; ++k)
    if (*this == root_of_unity(order_, k)) return k;
  return std::nullopt;
}

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

void CyclotomicInt::require_same_order(const CyclotomicInt& o) const {
  if (o.order_ != order_)
    throw DomainError("mixing Z[zeta_" + std::to_string(order_) + "] and Z[zeta_" + std::to_string(o.order_) +
                      "] requires an explicit embedding");
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  require_same_order(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
  require_same_order(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& o) {
  require_same_order(o);
  if (coeffs_.size() == 1) {
    coeffs_[0] *= o.coeffs_[0];
    return *this;
  }
  std::vector<BigInt> poly(2 * coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      if (o.coeffs_[j] != 0) poly[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  reduce(poly);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = std::move(poly[i]);
  return *this;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
  return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

std::string CyclotomicInt::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const BigInt& c = coeffs_[i];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z";
    if (i > 1) os << "^" << i;
  }
  return first ? "0" : os.str();
}

}  // namespace etaforge
