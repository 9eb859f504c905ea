#include "etaforge/etaq.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "etaforge/arith.hpp"
#include "etaforge/error.hpp"

namespace etaforge {

ExponentVector::ExponentVector(const Map& entries) {
  for (const auto& [d, e] : entries) add(d, e);
}

ExponentVector::ExponentVector(std::initializer_list<std::pair<const std::int64_t, std::int64_t>> entries) {
  for (const auto& [d, e] : entries) add(d, e);
}

void ExponentVector::add(std::int64_t d, std::int64_t e) {
  if (d < 1) throw DomainError("eta quotient base must be positive, got " + std::to_string(d));
  if (e == 0) return;
  auto [it, inserted] = entries_.try_emplace(d, e);
  if (!inserted) {
    it->second += e;
    if (it->second == 0) entries_.erase(it);
  }
}

std::int64_t ExponentVector::operator[](std::int64_t d) const {
  auto it = entries_.find(d);
  return it == entries_.end() ? 0 : it->second;
}

std::vector<std::int64_t> ExponentVector::dense(std::int64_t n) const {
  if (n < 1 || n % level(*this) != 0)
    throw DomainError("level " + std::to_string(level(*this)) + " does not divide " + std::to_string(n));
  const auto divs = divisors(n);
  std::vector<std::int64_t> out(divs.size(), 0);
  for (std::size_t i = 0; i < divs.size(); ++i) out[i] = (*this)[divs[i]];
  return out;
}

ExponentVector ExponentVector::from_dense(const std::vector<std::int64_t>& divs,
                                          const std::vector<std::int64_t>& values) {
  if (divs.size() != values.size()) throw DomainError("divisor and value lists differ in length");
  ExponentVector x;
  for (std::size_t i = 0; i < divs.size(); ++i) x.add(divs[i], values[i]);
  return x;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& o) {
  for (const auto& [d, e] : o.entries_) add(d, e);
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& o) {
  for (const auto& [d, e] : o.entries_) add(d, -e);
  return *this;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector out;
  for (const auto& [d, e] : entries_) out.entries_.emplace(d, -e);
  return out;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::int64_t read_number(std::string_view text, std::size_t& pos, bool allow_sign, const char* what) {
  const std::size_t start = pos;
  bool negative = false;
  if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::size_t digits = pos;
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  if (pos == digits) throw ParseError(std::string("expected ") + what, digits);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + digits, text.data() + pos, value);
  if (ec != std::errc()) throw ParseError(std::string(what) + " out of range", start);
  return negative ? -value : value;
}

}  // namespace

ExponentVector parse(std::string_view text) {
  ExponentVector::Map entries;
  std::size_t pos = 0;
  if (text.empty()) return {};
  while (true) {
    const std::size_t term_start = pos;
    const std::int64_t base = read_number(text, pos, false, "base");
    if (base == 0) throw ParseError("base must be positive", term_start);
    std::int64_t exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t exp_start = pos;
      exp = read_number(text, pos, true, "exponent");
      if (exp == 0) throw ParseError("zero exponent", exp_start);
    }
    if (!entries.emplace(base, exp).second) throw ParseError("duplicate base " + std::to_string(base), term_start);
    if (pos == text.size()) break;
    if (text[pos] != ' ') throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos == text.size()) throw ParseError("trailing whitespace", pos);
  }
  return ExponentVector(entries);
}

std::string format(const ExponentVector& x) {
  std::string out;
  for (const auto& [d, e] : x.entries()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(d) + "^" + std::to_string(e);
  }
  return out;
}

std::int64_t level(const ExponentVector& x) {
  std::int64_t n = 1;
  for (const auto& [d, e] : x.entries()) n = std::lcm(n, d);
  return n;
}

std::int64_t weight2(const ExponentVector& x) {
  std::int64_t s = 0;
  for (const auto& [d, e] : x.entries()) s += e;
  return s;
}

ExponentVector rescale(const ExponentVector& x, std::int64_t nu) {
  if (nu < 1) throw DomainError("rescaling factor must be positive");
  ExponentVector::Map out;
  for (const auto& [d, e] : x.entries()) out.emplace(d * nu, e);
  return ExponentVector(out);
}

std::int64_t content(const ExponentVector& x) {
  std::int64_t g = 0;
  for (const auto& [d, e] : x.entries()) g = std::gcd(g, d);
  return g;
}

bool is_primitive(const ExponentVector& x) {
  // x = h(nu z) forces nu | d for every base d.
  if (x.empty()) throw DomainError("primitivity is undefined for the constant quotient");
  return content(x) == 1;
}

ExponentVector primitive_part(const ExponentVector& x) {
  const std::int64_t g = content(x);
  if (g <= 1) return x;
  ExponentVector::Map out;
  for (const auto& [d, e] : x.entries()) out.emplace(d / g, e);
  return ExponentVector(out);
}

ExponentVector ReindexedMatrix::flatten() const {
  ExponentVector::Map out;
  for (std::size_t r = 0; r < row_divisors.size(); ++r)
    for (std::size_t c = 0; c < col_divisors.size(); ++c)
      if (at(r, c) != 0) out.emplace(row_divisors[r] * col_divisors[c], at(r, c));
  return ExponentVector(out);
}

ReindexedMatrix reindex(const ExponentVector& x, std::int64_t n, std::int64_t d) {
  if (!exactly_divides(d, n))
    throw DomainError(std::to_string(d) + " does not exactly divide " + std::to_string(n));
  if (n % level(x) != 0)
    throw DomainError("level " + std::to_string(level(x)) + " does not divide " + std::to_string(n));
  ReindexedMatrix m{divisors(n / d), divisors(d), {}};
  m.values.reserve(m.row_divisors.size() * m.col_divisors.size());
  for (std::int64_t r : m.row_divisors)
    for (std::int64_t c : m.col_divisors) m.values.push_back(x[r * c]);
  return m;
}

ExponentVector star_product(const ExponentVector& x, const ExponentVector& y) {
  if (std::gcd(level(x), level(y)) != 1)
    throw DomainError("star product needs coprime levels, got " + std::to_string(level(x)) + " and " +
                      std::to_string(level(y)));
  ExponentVector::Map out;
  // Coprime supports: every product d*d' arises from exactly one pair.
  for (const auto& [d, a] : x.entries())
    for (const auto& [dp, b] : y.entries()) out.emplace(d * dp, a * b);
  return ExponentVector(out);
}

}  // namespace etaforge
