// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "etaforge/arith.hpp"
#include "etaforge/enumerate.hpp"
#include "etaforge/orders.hpp"
#include "etaforge/phimap.hpp"
#include "etaforge/series.hpp"
#include "etaforge/zagier.hpp"
#include "support/random_weights.hpp"

using namespace etaforge;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

// Every holomorphic quotient produced along the way, with its level; the
// valence criterion runs over all of them.
std::vector<std::pair<ExponentVector, std::int64_t>> produced;

std::vector<ExponentVector> enumerate_recorded(std::int64_t n, std::int64_t k2) {
  auto out = enumerate_holomorphic(n, k2);
  for (const auto& x : out) produced.emplace_back(x, n);
  return out;
}

bool is_eta_rescaling(const ExponentVector& x) {
  return x.size() == 1 && x.entries().begin()->second == 1;
}

template <typename... Args>
std::string str(Args&&... args) {
  std::ostringstream ss;
  (ss << ... << args);
  return ss.str();
}

Verdict zagier_completeness() {
  const auto r = verify_zagier(72);
  for (const auto& q : r.quotients) produced.emplace_back(q.exponents, 72);
  std::set<int> members;
  for (const auto& q : r.quotients)
    if (q.primitive && q.zagier && q.zagier->nu == 1 && q.exponents == zagier_list()[q.zagier->index - 1])
      members.insert(q.zagier->index);
  const bool pass = r.total == 88 && r.primitive == 14 && r.violations == 0 && members.size() == 14;
  return {pass, str("total=", r.total, " primitive=", r.primitive, " violations=", r.violations,
                    " list members matched=", members.size())};
}

Verdict prime_power_uniqueness() {
  std::string bad;
  for (std::int64_t n : {3, 5, 7, 9, 25, 27, 49, 121}) {
    std::size_t exact = 0;
    for (const auto& x : enumerate_recorded(n, 1)) {
      if (!is_eta_rescaling(x)) bad += " " + format(x) + "@" + std::to_string(n);
      if (level(x) == n) exact += x == ExponentVector{{n, 1}} ? 1 : 100;
    }
    if (exact != 1) bad += " level " + std::to_string(n) + " exact count wrong";
  }
  return {bad.empty(), bad.empty() ? "only rescalings of eta; eta_N unique of level N" : "counterexamples:" + bad};
}

Verdict level8_gap() {
  std::size_t checked = 0;
  std::string bad;
  for (std::int64_t k2 = 1; k2 <= 4; ++k2) {
    for (const auto& x : enumerate_recorded(8, k2)) {
      if (level(x) != 8) continue;
      ++checked;
      if (is_simple(x)) bad += " " + format(x);
    }
  }
  const std::string found = bad.empty() ? ", none simple" : "; simple:" + bad;
  return {bad.empty(), str(checked, " quotients of level 8 with weight <= 2 checked", found)};
}

Verdict power_of_two_slices() {
  std::size_t checked = 0;
  std::string bad;
  std::set<ExponentVector> level4;
  for (const auto& x : enumerate_recorded(4, 1)) level4.insert(x);
  for (int e = 3; e <= 6; ++e) {
    const std::int64_t n = std::int64_t{1} << e;
    for (std::int64_t k2 = 1; k2 <= 4; ++k2) {
      for (const auto& x : enumerate_recorded(n, k2)) {
        ++checked;
        const std::int64_t a = std::abs(x[1]), b = std::abs(x[n]);
        if (a + b > 2 * k2) bad += " inequality:" + format(x);
        if (a + b == 2 * k2 && (a % 2 != 0 || b % 2 != 0)) bad += " parity:" + format(x);
        if (k2 == 1 && !level4.count(primitive_part(x))) bad += " not from level 4:" + format(x);
      }
    }
  }
  return {bad.empty(), str(checked, " quotients on 8, 16, 32, 64 with weight <= 2", bad)};
}

Verdict levels_144_216() {
  std::string detail, bad;
  for (std::int64_t n : {144, 216}) {
    const auto all = enumerate_recorded(n, 1);
    detail += str(" N=", n, ": ", all.size(), " quotients");
    for (const auto& x : all) {
      if (!is_primitive(x)) continue;
      const std::int64_t l = level(x);
      if (l == n || valuation(l, 2) >= 4 || valuation(l, 3) >= 3) bad += " " + format(x);
    }
  }
  return {bad.empty(), (bad.empty() ? "no primitive quotient of level 2^m 3^n with m >= 4 or n >= 3;" : "found:" + bad) +
                           detail};
}

Verdict phi_properties() {
  std::mt19937_64 rng(20151110);
  std::size_t vectors = 0, strict = 0, applications = 0, violations = 0;
  std::string first;
  for (std::int64_t m : {4, 6, 8, 12, 24, 36, 72}) {
    const auto corpus = enumerate_recorded(m, 1);
    std::vector<std::int64_t> targets;
    for (std::int64_t n : divisors(m))
      if (std::gcd(n, m / n) == 1) targets.push_back(n);
    for (int round = 0; round < 12; ++round) {
      for (std::int64_t n : targets) {
        const PhiWeights w = testing::random_admissible_weights(m, n, rng);
        ++vectors;
        if (w.strict()) ++strict;
        for (const auto& x : corpus) {
          ++applications;
          const ExponentVector y = apply_phi(x, w);
          const bool ok = is_holomorphic(y, n) && !(w.strict() && y.empty());
          if (ok) {
            produced.emplace_back(y, n);
          } else {
            ++violations;
            if (first.empty()) first = str(" e.g. ", format(x), " on ", m, " -> ", format(y), " on ", n);
          }
        }
      }
    }
  }
  return {violations == 0 && vectors >= 200,
          str(vectors, " random admissible weight vectors (", strict, " strict), ", applications, " applications, ", violations, " violations",
              first)};
}

Verdict matrix_identities() {
  std::string bad;
  for (std::int64_t n = 1; n <= 1000 && bad.empty(); ++n) {
    const auto a = sym_order_matrix(n);
    const auto& divs = a.divisors();
    const std::size_t len = divs.size();
    if (!(a == sym_order_matrix_kronecker(n))) bad = str(" multiplicative != direct at N=", n);
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t j = 0; j < len; ++j) {
        if (a(i, j) != a(j, i)) bad = str(" not symmetric at N=", n);
        // 24 gcd(t, N/t) ord_{1/t}(eta_d) must be an integer and match.
        const Rational direct =
            Rational(24L * std::gcd(divs[i], n / divs[i])) * order_eta_d(divs[j], divs[i], n);
        if (direct.get_den() != 1 || direct != Rational(static_cast<long>(a(i, j)))) bad = str(" entry mismatch at N=", n);
      }
    }
    const auto inv = sym_order_matrix_inverse(n);
    for (std::size_t i = 0; i < len && bad.empty(); ++i) {
      for (std::size_t j = 0; j < len; ++j) {
        Rational acc = 0;
        for (std::size_t k = 0; k < len; ++k)
          if (a(i, k) != 0 && inv(k, j) != 0) acc += Rational(static_cast<long>(a(i, k))) * inv(k, j);
        if (acc != (i == j ? 1 : 0)) {
          bad = str(" A-hat * inverse != I at N=", n);
          break;
        }
      }
    }
  }
  return {bad.empty(), bad.empty() ? "symmetric, integral, multiplicative = direct, exact inverse for N <= 1000" : bad};
}

Verdict valence_everywhere() {
  std::size_t failures = 0;
  std::string first;
  for (const auto& [x, n] : produced) {
    if (is_holomorphic(x, n) && valence_check(x, n)) continue;
    ++failures;
    if (first.empty()) first = str(" e.g. ", format(x), " on ", n);
  }
  return {failures == 0 && !produced.empty(),
          str(produced.size(), " holomorphic quotients from criteria 1-6, ", failures, " failures", first)};
}

Verdict series_oracles() {
  std::string bad;
  if (!(eta_series(2400) == eta_series_by_product(2400))) bad += " pentagonal != product at P=2400;";
  const auto z = [](long k) { return CyclotomicInt::root_of_unity(24, k); };
  const std::array<std::pair<CyclotomicInt, std::int64_t>, 14> recorded{{
      {CyclotomicInt(24, BigInt(2)), -3}, {z(0) - z(4), -3}, {CyclotomicInt(24, BigInt(2)), -3}, {z(0) - z(4), -3},
      {-z(0), -24}, {z(4), -24}, {z(0), -24}, {-z(4), -24},
      {z(0), -1}, {z(0), -1}, {z(0), -1}, {z(0), -1},
      {z(0), -8}, {z(0), -8},
  }};
  for (std::size_t i = 0; i < 14; ++i) {
    try {
      const auto c = check_jtp_table_cell(jtp_table()[i], 1200);
      if (c.cell.unit != 0 || c.cell.shift != 0) bad += str(" cell ", i + 1, " sides differ by a unit;");
      if (!c.scalar || !(*c.scalar == recorded[i].first) || c.shift != recorded[i].second)
        bad += str(" cell ", i + 1, " does not match its quotient;");
    } catch (const Error& e) {
      bad += str(" cell ", i + 1, ": ", e.what(), ";");
    }
  }
  std::string ts;
  for (const auto& x : zagier_list()) {
    try {
      const auto th = theta_extract(x, 2400);
      if (24 % th.t != 0 || th.coefficients.size() < 10) bad += " theta grid for " + format(x) + ";";
      ts += str(ts.empty() ? "" : " ", th.t);
    } catch (const Error& e) {
      bad += str(" theta ", format(x), ": ", e.what(), ";");
    }
  }
  return {bad.empty(), bad.empty() ? "eta at P=2400 exact; 14/14 cells at P=1200; theta t = " + ts : bad};
}

Verdict involution() {
  const std::array<std::pair<int, int>, 14> golden{{
      {4, 1}, {5, 0}, {6, 3}, {1, 1}, {2, 0}, {3, 3}, {11, 8},
      {12, 3}, {13, 0}, {14, 1}, {7, 8}, {8, 3}, {9, 0}, {10, 1},
  }};
  try {
    const auto pairs = involution_pairing(600);
    bool pass = pairs.size() == 14;
    std::set<int> image;
    for (std::size_t i = 0; pass && i < 14; ++i) {
      pass = pairs[i].from == static_cast<int>(i + 1) && pairs[i].to == golden[i].first && pairs[i].unit == golden[i].second &&
             pairs[static_cast<std::size_t>(pairs[i].to - 1)].to == pairs[i].from;
      image.insert(pairs[i].to);
    }
    pass = pass && image.size() == 14;
    return {pass, pass ? "involution without fixed points, matches the frozen table" : "pairing differs from the frozen table"};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

Verdict distinctness() {
  const auto all = enumerate_holomorphic(72, 1);
  std::set<std::map<std::int64_t, Rational>> orders;
  for (const auto& x : all) orders.insert(order_map(x, 72));
  auto classes = [&](std::int64_t p) {
    std::set<std::pair<std::int64_t, std::vector<BigInt>>> seen;
    for (const auto& x : all) {
      const auto s = quotient_series(x, p);
      std::vector<BigInt> c;
      for (const auto& v : s.coefficients()) c.push_back(v.to_integer());
      seen.insert({s.leading_exponent(), c});
    }
    return seen.size();
  };
  const std::size_t at200 = classes(200);
  std::string detail = str("order vectors ", orders.size(), "/", all.size(), " distinct; series at P=200 ", at200, "/",
                           all.size(), " distinct");
  if (at200 != all.size()) {
    std::int64_t lo = 200, hi = 400;
    while (classes(hi) != all.size()) lo = hi, hi *= 2;
    while (hi - lo > 1) {
      const std::int64_t mid = (lo + hi) / 2;
      (classes(mid) == all.size() ? hi : lo) = mid;
    }
    detail += str(" (all separate first at P=", hi, ")");
  }
  return {all.size() == 88 && orders.size() == 88 && at200 == 88, detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0: no stated limit
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "zagier completeness", 60, zagier_completeness},
      {2, "prime-power uniqueness", 5, prime_power_uniqueness},
      {3, "level-8 gap", 10, level8_gap},
      {4, "power-of-two slices", 0, power_of_two_slices},
      {5, "levels 144 and 216", 300, levels_144_216},
      {6, "phi-map properties", 0, phi_properties},
      {7, "matrix identities", 30, matrix_identities},
      {8, "valence identity", 0, valence_everywhere},
      {9, "series oracles", 0, series_oracles},
      {10, "sign-transform involution", 0, involution},
      {11, "distinctness", 0, distinctness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[64];
    if (c.budget_seconds > 0)
      std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.budget_seconds);
    else
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    if (c.budget_seconds > 0 && secs > c.budget_seconds) v.pass = false;
    if (!v.pass) ++failed;
    std::printf("%s %d %s: %s [%s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), timing);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
