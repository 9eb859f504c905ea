#include <random>

#include "doctest.h"
#include "etaforge/arith.hpp"
#include "etaforge/error.hpp"
#include "etaforge/etaq.hpp"

using namespace etaforge;

namespace {

ExponentVector random_vector(std::mt19937_64& rng, std::int64_t n) {
  std::uniform_int_distribution<std::int64_t> exp(-4, 4);
  ExponentVector::Map m;
  for (std::int64_t d : divisors(n)) m[d] = exp(rng);
  return ExponentVector(m);
}

}  // namespace

TEST_CASE("parse") {
  CHECK(parse("1^2 2^-1") == ExponentVector{{1, 2}, {2, -1}});
  CHECK(parse("2^5 1^-2 4^-2") == ExponentVector{{1, -2}, {2, 5}, {4, -2}});
  CHECK(parse("").empty());
  CHECK(parse("3") == ExponentVector{{3, 1}});
  CHECK(parse("1^+2   2^-1") == ExponentVector{{1, 2}, {2, -1}});
}

TEST_CASE("parse errors report the position") {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    FAIL("expected a parse error for '" << text << "'");
    return 0;
  };
  CHECK(position_of("1^2 1^3") == 4);   // duplicate base
  CHECK(position_of("1^0") == 2);       // zero exponent
  CHECK(position_of("0^1") == 0);       // base must be positive
  CHECK(position_of("1^2,2") == 3);
  CHECK(position_of("1^") == 2);
  CHECK(position_of(" 1") == 0);
  CHECK(position_of("1^2 ") == 4);
  CHECK(position_of("-1^2") == 0);
  CHECK_THROWS_AS(parse("1^99999999999999999999"), ParseError);
}

TEST_CASE("format is canonical and parse inverts it") {
  CHECK(format(ExponentVector{{2, 5}, {1, -2}, {4, -2}}) == "1^-2 2^5 4^-2");
  CHECK(format(ExponentVector{{1, 1}}) == "1^1");
  CHECK(format(ExponentVector{}).empty());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto x = random_vector(rng, 72);
    CHECK(parse(format(x)) == x);
  }
}

TEST_CASE("level and weight") {
  CHECK(level(ExponentVector{{1, 2}, {2, -1}}) == 2);
  CHECK(level(ExponentVector{}) == 1);
  CHECK(level(ExponentVector{{2, 2}, {3, 1}, {12, 1}, {1, -1}, {4, -1}, {6, -1}}) == 12);
  CHECK(weight2(ExponentVector{{1, 1}}) == 1);
  CHECK(weight2(ExponentVector{{1, 2}, {2, -1}}) == 1);
  CHECK(weight2(ExponentVector{}) == 0);
  CHECK(ExponentVector{{1, 0}, {2, 3}}.size() == 1);
}

TEST_CASE("rescale") {
  CHECK(rescale(ExponentVector{{1, 1}}, 6) == ExponentVector{{6, 1}});
  CHECK(rescale(ExponentVector{{1, 2}, {2, -1}}, 3) == ExponentVector{{3, 2}, {6, -1}});
  CHECK(rescale(ExponentVector{}, 5).empty());
  CHECK_THROWS_AS(rescale(ExponentVector{{1, 1}}, 0), DomainError);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto x = random_vector(rng, 12);
    const std::int64_t a = 1 + i % 5, b = 1 + i % 7;
    CHECK(rescale(rescale(x, a), b) == rescale(x, a * b));
    CHECK(weight2(rescale(x, a)) == weight2(x));
    CHECK(level(rescale(x, a)) == level(x) * a);
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(ExponentVector{{1, 2}, {2, -1}}));
  CHECK_FALSE(is_primitive(ExponentVector{{3, 2}, {6, -1}}));
  CHECK(is_primitive(ExponentVector{{2, 1}, {3, 1}}));
  CHECK_THROWS_AS(is_primitive(ExponentVector{}), DomainError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto x = random_vector(rng, 36);
    if (x.empty()) continue;
    for (std::int64_t nu = 2; nu <= 5; ++nu) CHECK_FALSE(is_primitive(rescale(x, nu)));
    // unique factorization x = rescale(P, g), P primitive
    const auto p = primitive_part(x);
    CHECK(is_primitive(p));
    CHECK(rescale(p, content(x)) == x);
  }
}

TEST_CASE("reindex") {
  const ExponentVector x{{1, -1}, {2, 1}, {3, 2}, {6, -1}};
  const auto m = reindex(x, 6, 3);
  CHECK(m.row_divisors == std::vector<std::int64_t>{1, 2});
  CHECK(m.col_divisors == std::vector<std::int64_t>{1, 3});
  CHECK(m.values == std::vector<std::int64_t>{-1, 2, 1, -1});

  const auto zero = reindex(ExponentVector{}, 6, 3);
  CHECK(zero.values == std::vector<std::int64_t>{0, 0, 0, 0});

  const auto single = reindex(ExponentVector{{4, 1}}, 4, 4);
  CHECK(single.row_divisors == std::vector<std::int64_t>{1});
  CHECK(single.values == std::vector<std::int64_t>{0, 0, 1});

  CHECK_THROWS_AS(reindex(x, 12, 2), DomainError);   // 2 is not an exact divisor of 12
  CHECK_THROWS_AS(reindex(x, 10, 2), DomainError);   // level 6 does not divide 10

  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    auto y = random_vector(rng, 72);
    for (std::int64_t d : {1, 8, 9, 72}) CHECK(reindex(y, 72, d).flatten() == y);
  }
}

TEST_CASE("star product") {
  CHECK(star_product(ExponentVector{{5, 1}}, ExponentVector{{1, 2}, {2, -1}}) == ExponentVector{{5, 2}, {10, -1}});
  const ExponentVector y{{1, -1}, {2, 3}, {4, -1}};
  CHECK(star_product(ExponentVector{{1, 1}}, y) == y);
  CHECK(star_product(ExponentVector{{1, 2}, {2, -1}}, ExponentVector{{1, 2}, {3, -1}}) ==
        ExponentVector{{1, 4}, {3, -2}, {2, -2}, {6, 1}});
  CHECK_THROWS_AS(star_product(ExponentVector{{2, 1}}, ExponentVector{{4, 1}}), DomainError);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto a = random_vector(rng, 4);
    auto b = random_vector(rng, 9);
    auto z = star_product(a, b);
    CHECK(weight2(z) == weight2(a) * weight2(b));
    if (!a.empty() && !b.empty()) CHECK(level(z) == level(a) * level(b));
  }
}
