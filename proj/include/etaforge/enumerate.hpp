#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etaforge/error.hpp"
#include "etaforge/etaq.hpp"

namespace etaforge {

// The vertex-derived box exceeded the per-divisor cap.
class CapExceeded : public DomainError {
 public:
  CapExceeded(std::int64_t divisor, std::int64_t bound, std::int64_t cap)
      : DomainError("coordinate box for divisor " + std::to_string(divisor) + " reaches " + std::to_string(bound) +
                    ", above the cap " + std::to_string(cap)),
        divisor_(divisor) {}
  std::int64_t divisor() const noexcept { return divisor_; }

 private:
  std::int64_t divisor_;
};

struct SearchOptions {
  // Per-divisor cap on |X_d| for the vertex box; exceeding it aborts.
  std::int64_t cap = 64;
  // 0: ETAFORGE_THREADS if set, otherwise hardware concurrency.
  unsigned threads = 0;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

// Integer points X in a box with row_lo <= A-hat_N X <= row_hi and
// sigma_lo <= sum(X) <= sigma_hi. Vectors are indexed like divisors(level).
struct LatticeProblem {
  std::int64_t level = 1;
  std::vector<std::int64_t> lo, hi;
  std::vector<std::int64_t> row_lo;
  std::optional<std::vector<std::int64_t>> row_hi;
  std::int64_t sigma_lo = 0, sigma_hi = 0;
};

// Every solution, sorted lexicographically. Exact integer arithmetic throughout.
std::vector<std::vector<std::int64_t>> search_lattice_points(const LatticeProblem& problem,
                                                             const SearchOptions& options = {},
                                                             SearchStats* stats = nullptr);

// Per-divisor box spanned by the simplex vertices
// v_t = lambda_t * (column t of A-hat_N^{-1}) with sigma(v_t) = k2.
struct VertexBox {
  std::vector<std::int64_t> divisors, lo, hi;
};
VertexBox vertex_box(std::int64_t n, std::int64_t k2);

// All X on Gamma_0(N) with A-hat_N X >= 0 and sigma(X) = k2, i.e. every
// holomorphic eta quotient of weight k2/2 whose level divides N.
// Sorted canonically.
std::vector<ExponentVector> enumerate_holomorphic(std::int64_t n, std::int64_t k2, const SearchOptions& options = {},
                                                  SearchStats* stats = nullptr);

// Nontrivial splittings X = Y + (X - Y) into holomorphic quotients on
// Gamma_0(M), each unordered pair reported once (Y <= X - Y).
std::vector<std::pair<ExponentVector, ExponentVector>> factorizations(const ExponentVector& x, std::int64_t m);

// Not factorizable on Gamma_0(level(x)).
bool is_quasi_irreducible(const ExponentVector& x);
// Primitive and quasi-irreducible.
bool is_simple(const ExponentVector& x);

struct ZagierMatch {
  int index;  // 1-based position in the list
  std::int64_t nu;
};

struct ClassifiedQuotient {
  ExponentVector exponents;
  std::int64_t level;
  bool primitive;
  std::optional<ZagierMatch> zagier;
};

// Classifies enumeration output. For k2 = 1 every entry must carry a match;
// entries that do not are counted by zagier_violations().
std::vector<ClassifiedQuotient> classify(const std::vector<ExponentVector>& results, std::int64_t k2);
std::size_t zagier_violations(const std::vector<ClassifiedQuotient>& classified, std::int64_t k2);

struct ZagierReport {
  std::int64_t level;
  std::size_t total = 0;
  std::size_t primitive = 0;
  std::size_t violations = 0;
  std::vector<ClassifiedQuotient> quotients;

  bool ok() const { return violations == 0; }
};

// Enumerates weight 1/2 on Gamma_0(N) and checks every result against the list.
ZagierReport verify_zagier(std::int64_t n, const SearchOptions& options = {});

}  // namespace etaforge
