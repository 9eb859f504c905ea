#pragma once

// Exact two-phase simplex over the rationals for the small linear programs
// that bound coordinates during enumeration.

#include <optional>
#include <vector>

#include "etaforge/arith.hpp"

namespace etaforge::detail {

// Constraints on x >= 0: eq_rows x = eq_rhs, le_rows x <= le_rhs.
struct LinearProgram {
  std::size_t vars = 0;
  std::vector<std::vector<Rational>> eq_rows, le_rows;
  std::vector<Rational> eq_rhs, le_rhs;
};

class ExactSimplex {
 public:
  explicit ExactSimplex(const LinearProgram& lp);

  bool feasible() const { return feasible_; }
  // Minimum of c.x over the feasible region; nullopt if unbounded below.
  // Requires feasible().
  std::optional<Rational> minimize(const std::vector<Rational>& c) const;

 private:
  struct Tableau {
    std::vector<std::vector<Rational>> rows;  // last entry is the right-hand side
    std::vector<Rational> z;                  // reduced costs, last entry is -objective
    std::vector<std::size_t> basis;
  };
  static void pivot(Tableau& t, std::size_t r, std::size_t c);
  // Bland's rule over columns < limit. Returns false if unbounded.
  static bool optimize(Tableau& t, std::size_t limit);

  std::size_t vars_ = 0;
  std::size_t columns_ = 0;  // structural plus slack columns
  bool feasible_ = false;
  Tableau tab_;
};

}  // namespace etaforge::detail
