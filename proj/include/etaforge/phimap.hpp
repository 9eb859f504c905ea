#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "etaforge/error.hpp"
#include "etaforge/etaq.hpp"

namespace etaforge {

// The admissibility inequality fails at the prime power p^j.
class InadmissibleWeights : public DomainError {
 public:
  InadmissibleWeights(const std::string& what, std::int64_t p, int j) : DomainError(what), p_(p), j_(j) {}
  std::int64_t prime() const noexcept { return p_; }
  int j() const noexcept { return j_; }

 private:
  std::int64_t p_;
  int j_;
};

// Weights a_d, d | M/N, of a holomorphy-preserving map from quotients on
// Gamma_0(M) to quotients on Gamma_0(N). Only validate_weights and the helper
// constructors produce instances.
class PhiWeights {
 public:
  std::int64_t source_level() const { return m_; }
  std::int64_t target_level() const { return n_; }
  const std::map<std::int64_t, std::int64_t>& values() const { return values_; }
  std::int64_t at(std::int64_t d) const { return values_.at(d); }
  // Strict inequality at every (p, j): no nonconstant holomorphic input maps to 1.
  bool strict() const { return strict_; }

 private:
  friend PhiWeights validate_weights(std::int64_t, std::int64_t, const std::map<std::int64_t, std::int64_t>&);
  std::int64_t m_ = 1, n_ = 1;
  std::map<std::int64_t, std::int64_t> values_;
  bool strict_ = true;
};

// Checks N || M, that values cover exactly D_{M/N}, multiplicativity
// (a_{d1 d2} a_1 = a_{d1} a_{d2} for coprime d1, d2) and the inequality
// a_{p^{j-1}} + a_{p^{j+1}} <= c a_{p^j} for j = 0..v_p(M/N), where c = p
// if p^j || M/N and c = p + 1/p otherwise, with out-of-range terms 0.
PhiWeights validate_weights(std::int64_t m, std::int64_t n, const std::map<std::int64_t, std::int64_t>& values);

// All ones on D_{M/N}.
PhiWeights ones_weights(std::int64_t m, std::int64_t n);

// M = p^e N with p prime not dividing N: the value mult at p^j, 1 elsewhere.
PhiWeights corollary2_weights(std::int64_t m, std::int64_t n, int j, std::int64_t mult);

// Y_{d'} = sum over d'' | M/N of X_{d' d''} a_{d''}, for d' | N.
ExponentVector apply_phi(const ExponentVector& x, const PhiWeights& w);

struct PrimeProjection {
  ExponentVector image;     // on Gamma_0(p^e)
  std::optional<int> j0;    // set when image is eta_{p^j0}
};

// The all-ones map from Gamma_0(M) onto Gamma_0(p^e), p^e || M. For a
// holomorphic weight-1/2 input and p >= 3 the image must be a single
// eta_{p^j}; anything else raises ConsistencyError.
PrimeProjection project_to_prime_part(const ExponentVector& x, std::int64_t m, std::int64_t p);

}  // namespace etaforge
