#include "simplex.hpp"

#include "etaforge/error.hpp"

namespace etaforge::detail {

ExactSimplex::ExactSimplex(const LinearProgram& lp) : vars_(lp.vars) {
  const std::size_t m_eq = lp.eq_rows.size(), m_le = lp.le_rows.size(), m = m_eq + m_le;
  if (lp.eq_rhs.size() != m_eq || lp.le_rhs.size() != m_le) throw DomainError("malformed linear program");
  columns_ = vars_ + m_le;
  const std::size_t width = columns_ + m + 1;  // artificials, then rhs

  tab_.rows.assign(m, std::vector<Rational>(width, Rational(0)));
  tab_.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab_.rows[i];
    const auto& src = i < m_eq ? lp.eq_rows[i] : lp.le_rows[i - m_eq];
    if (src.size() != vars_) throw DomainError("malformed linear program");
    for (std::size_t j = 0; j < vars_; ++j) row[j] = src[j];
    if (i >= m_eq) row[vars_ + (i - m_eq)] = 1;
    row.back() = i < m_eq ? lp.eq_rhs[i] : lp.le_rhs[i - m_eq];
    if (row.back() < 0)
      for (auto& v : row) v = -v;
    row[columns_ + i] = 1;
    tab_.basis[i] = columns_ + i;
  }

  // Phase 1: minimize the sum of artificials.
  tab_.z.assign(width, Rational(0));
  for (std::size_t i = 0; i < m; ++i) tab_.z[columns_ + i] = 1;
  for (const auto& row : tab_.rows)
    for (std::size_t j = 0; j < width; ++j)
      if (row[j] != 0) tab_.z[j] -= row[j];
  optimize(tab_, columns_ + m);
  if (tab_.z.back() != 0) return;  // optimum -z.back() > 0
  feasible_ = true;

  // Drive remaining artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab_.rows.size();) {
    if (tab_.basis[i] < columns_) {
      ++i;
      continue;
    }
    std::size_t c = columns_;
    for (std::size_t j = 0; j < columns_; ++j)
      if (tab_.rows[i][j] != 0) {
        c = j;
        break;
      }
    if (c == columns_) {
      tab_.rows.erase(tab_.rows.begin() + static_cast<std::ptrdiff_t>(i));
      tab_.basis.erase(tab_.basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    pivot(tab_, i, c);
    ++i;
  }
  // Artificial columns are never used again; shrink to columns_ + rhs.
  for (auto& row : tab_.rows) {
    row[columns_] = row.back();
    row.resize(columns_ + 1);
  }
  tab_.z.clear();
}

void ExactSimplex::pivot(Tableau& t, std::size_t r, std::size_t c) {
  auto& prow = t.rows[r];
  const Rational inv = Rational(1) / prow[c];
  for (auto& v : prow)
    if (v != 0) v *= inv;
  const std::size_t width = prow.size();
  auto eliminate = [&](std::vector<Rational>& row) {
    if (row[c] == 0) return;
    const Rational f = row[c];
    for (std::size_t j = 0; j < width; ++j)
      if (prow[j] != 0) row[j] -= f * prow[j];
  };
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (i != r) eliminate(t.rows[i]);
  eliminate(t.z);
  t.basis[r] = c;
}

bool ExactSimplex::optimize(Tableau& t, std::size_t limit) {
  for (;;) {
    std::size_t enter = limit;
    for (std::size_t j = 0; j < limit; ++j)
      if (t.z[j] < 0) {
        enter = j;
        break;
      }
    if (enter == limit) return true;
    std::size_t leave = t.rows.size();
    Rational best;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto& row = t.rows[i];
      if (row[enter] <= 0) continue;
      Rational ratio = row.back() / row[enter];
      if (leave == t.rows.size() || ratio < best || (ratio == best && t.basis[i] < t.basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == t.rows.size()) return false;
    pivot(t, leave, enter);
  }
}

std::optional<Rational> ExactSimplex::minimize(const std::vector<Rational>& c) const {
  if (!feasible_) throw DomainError("minimize on an infeasible program");
  if (c.size() != vars_) throw DomainError("objective length mismatch");
  Tableau t = tab_;
  const std::size_t width = columns_ + 1;
  t.z.assign(width, Rational(0));
  for (std::size_t j = 0; j < vars_; ++j) t.z[j] = c[j];
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const std::size_t b = t.basis[i];
    if (b >= vars_ || c[b] == 0) continue;
    for (std::size_t j = 0; j < width; ++j)
      if (t.rows[i][j] != 0) t.z[j] -= c[b] * t.rows[i][j];
  }
  if (!optimize(t, columns_)) return std::nullopt;
  return Rational(-t.z.back());
}

}  // namespace etaforge::detail
