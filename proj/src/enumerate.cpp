#include "etaforge/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "etaforge/arith.hpp"
#include "etaforge/orders.hpp"
#include "etaforge/zagier.hpp"
#include "simplex.hpp"

namespace etaforge {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr i128 kInf = static_cast<i128>(1) << 100;

i64 floor_div128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return static_cast<i64>(std::clamp<i128>(q, -kInf, kInf));
}

i64 ceil_div128(i128 a, i128 b) { return -floor_div128(-a, b); }

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ETAFORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Depth-first search over a fixed variable order. At every node the bounds
// of the unassigned coordinates are tightened to a fixpoint using each row
// constraint, the sigma constraints, and each row combined with sigma
// through a multiplier alpha taken from the row's own entries. The next
// coordinate to branch on then gets exact LP bounds.
class Searcher {
 public:
  Searcher(const LatticeProblem& p, const IntDivisorMatrix& a, std::vector<std::size_t> order)
      : p_(p), n_(a.size()), order_(std::move(order)) {
    // In Z = A-hat X coordinates the region is cut out by bounds on Z and
    // on r.Z, where r holds the row sums of the inverse.
    const auto inv = sym_order_matrix_inverse(p.level);
    inv_.assign(n_, std::vector<Rational>(n_));
    row_sums_.assign(n_, Rational(0));
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t t = 0; t < n_; ++t) {
        inv_[k][t] = inv(order_[k], t);
        row_sums_[t] += inv(order_[k], t);
      }
    coef_.resize(n_ * n_);
    for (std::size_t t = 0; t < n_; ++t)
      for (std::size_t k = 0; k < n_; ++k) coef_[t * n_ + k] = a(t, order_[k]);
    alphas_.resize(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      auto& al = alphas_[t];
      for (std::size_t k = 0; k < n_; ++k) al.push_back(coef_[t * n_ + k]);
      std::sort(al.begin(), al.end());
      al.erase(std::unique(al.begin(), al.end()), al.end());
    }
  }

  struct Node {
    std::size_t depth = 0;
    std::vector<i64> lo, hi;     // by position in order_
    std::vector<i128> partial;   // row partial sums over assigned positions
    i128 sigma = 0;
    std::vector<i64> values;     // assigned values, by position
  };

  Node root() const {
    Node s;
    s.lo.resize(n_);
    s.hi.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      s.lo[k] = p_.lo[order_[k]];
      s.hi[k] = p_.hi[order_[k]];
    }
    s.partial.assign(n_, 0);
    s.values.assign(n_, 0);
    return s;
  }

  // Tightens bounds of positions >= depth. Returns false if infeasible.
  bool propagate(Node& s, std::uint64_t& work) const {
    const std::size_t d0 = s.depth;
    if (d0 == n_) return true;
    const i128 s_lo = p_.sigma_lo - s.sigma, s_hi = p_.sigma_hi - s.sigma;
    for (int pass = 0; pass < 16; ++pass) {
      bool changed = false;
      for (std::size_t k = d0; k < n_; ++k)
        if (s.lo[k] > s.hi[k]) return false;
      // sigma alone
      {
        i128 sum_lo = 0, sum_hi = 0;
        for (std::size_t k = d0; k < n_; ++k) {
          sum_lo += s.lo[k];
          sum_hi += s.hi[k];
        }
        if (sum_hi < s_lo || sum_lo > s_hi) return false;
        for (std::size_t k = d0; k < n_; ++k) {
          const i128 up = s_hi - (sum_lo - s.lo[k]);
          const i128 down = s_lo - (sum_hi - s.hi[k]);
          if (up < s.hi[k]) { s.hi[k] = static_cast<i64>(up); changed = true; }
          if (down > s.lo[k]) { s.lo[k] = static_cast<i64>(down); changed = true; }
          if (s.lo[k] > s.hi[k]) return false;
        }
      }
      for (std::size_t t = 0; t < n_; ++t) {
        const i64* row = &coef_[t * n_];
        const i128 need_lo = static_cast<i128>(p_.row_lo[t]) - s.partial[t];
        // sum (row - alpha) x >= need_lo - alpha * s_hi
        for (i64 alpha : alphas_[t]) {
          for (int variant = 0; variant < 2; ++variant) {
            const i64 al = variant == 0 ? 0 : alpha;
            if (variant == 1 && alpha == 0) continue;
            ++work;
            const i128 rhs = need_lo - static_cast<i128>(al) * s_hi;
            if (!tighten_ge(s, row, al, rhs, changed)) return false;
          }
        }
        if (p_.row_hi) {
          const i128 need_hi = static_cast<i128>((*p_.row_hi)[t]) - s.partial[t];
          // sum (row - alpha) x <= need_hi - alpha * s_lo
          for (i64 alpha : alphas_[t]) {
            for (int variant = 0; variant < 2; ++variant) {
              const i64 al = variant == 0 ? 0 : alpha;
              if (variant == 1 && alpha == 0) continue;
              ++work;
              const i128 rhs = need_hi - static_cast<i128>(al) * s_lo;
              if (!tighten_le(s, row, al, rhs, changed)) return false;
            }
          }
        }
      }
      if (!changed) break;
    }
    return true;
  }

  void assign(Node& s, i64 v) const {
    const std::size_t k = s.depth;
    s.values[k] = v;
    s.lo[k] = s.hi[k] = v;
    for (std::size_t t = 0; t < n_; ++t) s.partial[t] += static_cast<i128>(coef_[t * n_ + k]) * v;
    s.sigma += v;
    ++s.depth;
  }

  bool accept(const Node& s) const {
    if (s.sigma < p_.sigma_lo || s.sigma > p_.sigma_hi) return false;
    for (std::size_t t = 0; t < n_; ++t) {
      if (s.partial[t] < p_.row_lo[t]) return false;
      if (p_.row_hi && s.partial[t] > (*p_.row_hi)[t]) return false;
    }
    return true;
  }

  std::vector<i64> unpermute(const Node& s) const {
    std::vector<i64> x(n_);
    for (std::size_t k = 0; k < n_; ++k) x[order_[k]] = s.values[k];
    return x;
  }

  // Exact LP bounds for the coordinate at position s.depth, intersected
  // into s. Returns false if the relaxation is infeasible.
  bool lp_bound(Node& s) const {
    detail::LinearProgram lp;
    lp.vars = n_;
    // W = Z - row_lo >= 0
    std::vector<Rational> shift(n_);
    for (std::size_t t = 0; t < n_; ++t) shift[t] = static_cast<long>(p_.row_lo[t]);
    auto offset = [&](const std::vector<Rational>& coef) {
      Rational acc = 0;
      for (std::size_t t = 0; t < n_; ++t)
        if (coef[t] != 0 && shift[t] != 0) acc += coef[t] * shift[t];
      return acc;
    };
    for (std::size_t k = 0; k < s.depth; ++k) {
      lp.eq_rows.push_back(inv_[k]);
      lp.eq_rhs.push_back(Rational(static_cast<long>(s.values[k])) - offset(inv_[k]));
    }
    const Rational sigma_shift = offset(row_sums_);
    if (p_.sigma_lo == p_.sigma_hi) {
      lp.eq_rows.push_back(row_sums_);
      lp.eq_rhs.push_back(Rational(static_cast<long>(p_.sigma_lo)) - sigma_shift);
    } else {
      lp.le_rows.push_back(row_sums_);
      lp.le_rhs.push_back(Rational(static_cast<long>(p_.sigma_hi)) - sigma_shift);
      std::vector<Rational> neg(n_);
      for (std::size_t t = 0; t < n_; ++t) neg[t] = -row_sums_[t];
      lp.le_rows.push_back(std::move(neg));
      lp.le_rhs.push_back(sigma_shift - static_cast<long>(p_.sigma_lo));
    }
    if (p_.row_hi) {
      for (std::size_t t = 0; t < n_; ++t) {
        std::vector<Rational> e(n_, Rational(0));
        e[t] = 1;
        lp.le_rows.push_back(std::move(e));
        lp.le_rhs.push_back(Rational(static_cast<long>((*p_.row_hi)[t] - p_.row_lo[t])));
      }
    }
    const detail::ExactSimplex simplex(lp);
    if (!simplex.feasible()) return false;
    const auto& obj = inv_[s.depth];
    const Rational base = offset(obj);
    std::vector<Rational> neg(n_);
    for (std::size_t t = 0; t < n_; ++t) neg[t] = -obj[t];
    if (auto mn = simplex.minimize(obj)) s.lo[s.depth] = std::max(s.lo[s.depth], ceil_div(*mn + base));
    if (auto mx = simplex.minimize(neg)) s.hi[s.depth] = std::min(s.hi[s.depth], floor_div(-*mx + base));
    return s.lo[s.depth] <= s.hi[s.depth];
  }

  void dfs(Node s, std::vector<std::vector<i64>>& out, std::uint64_t& nodes, std::uint64_t& work) const {
    ++nodes;
    if (!propagate(s, work)) return;
    if (n_ - s.depth > 1 && s.lo[s.depth] < s.hi[s.depth] && !lp_bound(s)) return;
    if (s.depth == n_) {
      if (accept(s)) out.push_back(unpermute(s));
      return;
    }
    const i64 lo = s.lo[s.depth], hi = s.hi[s.depth];
    for (i64 v = lo; v <= hi; ++v) {
      Node child = s;
      assign(child, v);
      dfs(std::move(child), out, nodes, work);
    }
  }

  std::size_t size() const { return n_; }

 private:
  // sum_k (row_k - alpha) x_k >= rhs over unassigned positions.
  bool tighten_ge(Node& s, const i64* row, i64 alpha, i128 rhs, bool& changed) const {
    i128 max_total = 0;
    for (std::size_t k = s.depth; k < n_; ++k) {
      const i128 c = static_cast<i128>(row[k]) - alpha;
      max_total += c > 0 ? c * s.hi[k] : c * s.lo[k];
    }
    if (max_total < rhs) return false;
    for (std::size_t k = s.depth; k < n_; ++k) {
      const i128 c = static_cast<i128>(row[k]) - alpha;
      if (c == 0) continue;
      const i128 own = c > 0 ? c * s.hi[k] : c * s.lo[k];
      const i128 r = rhs - (max_total - own);  // c x_k >= r
      if (c > 0) {
        const i64 b = ceil_div128(r, c);
        if (b > s.lo[k]) {
          s.lo[k] = b;
          changed = true;
        }
      } else {
        const i64 b = floor_div128(r, c);
        if (b < s.hi[k]) {
          s.hi[k] = b;
          changed = true;
        }
      }
      if (s.lo[k] > s.hi[k]) return false;
    }
    return true;
  }

  bool tighten_le(Node& s, const i64* row, i64 alpha, i128 rhs, bool& changed) const {
    // negate: sum (alpha - row_k) x_k >= -rhs
    i128 max_total = 0;
    for (std::size_t k = s.depth; k < n_; ++k) {
      const i128 c = static_cast<i128>(alpha) - row[k];
      max_total += c > 0 ? c * s.hi[k] : c * s.lo[k];
    }
    if (max_total < -rhs) return false;
    for (std::size_t k = s.depth; k < n_; ++k) {
      const i128 c = static_cast<i128>(alpha) - row[k];
      if (c == 0) continue;
      const i128 own = c > 0 ? c * s.hi[k] : c * s.lo[k];
      const i128 r = -rhs - (max_total - own);
      if (c > 0) {
        const i64 b = ceil_div128(r, c);
        if (b > s.lo[k]) {
          s.lo[k] = b;
          changed = true;
        }
      } else {
        const i64 b = floor_div128(r, c);
        if (b < s.hi[k]) {
          s.hi[k] = b;
          changed = true;
        }
      }
      if (s.lo[k] > s.hi[k]) return false;
    }
    return true;
  }

  const LatticeProblem& p_;
  std::size_t n_;
  std::vector<std::size_t> order_;
  std::vector<i64> coef_;                // row t, position k
  std::vector<std::vector<i64>> alphas_;  // distinct entries of each row
  std::vector<std::vector<Rational>> inv_;  // rows of the inverse, by position
  std::vector<Rational> row_sums_;          // indexed by row t
};

// Descending divisors. Measured against widest-range-first and largest
// inverse column first, both of which visit about four times more nodes.
std::vector<std::size_t> assignment_order(const LatticeProblem& p) {
  std::vector<std::size_t> order(p.lo.size());
  std::iota(order.rbegin(), order.rend(), 0);
  return order;
}

}  // namespace

std::vector<std::vector<std::int64_t>> search_lattice_points(const LatticeProblem& problem, const SearchOptions& options,
                                                             SearchStats* stats) {
  const auto mats = level_matrices(problem.level);
  const std::size_t n = mats->sym.size();
  if (problem.lo.size() != n || problem.hi.size() != n || problem.row_lo.size() != n ||
      (problem.row_hi && problem.row_hi->size() != n))
    throw DomainError("lattice problem dimensions do not match the divisors of the level");

  const Searcher searcher(problem, mats->sym, assignment_order(problem));
  Searcher::Node root = searcher.root();
  std::uint64_t nodes = 1, work = 0;
  std::vector<std::vector<i64>> out;

  if (searcher.propagate(root, work) && (root.depth == n || n == 1 || searcher.lp_bound(root))) {
    if (root.depth == n) {
      if (searcher.accept(root)) out.push_back(searcher.unpermute(root));
    } else {
      // Split at the first branching coordinate.
      std::vector<i64> values;
      for (i64 v = root.lo[0]; v <= root.hi[0]; ++v) values.push_back(v);
      const unsigned threads = std::min<unsigned>(resolve_threads(options.threads),
                                                  static_cast<unsigned>(std::max<std::size_t>(1, values.size())));
      std::vector<std::vector<std::vector<i64>>> per_value(values.size());
      std::atomic<std::size_t> next{0};
      std::atomic<std::uint64_t> total_nodes{0};
      std::mutex error_mu;
      std::exception_ptr error;
      auto worker = [&] {
        try {
          std::uint64_t local_nodes = 0, local_work = 0;
          for (std::size_t i; (i = next.fetch_add(1)) < values.size();) {
            Searcher::Node child = root;
            searcher.assign(child, values[i]);
            searcher.dfs(std::move(child), per_value[i], local_nodes, local_work);
          }
          total_nodes += local_nodes;
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      };
      if (threads <= 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
      }
      if (error) std::rethrow_exception(error);
      nodes += total_nodes;
      for (auto& part : per_value)
        for (auto& x : part) out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end());
  if (stats) stats->nodes = nodes;
  return out;
}

VertexBox vertex_box(std::int64_t n, std::int64_t k2) {
  if (n < 1) throw DomainError("level must be positive");
  if (k2 < 0) throw DomainError("k2 must be nonnegative");
  VertexBox box;
  box.divisors = divisors(n);
  const std::size_t len = box.divisors.size();
  // Column t of the inverse is inverse * e_t; its sum is the row sum r_t.
  std::vector<std::vector<Rational>> vertices;
  for (std::size_t t = 0; t < len; ++t) {
    std::vector<Rational> e(len, Rational(0));
    e[t] = 1;
    auto col = apply_sym_inverse(n, e);
    Rational r = 0;
    for (const auto& v : col) r += v;
    if (r <= 0) throw ConsistencyError("nonpositive row sum of the inverse order matrix at level " + std::to_string(n));
    for (auto& v : col) v = v * k2 / r;
    vertices.push_back(std::move(col));
  }
  box.lo.resize(len);
  box.hi.resize(len);
  for (std::size_t d = 0; d < len; ++d) {
    Rational mn = vertices[0][d], mx = vertices[0][d];
    for (const auto& v : vertices) {
      if (v[d] < mn) mn = v[d];
      if (v[d] > mx) mx = v[d];
    }
    box.lo[d] = floor_div(mn);
    box.hi[d] = ceil_div(mx);
  }
  return box;
}

std::vector<ExponentVector> enumerate_holomorphic(std::int64_t n, std::int64_t k2, const SearchOptions& options,
                                                  SearchStats* stats) {
  const VertexBox box = vertex_box(n, k2);
  for (std::size_t d = 0; d < box.divisors.size(); ++d) {
    const i64 reach = std::max(std::abs(box.lo[d]), std::abs(box.hi[d]));
    if (reach > options.cap) throw CapExceeded(box.divisors[d], reach, options.cap);
  }
  LatticeProblem p;
  p.level = n;
  p.lo = box.lo;
  p.hi = box.hi;
  p.row_lo.assign(box.divisors.size(), 0);
  p.sigma_lo = p.sigma_hi = k2;
  auto points = search_lattice_points(p, options, stats);
  std::vector<ExponentVector> out;
  out.reserve(points.size());
  for (const auto& x : points) out.push_back(ExponentVector::from_dense(box.divisors, x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<ExponentVector, ExponentVector>> factorizations(const ExponentVector& x, std::int64_t m) {
  const auto target = sym_orders(x, m);
  for (i64 v : target)
    if (v < 0) throw DomainError("factorizations needs a holomorphic quotient on the given level");
  const auto divs = divisors(m);
  const std::size_t len = divs.size();

  // Y = inverse * Z with 0 <= Z <= target, so each coordinate of Y lies
  // between the sums of the negative and positive contributions.
  std::vector<Rational> lo(len, Rational(0)), hi(len, Rational(0));
  for (std::size_t t = 0; t < len; ++t) {
    if (target[t] == 0) continue;
    std::vector<Rational> e(len, Rational(0));
    e[t] = target[t];
    const auto col = apply_sym_inverse(m, e);
    for (std::size_t d = 0; d < len; ++d) (col[d] < 0 ? lo[d] : hi[d]) += col[d];
  }
  LatticeProblem p;
  p.level = m;
  for (std::size_t d = 0; d < len; ++d) {
    p.lo.push_back(floor_div(lo[d]));
    p.hi.push_back(ceil_div(hi[d]));
  }
  p.row_lo.assign(len, 0);
  p.row_hi = target;
  // A nonconstant holomorphic factor has positive weight.
  p.sigma_lo = 1;
  p.sigma_hi = weight2(x) - 1;
  std::vector<std::pair<ExponentVector, ExponentVector>> out;
  if (p.sigma_hi < p.sigma_lo) return out;
  SearchOptions options;
  options.threads = 1;
  for (const auto& y : search_lattice_points(p, options)) {
    ExponentVector ya = ExponentVector::from_dense(divs, y);
    ExponentVector yb = x - ya;
    if (ya.empty() || yb.empty()) continue;
    if (yb < ya) continue;
    out.emplace_back(std::move(ya), std::move(yb));
  }
  return out;
}

namespace {

void require_nonconstant_holomorphic(const ExponentVector& x) {
  if (x.empty()) throw DomainError("constant quotient");
  if (!is_holomorphic(x, level(x))) throw DomainError("quotient is not holomorphic");
}

}  // namespace

bool is_quasi_irreducible(const ExponentVector& x) {
  require_nonconstant_holomorphic(x);
  return factorizations(x, level(x)).empty();
}

bool is_simple(const ExponentVector& x) {
  require_nonconstant_holomorphic(x);
  return is_primitive(x) && is_quasi_irreducible(x);
}

std::vector<ClassifiedQuotient> classify(const std::vector<ExponentVector>& results, std::int64_t k2) {
  std::vector<ClassifiedQuotient> out;
  out.reserve(results.size());
  for (const auto& x : results) {
    ClassifiedQuotient c{x, level(x), !x.empty() && is_primitive(x), std::nullopt};
    if (k2 == 1 && !x.empty()) {
      if (auto match = zagier_match(x)) c.zagier = ZagierMatch{match->first, match->second};
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t zagier_violations(const std::vector<ClassifiedQuotient>& classified, std::int64_t k2) {
  if (k2 != 1) return 0;
  return static_cast<std::size_t>(
      std::count_if(classified.begin(), classified.end(), [](const auto& c) { return !c.zagier.has_value(); }));
}

ZagierReport verify_zagier(std::int64_t n, const SearchOptions& options) {
  ZagierReport report;
  report.level = n;
  report.quotients = classify(enumerate_holomorphic(n, 1, options), 1);
  report.total = report.quotients.size();
  for (const auto& c : report.quotients) report.primitive += c.primitive;
  report.violations = zagier_violations(report.quotients, 1);
  return report;
}

}  // namespace etaforge
