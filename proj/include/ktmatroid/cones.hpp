#pragma once

// Generating functions of pointed lattice cones as signed sums of half-open
// unimodular simplicial cones, the flip that re-points them with respect to a
// total order on Z^n, and exact coefficient extraction from such sums.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "matroid.hpp"

namespace ktm {

namespace detail {

using Wide = __int128;

/// Pivot coordinates of the row space of `rows` (length-n integer vectors):
/// projection onto these coordinates is injective on the span.
inline std::vector<int> pivot_columns(std::span<const Exponent> rows, std::size_t n) {
  std::vector<std::vector<BigRational>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionError("vector length mismatch in span computation");
    m.emplace_back(r.begin(), r.end());
  }
  std::vector<int> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    for (std::size_t i = row + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      BigRational f = m[i][col] / m[row][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

/// Sign of the determinant of a square integer matrix (Bareiss).
inline int det_sign(std::vector<std::vector<Wide>> a) {
  const std::size_t r = a.size();
  if (r == 0) return 1;
  Wide prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < r; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < r && a[p][k] == 0) ++p;
      if (p == r) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < r; ++i) {
      for (std::size_t j = k + 1; j < r; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Wide d = a[r - 1][r - 1];
  if (d == 0) return 0;
  return (d > 0 ? 1 : -1) * sign;
}

/// Orientation of (columns..., x) in the coordinates `pivots`.
inline int orientation(std::span<const Exponent* const> columns, const std::vector<long long>& x,
                       const std::vector<int>& pivots) {
  const std::size_t r = pivots.size();
  std::vector<std::vector<Wide>> a(r, std::vector<Wide>(r));
  for (std::size_t row = 0; row < r; ++row) {
    const auto c = static_cast<std::size_t>(pivots[row]);
    for (std::size_t k = 0; k < columns.size(); ++k) a[row][k] = (*columns[k])[c];
    a[row][r - 1] = x[c];
  }
  return det_sign(std::move(a));
}

/// Union-find over coordinates; rays join the coordinates they touch. The
/// blocks are the finest partition on which every ray sums to zero.
class CoordinateBlocks {
 public:
  explicit CoordinateBlocks(std::size_t n) : parent_(n) {
    for (std::size_t k = 0; k < n; ++k) parent_[k] = k;
  }

  void join_support(const Exponent& r) {
    std::size_t first = parent_.size();
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == 0) continue;
      if (first == parent_.size())
        first = k;
      else
        parent_[find(k)] = find(first);
    }
  }

  std::vector<std::vector<std::size_t>> blocks() {
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t k = 0; k < parent_.size(); ++k) by_root[find(k)].push_back(k);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, b] : by_root) out.push_back(std::move(b));
    return out;
  }

 private:
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  std::vector<std::size_t> parent_;
};

inline std::vector<long long> block_sums(const std::vector<std::vector<std::size_t>>& blocks, const Exponent& a) {
  std::vector<long long> s;
  s.reserve(blocks.size());
  for (const auto& b : blocks) {
    long long x = 0;
    for (std::size_t k : b) x += a[k];
    s.push_back(x);
  }
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Total order <_zeta on Q^n from a spanning list of integer vectors (rational
/// vectors order identically after clearing denominators).
class FlipOrder {
 public:
  explicit FlipOrder(std::vector<std::vector<long long>> zeta) : zeta_(std::move(zeta)) {
    if (zeta_.empty()) throw DomainError("flip order needs at least one vector");
    const std::size_t n = zeta_.front().size();
    std::vector<Exponent> rows;
    for (const auto& z : zeta_) {
      if (z.size() != n) throw DimensionError("flip order vectors differ in length");
      Exponent r(n);
      for (std::size_t k = 0; k < n; ++k) {
        if (z[k] > INT32_MAX || z[k] < INT32_MIN) throw DomainError("flip order entry too large");
        r[k] = static_cast<int>(z[k]);
      }
      rows.push_back(std::move(r));
    }
    if (detail::pivot_columns(rows, n).size() != n)
      throw DomainError("flip order vectors do not span R^n");
  }

  /// zeta = (e_1, ..., e_n).
  static FlipOrder lex(std::size_t n) {
    std::vector<std::vector<long long>> z(n, std::vector<long long>(n, 0));
    for (std::size_t k = 0; k < n; ++k) z[k][k] = 1;
    FlipOrder f(std::move(z), n);
    f.lex_ = true;
    return f;
  }

  static FlipOrder random(std::size_t n, std::uint64_t seed) {
    if (n == 0) return lex(0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> dist(-1000, 1000);
    while (true) {
      std::vector<std::vector<long long>> z(n, std::vector<long long>(n));
      for (auto& row : z)
        for (auto& x : row) x = dist(rng);
      try {
        return FlipOrder(std::move(z));
      } catch (const DomainError&) {
        // singular draw, try again
      }
    }
  }

  std::size_t ambient() const { return zeta_.empty() ? 0 : zeta_.front().size(); }
  bool is_lex() const { return lex_; }
  const std::vector<std::vector<long long>>& vectors() const { return zeta_; }

  /// -1, 0 or +1 according to v <_zeta 0, v = 0, v >_zeta 0.
  int sign(const Exponent& v) const {
    if (v.size() != ambient()) throw DimensionError("flip order ambient mismatch");
    if (lex_) {
      for (int x : v)
        if (x != 0) return x > 0 ? 1 : -1;
      return 0;
    }
    for (const auto& z : zeta_) {
      long long s = 0;
      for (std::size_t k = 0; k < v.size(); ++k) s += z[k] * v[k];
      if (s != 0) return s > 0 ? 1 : -1;
    }
    return 0;
  }

  bool less(const Exponent& a, const Exponent& b) const { return sign(b - a) > 0; }

 private:
  FlipOrder(std::vector<std::vector<long long>> zeta, std::size_t) : zeta_(std::move(zeta)) {}

  std::vector<std::vector<long long>> zeta_;
  bool lex_ = false;
};

/// sign * indicator of { apex + sum c_i ray_i : c_i >= 0, c_i >= 1 if strict_i }.
struct HalfOpenCone {
  Exponent apex;
  std::vector<Exponent> rays;
  std::vector<bool> strict;
  int sign = 1;

  /// apex + sum of the strict rays: the first lattice point of the piece.
  Exponent shifted_apex() const {
    Exponent a = apex;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (strict[i]) a = a + rays[i];
    return a;
  }

  friend bool operator==(const HalfOpenCone&, const HalfOpenCone&) = default;
};

class ConeSeries {
 public:
  ConeSeries() = default;
  explicit ConeSeries(std::size_t n) : n_(n) {}
  ConeSeries(std::size_t n, std::vector<HalfOpenCone> pieces) : n_(n), pieces_(std::move(pieces)) {
    for (const auto& p : pieces_) check_piece(p);
  }

  std::size_t ambient() const { return n_; }
  const std::vector<HalfOpenCone>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  void add_piece(HalfOpenCone p) {
    check_piece(p);
    pieces_.push_back(std::move(p));
  }

  /// Sum of `+-t^apex'/((1-t^r1)*...)` terms.
  std::string to_string() const {
    if (pieces_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& p : pieces_) {
      os << (p.sign < 0 ? "-" : (first ? "" : "+"));
      first = false;
      os << monomial_string(p.shifted_apex());
      if (!p.rays.empty()) {
        os << "/(";
        for (std::size_t i = 0; i < p.rays.size(); ++i) {
          if (i) os << '*';
          os << "(1-" << monomial_string(p.rays[i]) << ')';
        }
        os << ')';
      }
    }
    return os.str();
  }

  friend bool operator==(const ConeSeries&, const ConeSeries&) = default;

 private:
  void check_piece(const HalfOpenCone& p) const {
    if (p.apex.size() != n_) throw DimensionError("cone apex outside the ambient lattice");
    if (p.strict.size() != p.rays.size()) throw DomainError("strict flags do not match rays");
    for (const auto& r : p.rays)
      if (r.size() != n_) throw DimensionError("cone ray outside the ambient lattice");
    if (p.sign != 1 && p.sign != -1) throw DomainError("cone sign must be +-1");
  }

  std::size_t n_ = 0;
  std::vector<HalfOpenCone> pieces_;
};

/// A cone series times a Laurent polynomial weight.
struct WeightedSeries {
  ConeSeries series;
  LaurentPoly weight;
};

// ---------------------------------------------------------------------------

/// Exact lattice membership in a simplicial cone: solves x = sum c_i ray_i.
/// For unimodular ray sets the inverse is integral and solving is a small
/// integer matrix product; otherwise it falls back to rational arithmetic.
class PieceSolver {
 public:
  PieceSolver() = default;
  explicit PieceSolver(std::span<const Exponent> rays, std::size_t n) : n_(n), r_(rays.size()) {
    flat_rays_.reserve(r_ * n_);
    for (const auto& ray : rays) flat_rays_.insert(flat_rays_.end(), ray.begin(), ray.end());
    if (r_ == 0) return;
    pivots_ = detail::pivot_columns(rays, n);
    if (pivots_.size() != r_) throw DomainError("cone rays are linearly dependent");
    // A[k][i] = ray_i[pivot_k]; invert by Gauss-Jordan.
    std::vector<std::vector<BigRational>> a(r_, std::vector<BigRational>(2 * r_));
    for (std::size_t k = 0; k < r_; ++k) {
      for (std::size_t i = 0; i < r_; ++i) a[k][i] = rays[i][static_cast<std::size_t>(pivots_[k])];
      a[k][r_ + k] = 1;
    }
    for (std::size_t col = 0; col < r_; ++col) {
      std::size_t p = col;
      while (a[p][col] == 0) ++p;
      std::swap(a[p], a[col]);
      BigRational inv = 1 / a[col][col];
      for (auto& x : a[col]) x *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == col || a[i][col] == 0) continue;
        BigRational f = a[i][col];
        for (std::size_t j = 0; j < 2 * r_; ++j) a[i][j] -= f * a[col][j];
      }
    }
    rational_inverse_.resize(r_ * r_);
    integral_ = true;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < r_; ++k) {
        const BigRational& v = a[i][r_ + k];
        rational_inverse_[i * r_ + k] = v;
        if (denominator(v) != 1) integral_ = false;
      }
    if (integral_) {
      inverse_.resize(r_ * r_);
      for (std::size_t i = 0; i < r_ * r_; ++i)
        inverse_[i] = static_cast<long long>(numerator(rational_inverse_[i]));
    }
  }

  std::size_t num_rays() const { return r_; }
  bool unimodular() const { return integral_ || r_ == 0; }

  /// Ray coordinates of x read off the pivot coordinates, without checking
  /// that x lies in the span. Only meaningful when unimodular().
  void coordinates(std::span<const int> x, std::vector<long long>& c) const {
    c.assign(r_, 0);
    for (std::size_t i = 0; i < r_; ++i) {
      long long s = 0;
      for (std::size_t k = 0; k < r_; ++k) s += inverse_[i * r_ + k] * x[static_cast<std::size_t>(pivots_[k])];
      c[i] = s;
    }
  }

  /// Integer coefficients c with x = sum c_i ray_i, if they exist.
  bool solve(std::span<const int> x, std::vector<long long>& c) const {
    c.assign(r_, 0);
    if (integral_ || r_ == 0) {
      for (std::size_t i = 0; i < r_; ++i) {
        long long s = 0;
        for (std::size_t k = 0; k < r_; ++k)
          s += inverse_[i * r_ + k] * x[static_cast<std::size_t>(pivots_[k])];
        c[i] = s;
      }
    } else {
      for (std::size_t i = 0; i < r_; ++i) {
        BigRational s = 0;
        for (std::size_t k = 0; k < r_; ++k)
          s += rational_inverse_[i * r_ + k] * x[static_cast<std::size_t>(pivots_[k])];
        if (denominator(s) != 1) return false;
        c[i] = static_cast<long long>(numerator(s));
      }
    }
    for (std::size_t k = 0; k < n_; ++k) {
      long long s = 0;
      for (std::size_t i = 0; i < r_; ++i) s += c[i] * flat_rays_[i * n_ + k];
      if (s != x[k]) return false;
    }
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<int> flat_rays_;
  std::vector<int> pivots_;
  bool integral_ = false;
  std::vector<long long> inverse_;
  std::vector<BigRational> rational_inverse_;
};

/// Whether the lattice point a lies in the half-open piece.
inline bool piece_contains(const HalfOpenCone& p, const PieceSolver& solver, const Exponent& a,
                           std::vector<long long>& scratch) {
  Exponent x = a - p.shifted_apex();
  if (!solver.solve(x, scratch)) return false;
  return std::all_of(scratch.begin(), scratch.end(), [](long long c) { return c >= 0; });
}

/// Sum of signs of the pieces containing a.
inline long long signed_multiplicity(const ConeSeries& s, const Exponent& a) {
  if (a.size() != s.ambient()) throw DimensionError("lattice point outside the ambient lattice");
  long long total = 0;
  std::vector<long long> scratch;
  for (const auto& p : s.pieces()) {
    PieceSolver solver(p.rays, s.ambient());
    if (piece_contains(p, solver, a, scratch)) total += p.sign;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Triangulation of a cone spanned by a generator list.

/// Placing triangulation: generators are inserted in order and each new one is
/// coned over the boundary facets visible from it. Returns simplices as sorted
/// index lists into `gens`; every simplex spans the whole cone's linear span.
inline std::vector<std::vector<int>> placing_triangulation(std::span<const Exponent> gens, std::size_t n) {
  std::vector<std::vector<int>> simplices;
  std::vector<Exponent> span_basis;
  std::vector<int> pivots;
  auto as_long = [](const Exponent& e) { return std::vector<long long>(e.begin(), e.end()); };

  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Exponent& g = gens[k];
    if (std::all_of(g.begin(), g.end(), [](int x) { return x == 0; }))
      throw DomainError("zero generator in cone");
    if (simplices.empty()) {
      simplices.push_back({static_cast<int>(k)});
      span_basis = {g};
      pivots = detail::pivot_columns(span_basis, n);
      continue;
    }
    std::vector<Exponent> trial = span_basis;
    trial.push_back(g);
    auto trial_pivots = detail::pivot_columns(trial, n);
    if (trial_pivots.size() > span_basis.size()) {
      for (auto& s : simplices) s.push_back(static_cast<int>(k));
      span_basis = std::move(trial);
      pivots = std::move(trial_pivots);
      continue;
    }

    struct FacetInfo {
      int count = 0;
      int opposite = -1;
    };
    std::map<std::vector<int>, FacetInfo> facets;
    for (const auto& s : simplices) {
      for (std::size_t pos = 0; pos < s.size(); ++pos) {
        std::vector<int> f;
        f.reserve(s.size() - 1);
        for (std::size_t q = 0; q < s.size(); ++q)
          if (q != pos) f.push_back(s[q]);
        auto& info = facets[f];
        ++info.count;
        info.opposite = s[pos];
      }
    }
    const auto gl = as_long(g);
    std::vector<std::vector<int>> added;
    for (const auto& [f, info] : facets) {
      if (info.count != 1) continue;
      std::vector<const Exponent*> cols;
      for (int idx : f) cols.push_back(&gens[static_cast<std::size_t>(idx)]);
      const int sv = detail::orientation(cols, as_long(gens[static_cast<std::size_t>(info.opposite)]), pivots);
      const int sg = detail::orientation(cols, gl, pivots);
      if (sg != 0 && sg != sv) {
        auto s = f;
        s.push_back(static_cast<int>(k));
        added.push_back(std::move(s));
      }
    }
    simplices.insert(simplices.end(), added.begin(), added.end());
  }
  return simplices;
}

inline constexpr std::uint64_t kDefaultTriangulationSeed = 0x5eed0c0ffee5ULL;

/// Half-open decomposition of the cone over `gens` with apex 0. Each simplex
/// excludes the facets separating it from a generic interior reference point,
/// so the pieces cover every lattice point of the cone exactly once.
inline ConeSeries half_open_decomposition(std::span<const Exponent> gens, std::size_t n,
                                          std::uint64_t seed = kDefaultTriangulationSeed) {
  ConeSeries out(n);
  if (gens.empty()) {
    out.add_piece(HalfOpenCone{Exponent(n, 0), {}, {}, 1});
    return out;
  }
  const auto simplices = placing_triangulation(gens, n);
  const auto pivots = detail::pivot_columns(gens, n);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dist(1, 1'000'000);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<long long> q(n, 0);
    for (const auto& g : gens) {
      long long lambda = dist(rng);
      for (std::size_t k = 0; k < n; ++k) q[k] += lambda * g[k];
    }
    std::vector<HalfOpenCone> pieces;
    bool degenerate = false;
    for (const auto& s : simplices) {
      HalfOpenCone piece{Exponent(n, 0), {}, {}, 1};
      for (std::size_t pos = 0; pos < s.size() && !degenerate; ++pos) {
        std::vector<const Exponent*> cols;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != pos) cols.push_back(&gens[static_cast<std::size_t>(s[j])]);
        const auto& v = gens[static_cast<std::size_t>(s[pos])];
        const int sv = detail::orientation(cols, std::vector<long long>(v.begin(), v.end()), pivots);
        const int sq = detail::orientation(cols, q, pivots);
        if (sq == 0) degenerate = true;
        piece.rays.push_back(v);
        piece.strict.push_back(sq != sv);
      }
      if (degenerate) break;
      pieces.push_back(std::move(piece));
    }
    if (!degenerate) return ConeSeries(n, std::move(pieces));
  }
  throw InternalConsistencyError("no generic reference point found for half-open decomposition");
}

/// e_j - e_i for an exchange pair (i, j), 1-indexed.
inline Exponent exchange_vector(std::size_t n, int i, int j) {
  Exponent v(n, 0);
  v[static_cast<std::size_t>(j - 1)] += 1;
  v[static_cast<std::size_t>(i - 1)] -= 1;
  return v;
}

/// Half-open unimodular decomposition of Cone_I(M); empty when I is not a basis.
inline ConeSeries vertex_cone_series(const Matroid& M, Subset I,
                                     std::uint64_t seed = kDefaultTriangulationSeed) {
  const auto n = static_cast<std::size_t>(M.n());
  if (!M.is_basis(I)) return ConeSeries(n);
  std::vector<Exponent> gens;
  for (auto [i, j] : exchange_neighbors(M, I)) gens.push_back(exchange_vector(n, i, j));
  return half_open_decomposition(gens, n, seed);
}

/// Re-point every piece with respect to `order`: rays below zero are negated,
/// their strictness toggles and the sign picks up (-1) per flipped ray. The
/// represented rational function is unchanged.
inline ConeSeries flip(const ConeSeries& s, const FlipOrder& order) {
  if (order.ambient() != s.ambient()) throw DimensionError("flip order ambient mismatch");
  ConeSeries out(s.ambient());
  for (auto p : s.pieces()) {
    for (std::size_t i = 0; i < p.rays.size(); ++i) {
      const int sg = order.sign(p.rays[i]);
      if (sg == 0) throw DomainError("zero ray cannot be flipped");
      if (sg < 0) {
        p.rays[i] = -p.rays[i];
        p.strict[i] = !p.strict[i];
        p.sign = -p.sign;
      }
    }
    out.add_piece(std::move(p));
  }
  return out;
}

inline bool is_pointed(const ConeSeries& s, const FlipOrder& order) {
  for (const auto& p : s.pieces())
    for (const auto& r : p.rays)
      if (order.sign(r) <= 0) return false;
  return true;
}

/// Coefficient of t^a in sum weight * hilb(series). All series must already be
/// flipped with one common order; the result then does not depend on it.
inline BigInt coeff(std::span<const WeightedSeries> terms, const Exponent& a) {
  BigInt total = 0;
  std::vector<long long> scratch;
  for (const auto& term : terms) {
    const auto n = term.series.ambient();
    if (a.size() != n || term.weight.ambient() != n)
      throw DimensionError("coefficient extraction ambient mismatch");
    for (const auto& p : term.series.pieces()) {
      PieceSolver solver(p.rays, n);
      for (const auto& [w, cw] : term.weight.terms()) {
        if (piece_contains(p, solver, a - w, scratch)) total += p.sign * cw;
      }
    }
  }
  return total;
}

/// Lattice points of Cone_I(M) in [-bound, bound]^n, by closure under the
/// exchange generators. Coordinates move monotonically along any generator
/// path, so the closure inside the box is complete.
inline std::set<Exponent> enumerate_cone_points(const Matroid& M, Subset I, int bound) {
  std::set<Exponent> seen;
  if (!M.is_basis(I) || bound < 0) return seen;
  const auto n = static_cast<std::size_t>(M.n());
  std::vector<Exponent> gens;
  for (auto [i, j] : exchange_neighbors(M, I)) gens.push_back(exchange_vector(n, i, j));
  std::deque<Exponent> queue{Exponent(n, 0)};
  seen.insert(queue.front());
  while (!queue.empty()) {
    Exponent x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Exponent y = x + g;
      if (std::any_of(y.begin(), y.end(), [bound](int c) { return c < -bound || c > bound; })) continue;
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen;
}

/// First point of [-bound, bound]^n whose signed coverage by the pieces differs
/// from its membership in `expected`, or nullopt when they agree everywhere.
/// When every shifted apex has zero block sums, only points with zero block
/// sums can be covered, and the scan is restricted to them.
inline std::optional<Exponent> covering_mismatch(const ConeSeries& s, const std::set<Exponent>& expected, int bound) {
  const std::size_t n = s.ambient();
  detail::CoordinateBlocks uf(n);
  for (const auto& p : s.pieces())
    for (const auto& r : p.rays) uf.join_support(r);
  auto blocks = uf.blocks();
  bool restrict_to_span = true;
  for (const auto& p : s.pieces()) {
    const auto sums = detail::block_sums(blocks, p.shifted_apex());
    if (std::any_of(sums.begin(), sums.end(), [](long long x) { return x != 0; })) restrict_to_span = false;
  }
  for (const auto& e : expected) {
    if (e.size() != n) throw DimensionError("expected point in the wrong ambient");
    if (std::any_of(e.begin(), e.end(), [bound](int c) { return c < -bound || c > bound; }))
      throw DomainError("expected point outside the box");
  }

  std::vector<PieceSolver> solvers;
  for (const auto& p : s.pieces()) solvers.emplace_back(p.rays, n);
  std::vector<long long> scratch;
  std::optional<Exponent> bad;
  Exponent x(n, -bound);
  // Odometer over the box; block sums are checked before solving.
  while (true) {
    bool in_domain = true;
    if (restrict_to_span) {
      const auto sums = detail::block_sums(blocks, x);
      in_domain = std::all_of(sums.begin(), sums.end(), [](long long v) { return v == 0; });
    }
    if (in_domain) {
      long long mult = 0;
      for (std::size_t k = 0; k < solvers.size(); ++k)
        if (piece_contains(s.pieces()[k], solvers[k], x, scratch)) mult += s.pieces()[k].sign;
      if (mult != (expected.count(x) ? 1 : 0)) return x;
    } else if (expected.count(x)) {
      return x;
    }
    std::size_t k = 0;
    while (k < n && x[k] == bound) x[k++] = -bound;
    if (k == n) break;
    ++x[k];
  }
  return std::nullopt;
}

inline BigRational monomial_value(const Exponent& a, std::span<const BigRational> t) {
  BigRational v = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (t[k] == 0) throw PoleError("zero coordinate raised to a nonzero power");
    BigRational base = a[k] > 0 ? t[k] : 1 / t[k];
    for (int e = 0; e < std::abs(a[k]); ++e) v *= base;
  }
  return v;
}

inline BigRational evaluate(const LaurentPoly& f, std::span<const BigRational> t) {
  if (t.size() != f.ambient()) throw DimensionError("evaluation point has wrong length");
  BigRational s = 0;
  for (const auto& [e, c] : f.terms()) s += BigRational(c) * monomial_value(e, t);
  return s;
}

/// Exact value of the represented rational function at t.
inline BigRational numeric_eval(const ConeSeries& s, std::span<const BigRational> t) {
  if (t.size() != s.ambient()) throw DimensionError("evaluation point has wrong length");
  BigRational total = 0;
  for (const auto& p : s.pieces()) {
    BigRational v = monomial_value(p.shifted_apex(), t);
    for (const auto& r : p.rays) {
      BigRational den = 1 - monomial_value(r, t);
      if (den == 0) throw PoleError("1 - t^" + monomial_string(r) + " vanishes at sample point");
      v /= den;
    }
    total += p.sign * v;
  }
  return total;
}

/// sum over pieces of sign * t^apex' * prod_{d not a ray} (1 - t^d): the series
/// multiplied by prod_d (1 - t^d). Every ray must appear among `denominators`.
inline LaurentPoly clear_denominators(const ConeSeries& s, std::span<const Exponent> denominators) {
  LaurentPoly total(s.ambient());
  for (const auto& p : s.pieces()) {
    for (const auto& r : p.rays)
      if (std::find(denominators.begin(), denominators.end(), r) == denominators.end())
        throw DomainError("ray " + monomial_string(r) + " is not among the denominators");
    LaurentPoly term = LaurentPoly::monomial(p.shifted_apex(), p.sign);
    for (const auto& d : denominators)
      if (std::find(p.rays.begin(), p.rays.end(), d) == p.rays.end()) term *= LaurentPoly::one_minus(d);
    total += term;
  }
  return total;
}

}  // namespace ktm
