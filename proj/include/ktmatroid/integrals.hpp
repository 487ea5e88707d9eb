#pragma once

// Equivariant pushforward to a point and the invariants built on it.

#include <algorithm>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cones.hpp"
#include "errors.hpp"
#include "kclass.hpp"
#include "laurent.hpp"
#include "matroid.hpp"

namespace ktm {

struct IntegrateOptions {
  std::optional<FlipOrder> order;  // lex when unset
  std::size_t max_candidates = 10'000'000;
  unsigned threads = 1;
  std::uint64_t triangulation_seed = kDefaultTriangulationSeed;
};

/// One fixed point's contribution hilb(series) * weight, slot by slot. The
/// series must already be flipped with a common order.
struct StalkTerm {
  ConeSeries series;
  LaurentBivariate weight;
};

namespace detail {

struct PreparedPiece {
  int sign = 1;
  Exponent apex;
  PieceSolver solver;
};

/// Blocks of coordinates on which every ray of every piece sums to zero.
inline std::vector<std::vector<std::size_t>> span_blocks(std::size_t n, std::span<const StalkTerm> terms) {
  CoordinateBlocks uf(n);
  for (const auto& t : terms)
    for (const auto& p : t.series.pieces())
      for (const auto& r : p.rays) uf.join_support(r);
  return uf.blocks();
}

struct Signature {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<long long> operator()(const Exponent& a) const { return block_sums(blocks, a); }
};

/// Integer points of the box [lo, hi] whose coordinate sum lies in `degrees`.
inline std::vector<Exponent> box_slice(const Exponent& lo, const Exponent& hi, const std::set<int>& degrees) {
  const std::size_t n = lo.size();
  std::vector<Exponent> out;
  if (degrees.empty()) return out;
  std::vector<long long> suffix_lo(n + 1, 0), suffix_hi(n + 1, 0);
  for (std::size_t k = n; k-- > 0;) {
    suffix_lo[k] = suffix_lo[k + 1] + lo[k];
    suffix_hi[k] = suffix_hi[k + 1] + hi[k];
  }
  const long long dmin = *degrees.begin(), dmax = *degrees.rbegin();
  Exponent x(n);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t k, long long sum) {
    if (k == n) {
      if (degrees.count(static_cast<int>(sum))) out.push_back(x);
      return;
    }
    for (int v = lo[k]; v <= hi[k]; ++v) {
      const long long s = sum + v;
      if (s + suffix_hi[k + 1] < dmin || s + suffix_lo[k + 1] > dmax) continue;
      x[k] = v;
      rec(k + 1, s);
    }
  };
  rec(0, 0);
  return out;
}

inline long long to_small(const BigInt& c) {
  constexpr long long lim = std::numeric_limits<long long>::max() / 4;
  if (c > lim || c < -lim) throw SizeGuardError("weight coefficient exceeds the extraction range");
  return static_cast<long long>(c);
}

struct SlotContext {
  std::size_t n = 0;
  std::size_t span_dim = 0;
  const std::vector<std::vector<PreparedPiece>>* pieces = nullptr;
  const Signature* sig = nullptr;
  std::size_t max_candidates = 0;
};

/// Coefficients of sum_v hilb(pieces[v]) * weights[v]. Candidates are the
/// lattice points of the weights' bounding box in the weights' degrees, which
/// contains the support of the (polynomial) answer.
inline LaurentPoly integrate_slot(const SlotContext& ctx, const std::vector<const LaurentPoly*>& weights) {
  const std::size_t n = ctx.n;
  Exponent lo, hi;
  std::set<int> degrees;
  for (const auto* w : weights) {
    if (!w) continue;
    for (const auto& [e, c] : w->terms()) {
      if (degrees.empty()) {
        lo = e;
        hi = e;
      }
      for (std::size_t k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], e[k]);
        hi[k] = std::max(hi[k], e[k]);
      }
      degrees.insert(degree(e));
    }
  }
  LaurentPoly result(n);
  if (degrees.empty()) return result;
  long double box = 1;
  for (std::size_t k = 0; k < n; ++k) box *= static_cast<long double>(hi[k] - lo[k] + 1);
  if (box > static_cast<long double>(ctx.max_candidates)) {
    std::ostringstream os;
    os << "candidate box of " << static_cast<double>(box) << " points exceeds the limit of "
       << ctx.max_candidates;
    throw SizeGuardError(os.str());
  }
  const auto candidates = box_slice(lo, hi, degrees);
  std::map<std::vector<long long>, std::vector<std::size_t>> by_signature;
  for (std::size_t a = 0; a < candidates.size(); ++a) by_signature[(*ctx.sig)(candidates[a])].push_back(a);

  std::vector<__int128> acc(candidates.size(), 0);
  std::vector<std::vector<long long>> cand_coords(candidates.size());
  std::vector<char> have(candidates.size());
  std::vector<long long> cb, scratch;
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (!weights[v] || weights[v]->is_zero()) continue;
    for (const auto& piece : (*ctx.pieces)[v]) {
      // A full-rank unimodular piece spans exactly the zero-signature space, so
      // for matching signatures membership is a coordinate comparison.
      const bool fast = piece.solver.unimodular() && piece.solver.num_rays() == ctx.span_dim;
      std::fill(have.begin(), have.end(), 0);
      for (const auto& [w, cw] : weights[v]->terms()) {
        const long long c = to_small(cw) * piece.sign;
        const Exponent base = w + piece.apex;
        if (!fast) {
          for (std::size_t a = 0; a < candidates.size(); ++a) {
            if (piece.solver.solve(candidates[a] - base, scratch) &&
                std::all_of(scratch.begin(), scratch.end(), [](long long y) { return y >= 0; }))
              acc[a] += c;
          }
          continue;
        }
        auto it = by_signature.find((*ctx.sig)(w));
        if (it == by_signature.end()) continue;
        piece.solver.coordinates(base, cb);
        for (std::size_t a : it->second) {
          if (!have[a]) {
            piece.solver.coordinates(candidates[a], cand_coords[a]);
            have[a] = 1;
          }
          const auto& cx = cand_coords[a];
          bool inside = true;
          for (std::size_t i = 0; i < cx.size(); ++i)
            if (cx[i] < cb[i]) {
              inside = false;
              break;
            }
          if (inside) acc[a] += c;
        }
      }
    }
  }
  for (std::size_t a = 0; a < candidates.size(); ++a)
    if (acc[a] != 0) result.add_term(candidates[a], BigInt(static_cast<long long>(acc[a])));
  return result;
}

}  // namespace detail

/// Sum over the stalk terms of hilb(series) * weight, extracted slot by slot.
inline LaurentBivariate integrate_terms(std::size_t n, std::span<const StalkTerm> terms,
                                        const IntegrateOptions& opts = {}) {
  std::vector<std::vector<detail::PreparedPiece>> pieces;
  std::set<std::pair<int, int>> slots;
  for (const auto& t : terms) {
    if (t.series.ambient() != n) throw DimensionError("stalk series in the wrong ambient");
    std::vector<detail::PreparedPiece> prepared;
    for (const auto& p : t.series.pieces())
      prepared.push_back({p.sign, p.shifted_apex(), PieceSolver(p.rays, n)});
    pieces.push_back(std::move(prepared));
    for (const auto& [k, c] : t.weight.coeffs()) {
      if (c.ambient() != n) throw DimensionError("stalk weight in the wrong ambient");
      slots.insert(k);
    }
  }
  const auto blocks = detail::span_blocks(n, terms);
  const detail::Signature sig{blocks};
  const detail::SlotContext ctx{n, n - blocks.size(), &pieces, &sig, opts.max_candidates};

  const std::vector<std::pair<int, int>> slot_list(slots.begin(), slots.end());
  std::vector<LaurentPoly> results(slot_list.size(), LaurentPoly(n));
  auto run = [&](std::size_t s) {
    std::vector<LaurentPoly> owned;
    owned.reserve(terms.size());
    std::vector<const LaurentPoly*> weights;
    for (const auto& t : terms) {
      auto c = t.weight.coeff(slot_list[s].first, slot_list[s].second);
      if (c) {
        owned.push_back(std::move(*c));
        weights.push_back(&owned.back());
      } else {
        weights.push_back(nullptr);
      }
    }
    results[s] = detail::integrate_slot(ctx, weights);
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(slot_list.size())));
  if (threads <= 1) {
    for (std::size_t s = 0; s < slot_list.size(); ++s) run(s);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t s = t; s < slot_list.size(); s += threads) run(s);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  LaurentBivariate out;
  for (std::size_t s = 0; s < slot_list.size(); ++s)
    if (!results[s].is_zero()) out.add(slot_list[s].first, slot_list[s].second, std::move(results[s]));
  return out;
}

using WeightFunction = std::function<LaurentBivariate(Subset)>;

/// Equivariant pushforward to a point of y(M) times the class with the given
/// values at the fixed points of M.
inline LaurentBivariate integrate_T(const Matroid& M, const WeightFunction& weight, const IntegrateOptions& opts = {}) {
  require_valid(M);
  const auto n = static_cast<std::size_t>(M.n());
  const FlipOrder order = opts.order.value_or(FlipOrder::lex(n));
  std::vector<StalkTerm> terms;
  for (Subset I : M.bases())
    terms.push_back({flip(vertex_cone_series(M, I, opts.triangulation_seed), order), weight(I)});
  return integrate_terms(n, terms, opts);
}

/// Pushforward to a point of a stalk-form class (entries that are the zero
/// polynomial are skipped).
inline LaurentPoly push_to_point(const LocalizationClass& c, const IntegrateOptions& opts = {}) {
  const auto n = static_cast<std::size_t>(c.n());
  const FlipOrder order = opts.order.value_or(FlipOrder::lex(n));
  std::vector<StalkTerm> terms;
  for (Subset I : c.fixed_points()) {
    const auto& v = c.at(I);
    if (const auto* p = std::get_if<LaurentPoly>(&v)) {
      if (!p->is_zero()) throw DomainError("push_to_point needs stalk form at " + subset::to_string(I));
      continue;
    }
    const auto& s = std::get<Stalk>(v);
    terms.push_back({flip(s.series, order), LaurentBivariate::single(0, 0, s.weight)});
  }
  auto r = integrate_terms(n, terms, opts);
  auto c00 = r.coeff(0, 0);
  return c00 ? *c00 : LaurentPoly(n);
}

/// t^{m e_I} * sum_{p,q} e_p(t_i^-1 : i in I) e_q(t_j : j not in I) u^p v^q.
inline LaurentBivariate ft_weight(int n, Subset I, int m) {
  const auto N = static_cast<std::size_t>(n);
  Exponent shift(N, 0);
  std::vector<Exponent> inv, out;
  for (int k = 1; k <= n; ++k) {
    Exponent e(N, 0);
    if (subset::contains(I, k)) {
      shift[static_cast<std::size_t>(k - 1)] = m;
      e[static_cast<std::size_t>(k - 1)] = -1;
      inv.push_back(std::move(e));
    } else {
      e[static_cast<std::size_t>(k - 1)] = 1;
      out.push_back(std::move(e));
    }
  }
  std::vector<LaurentPoly> ep, eq;
  for (int p = 0; p <= static_cast<int>(inv.size()); ++p) ep.push_back(elem_sym(N, p, inv));
  for (int q = 0; q <= static_cast<int>(out.size()); ++q) eq.push_back(elem_sym(N, q, out));
  LaurentBivariate w;
  for (std::size_t p = 0; p < ep.size(); ++p)
    for (std::size_t q = 0; q < eq.size(); ++q)
      w.add(static_cast<int>(p), static_cast<int>(q), (ep[p] * eq[q]).shifted(shift));
  return w;
}

/// F^{m,T}_M(u, v).
inline LaurentBivariate F_T(const Matroid& M, int m, const IntegrateOptions& opts = {}) {
  auto r = integrate_T(M, [&](Subset I) { return ft_weight(M.n(), I, m); }, opts);
  for (const auto& [k, c] : r.coeffs()) {
    const int expected = m * M.rank() - k.first + k.second;
    auto deg = c.homogeneous_degree();
    if (!deg || *deg != expected)
      throw InternalConsistencyError("coefficient of " + bivariate_key(k.first, k.second) +
                                     " is not homogeneous of degree " + std::to_string(expected));
  }
  return r;
}

inline IntBivariate F(const Matroid& M, int m, const IntegrateOptions& opts = {}) {
  return specialize_all_ones(F_T(M, m, opts));
}

/// Tutte polynomial in (z, w): r_M(z - 1, w - 1).
inline IntBivariate tutte(const Matroid& M, const IntegrateOptions& opts = {}) {
  return shift_variables(F(M, 1, opts), -1, -1);
}

/// Univariate integer polynomial, coefficients by ascending degree.
struct UniPoly {
  std::vector<BigInt> coeffs;

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  BigInt coeff(std::size_t k) const { return k < coeffs.size() ? coeffs[k] : BigInt(0); }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string to_string(std::string_view var = "s") const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const BigInt& c = coeffs[k];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      if (k == 0 || mag != 1) os << mag;
      if (k > 0) os << var;
      if (k > 1) os << '^' << k;
    }
    return os.str();
  }
};

/// The diagonal polynomial P with F(M, 0) = P(uv). Any off-diagonal term is an
/// internal error.
inline UniPoly diagonal_polynomial(const Matroid& M, const IntegrateOptions& opts = {}) {
  const auto st = structure(M);
  if (st.loops || st.coloops)
    throw DomainError("matroid has loops/coloops; h_M is defined only without loops or coloops");
  const auto f0 = F(M, 0, opts);
  UniPoly P;
  for (const auto& [k, c] : f0.coeffs()) {
    if (k.first != k.second)
      throw InternalConsistencyError("F(M,0) has off-diagonal term " + bivariate_key(k.first, k.second));
    if (P.coeffs.size() <= static_cast<std::size_t>(k.first)) P.coeffs.resize(static_cast<std::size_t>(k.first) + 1);
    P.coeffs[static_cast<std::size_t>(k.first)] = c;
  }
  P.trim();
  return P;
}

/// H_M(s) = P(1 - s).
inline UniPoly h_poly(const Matroid& M, const IntegrateOptions& opts = {}) {
  const auto P = diagonal_polynomial(M, opts);
  UniPoly H;
  H.coeffs.assign(P.coeffs.size(), 0);
  for (std::size_t p = 0; p < P.coeffs.size(); ++p) {
    BigInt binom = 1;
    for (std::size_t k = 0; k <= p; ++k) {
      H.coeffs[k] += (k % 2 ? -1 : 1) * binom * P.coeffs[p];
      binom = binom * (p - k) / (k + 1);
    }
  }
  H.trim();
  if (H.degree() >= M.n()) throw InternalConsistencyError("H_M has degree >= n");
  return H;
}

/// g_M(s) = (-1)^c H_M(-s), c the number of connected components.
inline UniPoly g_poly(const Matroid& M, const IntegrateOptions& opts = {}) {
  auto H = h_poly(M, opts);
  const int c = structure(M).components;
  for (std::size_t k = 0; k < H.coeffs.size(); ++k)
    if ((static_cast<std::size_t>(c) + k) % 2) H.coeffs[k] = -H.coeffs[k];
  return H;
}

/// R(alpha - 1, beta - 1) reduced mod alpha^n, beta^n, as a polynomial in
/// (alpha, beta) stored in the (first, second) slots.
inline IntBivariate pushforward_to_PxP(const IntBivariate& R, int n) {
  const auto shifted = shift_variables(R, -1, -1);
  IntBivariate out;
  for (const auto& [k, c] : shifted.coeffs())
    if (k.first < n && k.second < n) out.add(k.first, k.second, c);
  return out;
}

inline constexpr int kMaxOracleGroundSet = 16;

/// sum over all S of u^{d - rank S} v^{|S| - rank S}, by brute force.
inline IntBivariate rank_gen_oracle(const Matroid& M, int max_n = kMaxOracleGroundSet) {
  if (M.n() > max_n) throw SizeGuardError("rank oracle refused for n=" + std::to_string(M.n()));
  IntBivariate r;
  const Subset end = Subset{1} << M.n();
  for (Subset S = 0; S < end; ++S) {
    const int rk = rank(M, S);
    r.add(M.rank() - rk, subset::size(S) - rk, 1);
  }
  return r;
}

/// Lattice points of m * Poly(M), enumerated from the rank inequalities.
inline BigInt ehrhart_count(const Matroid& M, int m, int max_n = kMaxOracleGroundSet) {
  if (m < 0) throw DomainError("lattice point count needs m >= 0");
  const int n = M.n();
  if (n > max_n) throw SizeGuardError("lattice point oracle refused for n=" + std::to_string(n));
  long double box = 1;
  for (int k = 0; k < n; ++k) box *= (m + 1);
  if (box > 1e9L) throw SizeGuardError("lattice point oracle box too large");
  const Subset end = Subset{1} << n;
  std::vector<int> rk(end);
  for (Subset S = 0; S < end; ++S) rk[S] = rank(M, S);
  const long long target = static_cast<long long>(m) * M.rank();
  BigInt count = 0;
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  std::function<void(int, long long)> rec = [&](int k, long long sum) {
    if (sum > target) return;
    if (static_cast<long long>(n - k) * m < target - sum) return;
    if (k == n) {
      for (Subset S = 1; S < end; ++S) {
        long long s = 0;
        for (int e : subset::elements(S)) s += x[static_cast<std::size_t>(e - 1)];
        if (s > static_cast<long long>(m) * rk[S]) return;
      }
      ++count;
      return;
    }
    for (int v = 0; v <= m; ++v) {
      x[static_cast<std::size_t>(k)] = v;
      rec(k + 1, sum + v);
    }
    x[static_cast<std::size_t>(k)] = 0;
  };
  rec(0, 0);
  return count;
}

}  // namespace ktm
