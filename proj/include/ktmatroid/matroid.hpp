#pragma once

// Matroids on the ground set {1..n} given by an explicit basis collection.
// Subsets are bitmasks: bit k set means element k+1 is present.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ktm {

using Subset = std::uint64_t;

inline constexpr int kMaxGroundSet = 64;

namespace subset {

inline int size(Subset s) { return std::popcount(s); }
inline bool contains(Subset s, int element) { return (s >> (element - 1)) & 1U; }
inline Subset single(int element) { return Subset{1} << (element - 1); }

inline Subset full(int n) { return n >= 64 ? ~Subset{0} : (Subset{1} << n) - 1; }

/// 1-indexed, ascending.
inline std::vector<int> elements(Subset s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return out;
}

inline Subset from_elements(std::span<const int> elems) {
  Subset s = 0;
  for (int e : elems) {
    if (e < 1 || e > kMaxGroundSet) throw InvalidMatroidError("element " + std::to_string(e) + " out of range");
    s |= single(e);
  }
  return s;
}

inline Subset from_elements(std::initializer_list<int> elems) {
  return from_elements(std::span<const int>(elems.begin(), elems.size()));
}

/// 0/1 vector e_S of length n.
inline std::vector<int> indicator(Subset s, int n) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int i : elements(s)) e[static_cast<std::size_t>(i - 1)] = 1;
  return e;
}

/// Lexicographic order on the sorted element lists.
inline bool lex_less(Subset a, Subset b) {
  while (a && b) {
    int x = std::countr_zero(a), y = std::countr_zero(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

/// `{1,3}`
inline std::string to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : elements(s)) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

/// All k-subsets of [n] in lexicographic order.
inline std::vector<Subset> k_subsets(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Subset s = 0;
    for (int i : idx) s |= Subset{1} << i;
    out.push_back(s);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

}  // namespace subset

class Matroid {
 public:
  /// Structural checks only (sizes and range); basis exchange is `validate`.
  Matroid(int n, int d, std::vector<Subset> bases) : n_(n), d_(d), bases_(std::move(bases)) {
    if (n < 0 || n > kMaxGroundSet)
      throw InvalidMatroidError("ground set size " + std::to_string(n) + " outside [0, 64]");
    if (d < 0 || d > n) throw InvalidMatroidError("rank " + std::to_string(d) + " outside [0, n]");
    if (bases_.empty()) throw InvalidMatroidError("basis collection is empty");
    const Subset ground = subset::full(n);
    for (Subset b : bases_) {
      if ((b & ~ground) != 0)
        throw InvalidMatroidError("basis " + subset::to_string(b) + " not contained in [" +
                                  std::to_string(n) + "]");
      if (subset::size(b) != d)
        throw InvalidMatroidError("basis " + subset::to_string(b) + " does not have " +
                                  std::to_string(d) + " elements");
    }
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    lex_bases_ = bases_;
    std::sort(lex_bases_.begin(), lex_bases_.end(), subset::lex_less);
  }

  int n() const { return n_; }
  int rank() const { return d_; }
  /// Bases in lexicographic order of their element lists.
  const std::vector<Subset>& bases() const { return lex_bases_; }
  std::size_t num_bases() const { return bases_.size(); }

  bool is_basis(Subset s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.bases_ == b.bases_;
  }

 private:
  int n_;
  int d_;
  std::vector<Subset> bases_;      // numeric order, for lookup
  std::vector<Subset> lex_bases_;  // lexicographic order, for output
};

/// Basis exchange failure: I, J bases and i in I \ J with no j in J \ I
/// making I - i + j a basis.
struct ExchangeWitness {
  Subset I = 0;
  Subset J = 0;
  int i = 0;
};

struct ValidationResult {
  bool ok = true;
  std::optional<ExchangeWitness> witness;
  explicit operator bool() const { return ok; }

  std::string describe() const {
    if (ok) return "valid";
    const auto& w = *witness;
    return "basis exchange fails: I=" + subset::to_string(w.I) + " J=" + subset::to_string(w.J) +
           " i=" + std::to_string(w.i);
  }
};

inline ValidationResult validate(const Matroid& M) {
  for (Subset I : M.bases()) {
    for (Subset J : M.bases()) {
      if (I == J) continue;
      for (int i : subset::elements(I & ~J)) {
        bool found = false;
        for (int j : subset::elements(J & ~I)) {
          if (M.is_basis((I & ~subset::single(i)) | subset::single(j))) {
            found = true;
            break;
          }
        }
        if (!found) return {false, ExchangeWitness{I, J, i}};
      }
    }
  }
  return {};
}

/// Throws InvalidMatroidError carrying the exchange witness.
inline void require_valid(const Matroid& M) {
  auto v = validate(M);
  if (!v) throw InvalidMatroidError(v.describe());
}

/// rho(S) = max |B n S| over bases.
inline int rank(const Matroid& M, Subset S) {
  int best = 0;
  for (Subset b : M.bases()) {
    best = std::max(best, subset::size(b & S));
    if (best == M.rank()) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Constructors.

inline Matroid uniform(int d, int n) { return Matroid(n, d, subset::k_subsets(n, d)); }

/// Schubert matroid: all J = {j_1 < ... < j_d} with j_k >= i_k.
inline Matroid schubert(std::span<const int> I, int n) {
  std::vector<int> lower(I.begin(), I.end());
  if (!std::is_sorted(lower.begin(), lower.end()) ||
      std::adjacent_find(lower.begin(), lower.end()) != lower.end())
    throw InvalidMatroidError("Schubert index set must be strictly increasing");
  if (!lower.empty() && (lower.front() < 1 || lower.back() > n))
    throw InvalidMatroidError("Schubert index set not contained in [n]");
  const int d = static_cast<int>(lower.size());
  std::vector<Subset> bases;
  for (Subset J : subset::k_subsets(n, d)) {
    auto js = subset::elements(J);
    bool ok = true;
    for (int k = 0; k < d && ok; ++k)
      ok = js[static_cast<std::size_t>(k)] >= lower[static_cast<std::size_t>(k)];
    if (ok) bases.push_back(J);
  }
  return Matroid(n, d, std::move(bases));
}

inline Matroid schubert(std::initializer_list<int> I, int n) {
  return schubert(std::span<const int>(I.begin(), I.size()), n);
}

inline Matroid single_basis(std::span<const int> I, int n) {
  return Matroid(n, static_cast<int>(I.size()), {subset::from_elements(I)});
}

inline Matroid single_basis(std::initializer_list<int> I, int n) {
  return single_basis(std::span<const int>(I.begin(), I.size()), n);
}

/// Matroid from explicit 1-indexed basis lists.
inline Matroid from_basis_lists(int n, const std::vector<std::vector<int>>& lists) {
  if (lists.empty()) throw InvalidMatroidError("basis collection is empty");
  std::vector<Subset> bases;
  const int d = static_cast<int>(lists.front().size());
  for (const auto& l : lists) {
    Subset s = subset::from_elements(l);
    if (subset::size(s) != static_cast<int>(l.size()))
      throw InvalidMatroidError("repeated element in basis");
    bases.push_back(s);
  }
  return Matroid(n, d, std::move(bases));
}

// ---------------------------------------------------------------------------
// Operations.

inline Matroid dual(const Matroid& M) {
  const Subset ground = subset::full(M.n());
  std::vector<Subset> bases;
  bases.reserve(M.num_bases());
  for (Subset b : M.bases()) bases.push_back(ground & ~b);
  return Matroid(M.n(), M.n() - M.rank(), std::move(bases));
}

/// M on [n], M' relabelled onto n+1..n+n'.
inline Matroid direct_sum(const Matroid& M, const Matroid& Mp) {
  if (M.n() + Mp.n() > kMaxGroundSet) throw InvalidMatroidError("direct sum exceeds 64 elements");
  std::vector<Subset> bases;
  bases.reserve(M.num_bases() * Mp.num_bases());
  for (Subset a : M.bases())
    for (Subset b : Mp.bases()) bases.push_back(a | (b << M.n()));
  return Matroid(M.n() + Mp.n(), M.rank() + Mp.rank(), std::move(bases));
}

/// sigma . M, where perm[k] (0-indexed) is the image of element k+1 minus one.
inline Matroid permuted(const Matroid& M, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != M.n()) throw DimensionError("permutation length mismatch");
  std::vector<Subset> bases;
  for (Subset b : M.bases()) {
    Subset s = 0;
    for (int e : subset::elements(b)) s |= Subset{1} << perm[static_cast<std::size_t>(e - 1)];
    bases.push_back(s);
  }
  return Matroid(M.n(), M.rank(), std::move(bases));
}

struct Structure {
  Subset loops = 0;
  Subset coloops = 0;
  int components = 0;
  std::vector<Subset> component_sets;  // ordered by smallest element
};

/// Loops, coloops and connected components. Components are the minimal
/// nonempty separators, found by enumerating all subsets (practical for n <= 16).
inline Structure structure(const Matroid& M) {
  Structure st;
  const int n = M.n();
  const Subset ground = subset::full(n);
  Subset in_some = 0, in_all = ground;
  for (Subset b : M.bases()) {
    in_some |= b;
    in_all &= b;
  }
  st.loops = ground & ~in_some;
  st.coloops = in_all;
  if (n == 0) return st;
  if (n > 24) throw SizeGuardError("separator enumeration refused for n=" + std::to_string(n));

  // Separators are closed under intersection; the component of e is the
  // intersection of all separators containing e.
  std::vector<Subset> component_of(static_cast<std::size_t>(n), ground);
  for (Subset S = 1; S < (Subset{1} << n); ++S) {
    if (rank(M, S) + rank(M, ground & ~S) != M.rank()) continue;
    for (int e : subset::elements(S)) component_of[static_cast<std::size_t>(e - 1)] &= S;
  }
  Subset seen = 0;
  for (int e = 1; e <= n; ++e) {
    if (subset::contains(seen, e)) continue;
    Subset c = component_of[static_cast<std::size_t>(e - 1)];
    st.component_sets.push_back(c);
    seen |= c;
  }
  st.components = static_cast<int>(st.component_sets.size());
  return st;
}

/// Pairs (i in I, j not in I) with I - i + j a basis, ordered by j then i.
inline std::vector<std::pair<int, int>> exchange_neighbors(const Matroid& M, Subset I) {
  if (!M.is_basis(I)) throw InvalidMatroidError(subset::to_string(I) + " is not a basis");
  std::vector<std::pair<int, int>> out;
  const Subset outside = subset::full(M.n()) & ~I;
  for (int j : subset::elements(outside))
    for (int i : subset::elements(I))
      if (M.is_basis((I & ~subset::single(i)) | subset::single(j))) out.emplace_back(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Series connection, parallel connection and two-sum.
//
// Ground set relabelling: elements of M1 other than i1 keep their order as
// 1..n1-1, then the elements of M2 other than i2, then the glued element i
// (absent for the two-sum).

enum class Connection { series, parallel, two_sum };

inline Matroid connect(const Matroid& M1, int i1, const Matroid& M2, int i2, Connection kind) {
  if (i1 < 1 || i1 > M1.n() || i2 < 1 || i2 > M2.n())
    throw InvalidMatroidError("glued element outside the ground set");
  auto degenerate = [](const Matroid& M, int e, const char* name) {
    auto st = structure(M);
    if (subset::contains(st.loops, e))
      throw InvalidMatroidError(std::string(name) + ": element " + std::to_string(e) +
                                " is a loop; connection undefined");
    if (subset::contains(st.coloops, e))
      throw InvalidMatroidError(std::string(name) + ": element " + std::to_string(e) +
                                " is a coloop; connection undefined");
  };
  degenerate(M1, i1, "M1");
  degenerate(M2, i2, "M2");

  const int n1 = M1.n(), n2 = M2.n();
  const int glued = n1 + n2 - 1;  // position of i when present
  const int n = kind == Connection::two_sum ? n1 + n2 - 2 : n1 + n2 - 1;
  if (n > kMaxGroundSet) throw InvalidMatroidError("connection exceeds 64 elements");

  auto relabel = [&](Subset b1, Subset b2) {
    Subset s = 0;
    int pos = 0;
    for (int e = 1; e <= n1; ++e) {
      if (e == i1) continue;
      ++pos;
      if (subset::contains(b1, e)) s |= subset::single(pos);
    }
    for (int e = 1; e <= n2; ++e) {
      if (e == i2) continue;
      ++pos;
      if (subset::contains(b2, e)) s |= subset::single(pos);
    }
    return s;
  };

  std::vector<Subset> bases;
  for (Subset b1 : M1.bases()) {
    for (Subset b2 : M2.bases()) {
      const int hits = (subset::contains(b1, i1) ? 1 : 0) + (subset::contains(b2, i2) ? 1 : 0);
      const Subset rest = relabel(b1, b2);
      switch (kind) {
        case Connection::series:
          if (hits == 0) bases.push_back(rest);
          if (hits == 1) bases.push_back(rest | subset::single(glued));
          break;
        case Connection::parallel:
          if (hits == 1) bases.push_back(rest);
          if (hits == 2) bases.push_back(rest | subset::single(glued));
          break;
        case Connection::two_sum:
          if (hits == 1) bases.push_back(rest);
          break;
      }
    }
  }
  const int d = kind == Connection::series ? M1.rank() + M2.rank() : M1.rank() + M2.rank() - 1;
  return Matroid(n, d, std::move(bases));
}

}  // namespace ktm
