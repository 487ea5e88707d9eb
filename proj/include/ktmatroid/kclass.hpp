#pragma once

// Torus-equivariant K-classes on G(d,n) recorded by their values at the
// coordinate fixed points x_I.

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cones.hpp"
#include "errors.hpp"
#include "laurent.hpp"
#include "matroid.hpp"

namespace ktm {

/// hilb(series) * weight, with the tangent denominators prod (1 - t_i^-1 t_j)
/// already divided out.
struct Stalk {
  ConeSeries series;
  LaurentPoly weight;
};

using LocalValue = std::variant<LaurentPoly, Stalk>;

class LocalizationClass {
 public:
  /// The zero class.
  LocalizationClass(int n, int d) : n_(n), d_(d), points_(subset::k_subsets(n, d)) {
    if (n < 0 || d < 0 || d > n || n > kMaxGroundSet) throw DimensionError("bad Grassmannian G(d,n)");
    values_.assign(points_.size(), LaurentPoly(static_cast<std::size_t>(n)));
    for (std::size_t k = 0; k < points_.size(); ++k) index_[points_[k]] = k;
  }

  static LocalizationClass constant(int n, int d, const LaurentPoly& f) {
    LocalizationClass c(n, d);
    for (std::size_t k = 0; k < c.values_.size(); ++k) c.values_[k] = f;
    return c;
  }

  int n() const { return n_; }
  int d() const { return d_; }
  /// Fixed points in lex order.
  const std::vector<Subset>& fixed_points() const { return points_; }

  const LocalValue& at(Subset I) const { return values_[index_of(I)]; }
  void set(Subset I, LocalValue v) {
    if (const auto* p = std::get_if<LaurentPoly>(&v); p && p->ambient() != static_cast<std::size_t>(n_))
      throw DimensionError("localization value in the wrong ambient");
    values_[index_of(I)] = std::move(v);
  }

  bool is_polynomial() const {
    for (const auto& v : values_)
      if (!std::holds_alternative<LaurentPoly>(v)) return false;
    return true;
  }

  const LaurentPoly& poly(Subset I) const {
    const auto* p = std::get_if<LaurentPoly>(&at(I));
    if (!p) throw DomainError("class is in stalk form at " + subset::to_string(I));
    return *p;
  }

  friend bool operator==(const LocalizationClass& a, const LocalizationClass& b) {
    if (a.n_ != b.n_ || a.d_ != b.d_) return false;
    for (std::size_t k = 0; k < a.values_.size(); ++k) {
      const auto* pa = std::get_if<LaurentPoly>(&a.values_[k]);
      const auto* pb = std::get_if<LaurentPoly>(&b.values_[k]);
      if (!pa || !pb) throw DomainError("only polynomial-form classes can be compared");
      if (!(*pa == *pb)) return false;
    }
    return true;
  }

 private:
  std::size_t index_of(Subset I) const {
    auto it = index_.find(I);
    if (it == index_.end()) throw DimensionError(subset::to_string(I) + " is not a fixed point of G(d,n)");
    return it->second;
  }

  int n_, d_;
  std::vector<Subset> points_;
  std::vector<LocalValue> values_;
  std::unordered_map<Subset, std::size_t> index_;
};

/// Exponents e_j - e_i of the tangent characters at x_I, for i in I, j not in I.
inline std::vector<Exponent> tangent_exponents(int n, Subset I) {
  std::vector<Exponent> out;
  for (int i : subset::elements(I))
    for (int j = 1; j <= n; ++j)
      if (!subset::contains(I, j)) out.push_back(exchange_vector(static_cast<std::size_t>(n), i, j));
  return out;
}

inline LocalizationClass y_class(const Matroid& M, std::uint64_t seed = kDefaultTriangulationSeed) {
  require_valid(M);
  const auto n = static_cast<std::size_t>(M.n());
  LocalizationClass c(M.n(), M.rank());
  for (Subset I : M.bases()) c.set(I, Stalk{vertex_cone_series(M, I, seed), LaurentPoly::constant(n, 1)});
  return c;
}

/// Converts every stalk to its Laurent polynomial by multiplying back the
/// tangent binomials; each unimodular piece cancels the binomials of its rays.
inline LocalizationClass to_polynomial_form(const LocalizationClass& c) {
  LocalizationClass out(c.n(), c.d());
  for (Subset I : c.fixed_points()) {
    const auto& v = c.at(I);
    if (const auto* p = std::get_if<LaurentPoly>(&v)) {
      out.set(I, *p);
      continue;
    }
    const auto& s = std::get<Stalk>(v);
    const auto dens = tangent_exponents(c.n(), I);
    out.set(I, clear_denominators(s.series, dens) * s.weight);
  }
  return out;
}

inline constexpr int kMaxTangentDimension = 20;

inline LocalizationClass y_poly(const Matroid& M, std::uint64_t seed = kDefaultTriangulationSeed) {
  const int dim = M.rank() * (M.n() - M.rank());
  if (dim > kMaxTangentDimension)
    throw SizeGuardError("y_poly refused: d(n-d) = " + std::to_string(dim) + " exceeds " +
                         std::to_string(kMaxTangentDimension));
  return to_polynomial_form(y_class(M, seed));
}

enum class BundleKind { twist, wedge_S, wedge_Qdual };

/// O(m), wedge^p S or wedge^q Q^vee on G(d,n); `param` is m, p or q.
inline LocalizationClass bundle_class(BundleKind kind, int param, int n, int d) {
  LocalizationClass c(n, d);
  const auto N = static_cast<std::size_t>(n);
  for (Subset I : c.fixed_points()) {
    switch (kind) {
      case BundleKind::twist: {
        Exponent e(N, 0);
        for (int i : subset::elements(I)) e[static_cast<std::size_t>(i - 1)] = param;
        c.set(I, LaurentPoly::monomial(e));
        break;
      }
      case BundleKind::wedge_S: {
        std::vector<Exponent> mons;
        for (int i : subset::elements(I)) {
          Exponent e(N, 0);
          e[static_cast<std::size_t>(i - 1)] = -1;
          mons.push_back(std::move(e));
        }
        c.set(I, elem_sym(N, param, mons));
        break;
      }
      case BundleKind::wedge_Qdual: {
        std::vector<Exponent> mons;
        for (int j = 1; j <= n; ++j) {
          if (subset::contains(I, j)) continue;
          Exponent e(N, 0);
          e[static_cast<std::size_t>(j - 1)] = 1;
          mons.push_back(std::move(e));
        }
        c.set(I, elem_sym(N, param, mons));
        break;
      }
    }
  }
  return c;
}

/// Pointwise product. Laurent factors multiply into the single stalk factor's
/// weight, if there is one.
inline LocalizationClass product(std::span<const LocalizationClass> classes) {
  if (classes.empty()) throw DomainError("product of an empty list of classes");
  const int n = classes.front().n(), d = classes.front().d();
  int stalks = 0;
  for (const auto& c : classes) {
    if (c.n() != n || c.d() != d) throw DimensionError("classes live on different Grassmannians");
    if (!c.is_polynomial()) ++stalks;
  }
  if (stalks > 1) throw DomainError("unsupported product: more than one stalk-form factor");
  LocalizationClass out(n, d);
  for (Subset I : out.fixed_points()) {
    LaurentPoly w = LaurentPoly::constant(static_cast<std::size_t>(n), 1);
    std::optional<ConeSeries> series;
    for (const auto& c : classes) {
      const auto& v = c.at(I);
      if (const auto* p = std::get_if<LaurentPoly>(&v)) {
        w *= *p;
      } else {
        const auto& s = std::get<Stalk>(v);
        w *= s.weight;
        series = s.series;
      }
    }
    if (series)
      out.set(I, Stalk{std::move(*series), std::move(w)});
    else
      out.set(I, std::move(w));
  }
  return out;
}

inline LocalizationClass product(const LocalizationClass& a, const LocalizationClass& b) {
  const LocalizationClass both[] = {a, b};
  return product(both);
}

struct MomentGraphResult {
  bool ok = true;
  Subset S = 0;
  int i = 0;
  int j = 0;
  explicit operator bool() const { return ok; }
  std::string describe() const {
    if (ok) return "ok";
    return "congruence fails for S=" + subset::to_string(S) + ", i=" + std::to_string(i) +
           ", j=" + std::to_string(j);
  }
};

/// Checks c(S+i) == c(S+j) mod (1 - t_i/t_j) along every moment-graph edge.
/// The first failure in lex order of S, then (i, j), is reported.
inline MomentGraphResult check_moment_graph(const LocalizationClass& c) {
  const int n = c.n(), d = c.d();
  if (d == 0 || d == n) return {};
  for (Subset S : subset::k_subsets(n, d - 1)) {
    for (int i = 1; i <= n; ++i) {
      if (subset::contains(S, i)) continue;
      for (int j = i + 1; j <= n; ++j) {
        if (subset::contains(S, j)) continue;
        const auto& a = c.poly(S | subset::single(i));
        const auto& b = c.poly(S | subset::single(j));
        if (!congruent_mod_binomial(a, b, i, j)) return {false, S, i, j};
      }
    }
  }
  return {};
}

}  // namespace ktm
