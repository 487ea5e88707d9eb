#pragma once

// Sparse integer Laurent polynomials in t_1..t_n and bivariate polynomials
// over them. Coefficients are arbitrary precision; nothing here touches
// floating point.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace ktm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exponent vector of a monomial t^a; index k holds the power of t_{k+1}.
using Exponent = std::vector<int>;

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DimensionError("exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

inline Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DimensionError("exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

inline Exponent operator-(const Exponent& a) {
  Exponent r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = -a[k];
  return r;
}

inline Exponent scaled(const Exponent& a, int m) {
  Exponent r(a);
  for (auto& x : r) x *= m;
  return r;
}

inline int degree(const Exponent& a) {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

/// `t1*t3^-1`, `1` for the zero exponent.
inline std::string monomial_string(const Exponent& a) {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += 't' + std::to_string(k + 1);
    if (a[k] != 1) out += '^' + std::to_string(a[k]);
  }
  return out.empty() ? "1" : out;
}

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t n) : n_(n) {}

  static LaurentPoly constant(std::size_t n, const BigInt& c) {
    LaurentPoly p(n);
    p.add_term(Exponent(n, 0), c);
    return p;
  }

  static LaurentPoly monomial(const Exponent& a, const BigInt& c = 1) {
    LaurentPoly p(a.size());
    p.add_term(a, c);
    return p;
  }

  /// 1 - t^a
  static LaurentPoly one_minus(const Exponent& a) {
    LaurentPoly p = constant(a.size(), 1);
    p.add_term(a, -1);
    return p;
  }

  std::size_t ambient() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  BigInt coeff(const Exponent& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add_term(const Exponent& a, const BigInt& c) {
    if (a.size() != n_) throw DimensionError("monomial length " + std::to_string(a.size()) +
                                             " in ambient " + std::to_string(n_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                              terms_.begin()->first.end(),
                                              [](int x) { return x == 0; }));
  }

  /// Value of a constant polynomial; throws otherwise.
  BigInt constant_value() const {
    if (!is_constant()) throw DomainError("not a constant Laurent polynomial: " + to_string());
    return terms_.empty() ? BigInt(0) : terms_.begin()->second;
  }

  /// Common total degree of all terms, or nullopt if mixed (zero has none).
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [a, c] : terms_) {
      int d = degree(a);
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return deg;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_same(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  LaurentPoly& operator*=(const BigInt& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= BigInt(-1); }
  friend LaurentPoly operator*(LaurentPoly a, const BigInt& s) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_same(b);
    LaurentPoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Multiply by t^a.
  LaurentPoly shifted(const Exponent& a) const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) r.add_term(e + a, c);
    return r;
  }

  /// t_k -> t_k^{-1} for every k.
  LaurentPoly inverted() const {
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) r.add_term(-e, c);
    return r;
  }

  /// Same polynomial in a larger torus; variable k becomes variable k + offset.
  LaurentPoly embedded(std::size_t n_new, std::size_t offset) const {
    if (offset + n_ > n_new) throw DimensionError("embedding does not fit");
    LaurentPoly r(n_new);
    for (const auto& [e, c] : terms_) {
      Exponent b(n_new, 0);
      std::copy(e.begin(), e.end(), b.begin() + static_cast<std::ptrdiff_t>(offset));
      r.add_term(b, c);
    }
    return r;
  }

  /// Rename variables: variable k goes to position perm[k] (0-indexed).
  LaurentPoly permuted(std::span<const int> perm) const {
    if (perm.size() != n_) throw DimensionError("permutation length mismatch");
    LaurentPoly r(n_);
    for (const auto& [e, c] : terms_) {
      Exponent b(n_, 0);
      for (std::size_t k = 0; k < n_; ++k) b[static_cast<std::size_t>(perm[k])] = e[k];
      r.add_term(b, c);
    }
    return r;
  }

  /// Canonical rendering, terms in ascending lexicographic exponent order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      std::string mono = monomial_string(e);
      if (mono == "1") {
        os << mag;
      } else {
        if (mag != 1) os << mag << '*';
        os << mono;
      }
    }
    return os.str();
  }

 private:
  void check_same(const LaurentPoly& o) const {
    if (n_ != o.n_)
      throw DimensionError("Laurent ambient mismatch: " + std::to_string(n_) + " vs " +
                           std::to_string(o.n_));
  }

  std::size_t n_ = 0;
  TermMap terms_;
};

enum class ArithKind { add, sub, mul };

inline LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return a + b;
    case ArithKind::sub: return a - b;
    case ArithKind::mul: return a * b;
  }
  return LaurentPoly(a.ambient());
}

/// Elementary symmetric polynomial e_k of the given monomials. An out of range
/// k yields 0 and raises the optional flag.
inline LaurentPoly elem_sym(std::size_t n, int k, std::span<const Exponent> monomials,
                            bool* out_of_range = nullptr) {
  if (out_of_range) *out_of_range = false;
  if (k < 0 || static_cast<std::size_t>(k) > monomials.size()) {
    if (out_of_range) *out_of_range = true;
    return LaurentPoly(n);
  }
  std::vector<LaurentPoly> e(static_cast<std::size_t>(k) + 1, LaurentPoly(n));
  e[0] = LaurentPoly::constant(n, 1);
  for (const auto& m : monomials) {
    for (std::size_t j = static_cast<std::size_t>(k); j >= 1; --j)
      e[j] += e[j - 1].shifted(m);
  }
  return e[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------
// Bivariate polynomials in formal u, v over a coefficient ring C.

inline bool coefficient_is_zero(const BigInt& c) { return c == 0; }
inline bool coefficient_is_zero(const LaurentPoly& c) { return c.is_zero(); }

/// `1`, `u`, `u^2v`, `uv^3` style key with caller-chosen variable names.
inline std::string bivariate_key(int p, int q, std::string_view x = "u", std::string_view y = "v") {
  std::string out;
  if (p > 0) {
    out += x;
    if (p > 1) out += '^' + std::to_string(p);
  }
  if (q > 0) {
    out += y;
    if (q > 1) out += '^' + std::to_string(q);
  }
  return out.empty() ? "1" : out;
}

/// Graded order used for rendering: total degree ascending, then the first
/// variable's degree descending.
struct GradedLess {
  bool operator()(const std::pair<int, int>& a, const std::pair<int, int>& b) const {
    int da = a.first + a.second, db = b.first + b.second;
    if (da != db) return da < db;
    return a.first > b.first;
  }
};

template <typename C>
class BivariatePoly {
 public:
  using Slot = std::pair<int, int>;
  using CoeffMap = std::map<Slot, C, GradedLess>;

  BivariatePoly() = default;

  static BivariatePoly single(int p, int q, C c) {
    BivariatePoly b;
    b.add(p, q, std::move(c));
    return b;
  }

  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  std::optional<C> coeff(int p, int q) const {
    auto it = coeffs_.find({p, q});
    if (it == coeffs_.end()) return std::nullopt;
    return it->second;
  }

  void add(int p, int q, C c) {
    if (p < 0 || q < 0) throw DomainError("negative u/v degree");
    if (coefficient_is_zero(c)) return;
    auto it = coeffs_.find({p, q});
    if (it == coeffs_.end()) {
      coeffs_.emplace(Slot{p, q}, std::move(c));
    } else {
      it->second += c;
      if (coefficient_is_zero(it->second)) coeffs_.erase(it);
    }
  }

  BivariatePoly& operator+=(const BivariatePoly& o) {
    for (const auto& [k, c] : o.coeffs_) add(k.first, k.second, c);
    return *this;
  }
  BivariatePoly& operator-=(const BivariatePoly& o) {
    for (const auto& [k, c] : o.coeffs_) add(k.first, k.second, -c);
    return *this;
  }
  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r;
    for (const auto& [ka, ca] : a.coeffs_)
      for (const auto& [kb, cb] : b.coeffs_)
        r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// (u, v) -> (v, u)
  BivariatePoly swapped() const {
    BivariatePoly r;
    for (const auto& [k, c] : coeffs_) r.add(k.second, k.first, c);
    return r;
  }

  template <typename F>
  auto map_coeffs(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    BivariatePoly<D> r;
    for (const auto& [k, c] : coeffs_) r.add(k.first, k.second, f(c));
    return r;
  }

  int max_first_degree() const {
    int m = -1;
    for (const auto& [k, c] : coeffs_) m = std::max(m, k.first);
    return m;
  }
  int max_second_degree() const {
    int m = -1;
    for (const auto& [k, c] : coeffs_) m = std::max(m, k.second);
    return m;
  }

 private:
  CoeffMap coeffs_;
};

using IntBivariate = BivariatePoly<BigInt>;
using LaurentBivariate = BivariatePoly<LaurentPoly>;

/// Integer bivariate polynomial from a {(p,q): c} list, for fixtures.
inline IntBivariate int_bivariate(std::initializer_list<std::tuple<int, int, long long>> terms) {
  IntBivariate r;
  for (const auto& [p, q, c] : terms) r.add(p, q, BigInt(c));
  return r;
}

inline std::string to_string(const IntBivariate& f, std::string_view x = "u",
                             std::string_view y = "v") {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : f.coeffs()) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string key = bivariate_key(k.first, k.second, x, y);
    if (key == "1") {
      os << mag;
    } else {
      if (mag != 1) os << mag;
      os << key;
    }
  }
  return os.str();
}

inline std::string to_string(const LaurentBivariate& f, std::string_view x = "u",
                             std::string_view y = "v") {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : f.coeffs()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c.to_string() << ")*" << bivariate_key(k.first, k.second, x, y);
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << f.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const IntBivariate& f) { return os << to_string(f); }
inline std::ostream& operator<<(std::ostream& os, const LaurentBivariate& f) { return os << to_string(f); }

// ---------------------------------------------------------------------------
// Specializations.

/// Sends every character to 1.
inline BigInt specialize_all_ones(const LaurentPoly& f) {
  BigInt s = 0;
  for (const auto& [e, c] : f.terms()) s += c;
  return s;
}

inline IntBivariate specialize_all_ones(const LaurentBivariate& f) {
  return f.map_coeffs([](const LaurentPoly& c) { return specialize_all_ones(c); });
}

/// Substitutes t_i := t_j (1-indexed).
inline LaurentPoly specialize_equate(const LaurentPoly& f, int i, int j) {
  const auto n = static_cast<int>(f.ambient());
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw DomainError("equate(" + std::to_string(i) + "," + std::to_string(j) +
                      ") out of range for n=" + std::to_string(n));
  LaurentPoly r(f.ambient());
  for (const auto& [e, c] : f.terms()) {
    Exponent b = e;
    b[static_cast<std::size_t>(j - 1)] += b[static_cast<std::size_t>(i - 1)];
    b[static_cast<std::size_t>(i - 1)] = 0;
    r.add_term(b, c);
  }
  return r;
}

/// a == b modulo (1 - t_i t_j^{-1}).
inline bool congruent_mod_binomial(const LaurentPoly& a, const LaurentPoly& b, int i, int j) {
  return specialize_equate(a, i, j) == specialize_equate(b, i, j);
}

/// Exact substitution u := u + a, v := v + b (binomial expansion).
inline IntBivariate shift_variables(const IntBivariate& f, long long a, long long b) {
  auto binom = [](int n, int k) {
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  auto power = [](long long base, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };
  IntBivariate r;
  for (const auto& [k, c] : f.coeffs()) {
    auto [p, q] = k;
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= q; ++j)
        r.add(i, j, c * binom(p, i) * power(a, p - i) * binom(q, j) * power(b, q - j));
  }
  return r;
}

inline BigInt evaluate(const IntBivariate& f, const BigInt& u, const BigInt& v) {
  BigInt s = 0;
  for (const auto& [k, c] : f.coeffs()) {
    BigInt term = c;
    for (int i = 0; i < k.first; ++i) term *= u;
    for (int i = 0; i < k.second; ++i) term *= v;
    s += term;
  }
  return s;
}

}  // namespace ktm
