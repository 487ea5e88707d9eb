#pragma once

// Executable checks of the structural identities satisfied by y(M) and F^m.

#include <bit>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integrals.hpp"
#include "kclass.hpp"
#include "laurent.hpp"
#include "matroid.hpp"

namespace ktm {

struct CheckWitness {
  std::string where;
  std::string lhs;
  std::string rhs;
};

struct CheckResult {
  bool ok = true;
  std::string name;
  std::optional<CheckWitness> witness;

  explicit operator bool() const { return ok; }
  std::string describe() const {
    if (ok) return name + ": ok";
    std::string s = name + ": FAILED";
    if (witness) s += " at " + witness->where + " (lhs " + witness->lhs + ", rhs " + witness->rhs + ")";
    return s;
  }
};

/// First differing slot of two bivariate tables, or nullopt when equal.
template <typename C>
std::optional<CheckWitness> first_difference(const BivariatePoly<C>& a, const BivariatePoly<C>& b,
                                             std::string_view x = "u", std::string_view y = "v") {
  std::set<std::pair<int, int>, GradedLess> slots;
  for (const auto& [k, c] : a.coeffs()) slots.insert(k);
  for (const auto& [k, c] : b.coeffs()) slots.insert(k);
  auto render = [](const std::optional<C>& c) -> std::string {
    if (!c) return "0";
    if constexpr (std::is_same_v<C, BigInt>)
      return c->str();
    else
      return c->to_string();
  };
  for (const auto& k : slots) {
    auto ca = a.coeff(k.first, k.second), cb = b.coeff(k.first, k.second);
    if (ca.has_value() != cb.has_value() || (ca && !(*ca == *cb)))
      return CheckWitness{"slot " + bivariate_key(k.first, k.second, x, y), render(ca), render(cb)};
  }
  return std::nullopt;
}

/// Brion: sum_I t^{e_I} hilb(Cone_I(M)) = sum over bases of t^{e_I}, computed by
/// pushing y(M) * O(1) to a point.
inline CheckResult verify_brion(const Matroid& M, const IntegrateOptions& opts = {}) {
  const auto n = static_cast<std::size_t>(M.n());
  const auto lhs = push_to_point(product(y_class(M, opts.triangulation_seed),
                                         bundle_class(BundleKind::twist, 1, M.n(), M.rank())),
                                 opts);
  LaurentPoly rhs(n);
  for (Subset I : M.bases()) {
    Exponent e(n, 0);
    for (int i : subset::elements(I)) e[static_cast<std::size_t>(i - 1)] = 1;
    rhs.add_term(e, 1);
  }
  if (lhs == rhs) return {true, "brion", std::nullopt};
  return {false, "brion", CheckWitness{"vertex sum", lhs.to_string(), rhs.to_string()}};
}

inline CheckResult verify_moment_graph(const Matroid& M) {
  const auto y = y_poly(M);
  const auto r = check_moment_graph(y);
  if (r) return {true, "moment graph", std::nullopt};
  return {false, "moment graph",
          CheckWitness{r.describe(), y.poly(r.S | subset::single(r.i)).to_string(),
                       y.poly(r.S | subset::single(r.j)).to_string()}};
}

// ---------------------------------------------------------------------------
// Valuation under matroid subdivisions.

/// A subdivision of Poly(whole) into the polytopes of `facets`. For every J of
/// size >= 2, `faces[J]` (J a bitmask over facet indices) is the matroid whose
/// polytope is the intersection of those facets, or nullopt when it is empty.
struct SubdivisionWitness {
  Matroid whole;
  std::vector<Matroid> facets;
  std::map<std::uint32_t, std::optional<Matroid>> faces;
};

/// sum over J of (-1)^|J| y(M_J) vanishes, with M_emptyset = whole.
inline CheckResult verify_valuation(const SubdivisionWitness& w) {
  CheckResult res{true, "valuation", std::nullopt};
  const std::size_t k = w.facets.size();
  if (k == 0 || k > 20) throw DomainError("subdivision witness needs between 1 and 20 facets");
  const int n = w.whole.n(), d = w.whole.rank();
  auto check_shape = [&](const Matroid& M) {
    if (M.n() != n || M.rank() != d) throw DomainError("subdivision pieces live on different (n, d)");
    require_valid(M);
  };
  check_shape(w.whole);
  for (const auto& f : w.facets) check_shape(f);

  LocalizationClass sum = y_poly(w.whole);
  auto accumulate = [&](const Matroid& M, int sign) {
    const auto y = y_poly(M);
    for (Subset I : sum.fixed_points()) {
      LaurentPoly v = sum.poly(I);
      if (sign > 0)
        v += y.poly(I);
      else
        v -= y.poly(I);
      sum.set(I, std::move(v));
    }
  };
  for (std::uint32_t J = 1; J < (std::uint32_t{1} << k); ++J) {
    const int sign = std::popcount(J) % 2 ? -1 : 1;
    if (std::popcount(J) == 1) {
      accumulate(w.facets[static_cast<std::size_t>(std::countr_zero(J))], sign);
      continue;
    }
    auto it = w.faces.find(J);
    if (it == w.faces.end())
      throw DomainError("subdivision witness has no entry for facet set " + std::to_string(J));
    if (!it->second) continue;
    check_shape(*it->second);
    accumulate(*it->second, sign);
  }
  for (Subset I : sum.fixed_points()) {
    if (!sum.poly(I).is_zero()) {
      res.ok = false;
      res.witness = CheckWitness{"fixed point " + subset::to_string(I), sum.poly(I).to_string(), "0"};
      break;
    }
  }
  return res;
}

/// The square-pyramid split of the octahedron U(2,4) along the square {13,14,23,24}.
inline SubdivisionWitness octahedron_witness() {
  SubdivisionWitness w{uniform(2, 4),
                       {from_basis_lists(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}),
                        from_basis_lists(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}})},
                       {}};
  w.faces.emplace(0b11u, from_basis_lists(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
  return w;
}

/// Split of the hypersimplex U(d,n) by the hyperplane sum_{i in A} x_i = r.
inline SubdivisionWitness hypersimplex_split(int d, int n, Subset A, int r) {
  const int a = subset::size(A);
  if (A >= (Subset{1} << n) || r <= std::max(0, d - (n - a)) || r >= std::min(d, a))
    throw DomainError("hyperplane does not split the hypersimplex into two full pieces");
  std::vector<Subset> below, above, on;
  for (Subset B : subset::k_subsets(n, d)) {
    const int s = subset::size(B & A);
    if (s <= r) below.push_back(B);
    if (s >= r) above.push_back(B);
    if (s == r) on.push_back(B);
  }
  SubdivisionWitness w{uniform(d, n), {Matroid(n, d, below), Matroid(n, d, above)}, {}};
  w.faces.emplace(0b11u, Matroid(n, d, on));
  return w;
}

inline std::vector<IntBivariate> twisted_family(const Matroid& M, int max_m, const IntegrateOptions& opts) {
  std::vector<IntBivariate> out;
  for (int m = 0; m <= max_m; ++m) out.push_back(F(M, m, opts));
  return out;
}

/// y(M0) = y(SM(14)) + y(SM(23)) - y(SM(24)) for M0 = {13,14,23,24}, tested
/// through F(., m) for m = 0..3. This is a necessary condition only.
inline std::vector<CheckResult> verify_octahedron_relation(const IntegrateOptions& opts = {}) {
  const Matroid M0 = from_basis_lists(4, {{1, 3}, {2, 3}, {1, 4}, {2, 4}});
  const auto a = twisted_family(M0, 3, opts);
  const auto b = twisted_family(schubert({1, 4}, 4), 3, opts);
  const auto c = twisted_family(schubert({2, 3}, 4), 3, opts);
  const auto e = twisted_family(schubert({2, 4}, 4), 3, opts);
  std::vector<CheckResult> out;
  for (int m = 0; m <= 3; ++m) {
    const auto k = static_cast<std::size_t>(m);
    const auto rhs = b[k] + c[k] - e[k];
    CheckResult r{true, "octahedron relation m=" + std::to_string(m), first_difference(a[k], rhs)};
    r.ok = !r.witness;
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Duality, direct sum and two-sum.

/// t^{m e_[n]} * G(t^{-1})(v, u), the transform taking F^{m,T} of the dual to F^{m,T}.
inline LaurentBivariate duality_transform(const LaurentBivariate& dual_table, int n, int m) {
  const Exponent shift(static_cast<std::size_t>(n), m);
  LaurentBivariate out;
  for (const auto& [k, c] : dual_table.coeffs()) out.add(k.second, k.first, c.inverted().shifted(shift));
  return out;
}

/// Table-level duality check, exposed so corrupted tables can be fed in.
inline CheckResult check_duality_tables(const LaurentBivariate& table, const LaurentBivariate& dual_table, int n,
                                        int m) {
  CheckResult r{true, "duality (equivariant)", first_difference(table, duality_transform(dual_table, n, m))};
  r.ok = !r.witness;
  return r;
}

inline CheckResult verify_duality(const Matroid& M, int m, const IntegrateOptions& opts = {}) {
  const auto t = F_T(M, m, opts);
  const auto td = F_T(dual(M), m, opts);
  auto r = check_duality_tables(t, td, M.n(), m);
  if (!r) return r;
  auto w = first_difference(specialize_all_ones(t), specialize_all_ones(td).swapped());
  if (w) return {false, "duality", w};
  return {true, "duality", std::nullopt};
}

inline CheckResult verify_direct_sum(const Matroid& M, const Matroid& Mp, int m, const IntegrateOptions& opts = {}) {
  const auto n = static_cast<std::size_t>(M.n()), np = static_cast<std::size_t>(Mp.n());
  const auto lhs = F_T(direct_sum(M, Mp), m, opts);
  const auto a = F_T(M, m, opts).map_coeffs([&](const LaurentPoly& c) { return c.embedded(n + np, 0); });
  const auto b = F_T(Mp, m, opts).map_coeffs([&](const LaurentPoly& c) { return c.embedded(n + np, n); });
  CheckResult r{true, "direct sum (equivariant)", first_difference(lhs, a * b)};
  r.ok = !r.witness;
  return r;
}

/// Exact quotient of f by (1 - uv), or nullopt when the division leaves a remainder.
inline std::optional<IntBivariate> divide_by_one_minus_uv(const IntBivariate& f) {
  // Q_{p,q} = F_{p,q} + Q_{p-1,q-1}, run along each diagonal p - q = const.
  std::map<std::pair<int, int>, BigInt> q;
  const int P = f.max_first_degree(), Qd = f.max_second_degree();
  for (int p = 0; p <= P; ++p)
    for (int s = 0; s <= Qd; ++s) {
      BigInt v = f.coeff(p, s).value_or(0);
      if (p > 0 && s > 0) v += q[{p - 1, s - 1}];
      q[{p, s}] = v;
    }
  IntBivariate quotient;
  for (const auto& [k, c] : q) quotient.add(k.first, k.second, c);
  if (!(quotient * int_bivariate({{0, 0, 1}, {1, 1, -1}}) == f)) return std::nullopt;
  return quotient;
}

inline std::vector<CheckResult> verify_two_sum(const Matroid& M1, int i1, const Matroid& M2, int i2, int m,
                                               const IntegrateOptions& opts = {}) {
  const auto ser = connect(M1, i1, M2, i2, Connection::series);
  const auto par = connect(M1, i1, M2, i2, Connection::parallel);
  const auto two = connect(M1, i1, M2, i2, Connection::two_sum);
  const auto fsum = F(direct_sum(M1, M2), m, opts);
  const auto fser = F(ser, m, opts), fpar = F(par, m, opts), ftwo = F(two, m, opts);
  const auto one_v = int_bivariate({{0, 0, 1}, {0, 1, 1}});
  const auto one_u = int_bivariate({{0, 0, 1}, {1, 0, 1}});
  const auto rhs = one_v * fser + one_u * fpar - one_u * one_v * ftwo;

  std::vector<CheckResult> out;
  CheckResult main{true, "two-sum m=" + std::to_string(m), first_difference(fsum, rhs)};
  main.ok = !main.witness;
  out.push_back(std::move(main));
  if (m != 0) return out;

  auto quotient = divide_by_one_minus_uv(fsum);
  if (!quotient) {
    out.push_back({false, "two-sum collapse", CheckWitness{"division by 1 - uv", to_string(fsum), "remainder"}});
    return out;
  }
  const std::pair<const char*, const IntBivariate*> parts[] = {
      {"two-sum collapse (two-sum)", &ftwo}, {"two-sum collapse (series)", &fser}, {"two-sum collapse (parallel)", &fpar}};
  for (const auto& [name, f] : parts) {
    CheckResult r{true, name, first_difference(*f, *quotient)};
    r.ok = !r.witness;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ktm
