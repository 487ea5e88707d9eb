// Acceptance run: one PASS/FAIL line per criterion, with wall time against
// its budget. Exits nonzero if any criterion fails or runs over budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "ktmatroid/ktmatroid.hpp"

using namespace ktm;

namespace {

LaurentPoly L(std::size_t n, const char* s) { return io::parse_laurent(n, s); }
Subset S(std::initializer_list<int> xs) { return subset::from_elements(xs); }
const Matroid& square_pyramid() {
  static const Matroid M = schubert({1, 3}, 4);
  return M;
}

std::string describe(const Matroid& M) { return io::matroid_to_json(M).dump(); }

/// Exhaustive n <= 5 plus 200 random matroids with n in {6, 7}.
const std::vector<Matroid>& corpus() {
  static const std::vector<Matroid> c = [] {
    auto all = gen::exhaustive(5);
    const auto extra = gen::random_corpus(200, {6, 7}, 20240601);
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  }();
  return c;
}

std::vector<Matroid> corpus_up_to(int max_n) {
  std::vector<Matroid> out;
  for (const auto& M : corpus())
    if (M.n() <= max_n) out.push_back(M);
  return out;
}

// Each criterion returns an empty string on success, else a failure detail.
using Criterion = std::function<std::string()>;

std::string golden_y() {
  const auto y = y_poly(square_pyramid());
  const std::pair<Subset, const char*> table[] = {
      {S({1, 2}), "0"},           {S({1, 3}), "1 - t2*t3^-1"}, {S({1, 4}), "1 - t2*t4^-1"},
      {S({2, 3}), "1 - t1*t3^-1"}, {S({2, 4}), "1 - t1*t4^-1"}, {S({3, 4}), "1 - t1*t2*t3^-1*t4^-1"}};
  for (const auto& [I, want] : table)
    if (!(y.poly(I) == L(4, want))) return subset::to_string(I) + ": " + y.poly(I).to_string();
  return {};
}

std::string golden_ft() {
  LaurentBivariate want;
  want.add(0, 0, L(4, "t1*t3 + t2*t3 + t1*t4 + t2*t4 + t3*t4"));
  want.add(1, 0, L(4, "t1 + t2 + t3 + t4"));
  want.add(0, 1, L(4, "t1*t2*t3 + t1*t2*t4 + t1*t3*t4 + t2*t3*t4"));
  want.add(2, 0, L(4, "1"));
  want.add(1, 1, L(4, "t1*t2"));
  want.add(0, 2, L(4, "t1*t2*t3*t4"));
  if (auto w = first_difference(F_T(square_pyramid(), 1), want)) return w->where + ": " + w->lhs;
  return {};
}

std::string golden_tutte() {
  const auto t = to_string(tutte(square_pyramid()), "z", "w");
  if (t != "z + w + z^2 + zw + w^2") return "tutte " + t;
  const auto f = to_string(F(square_pyramid(), 1));
  if (f != "5 + 4u + 4v + u^2 + uv + v^2") return "F " + f;
  return {};
}

std::string golden_h() {
  const auto f0 = to_string(F(square_pyramid(), 0));
  if (f0 != "1 - uv") return "F(M,0) " + f0;
  const auto h = h_poly(square_pyramid()).to_string();
  if (h != "s") return "H " + h;
  return {};
}

std::string oracle_equivalence() {
  for (const auto& M : corpus())
    if (!(F(M, 1) == rank_gen_oracle(M))) return describe(M);
  return {};
}

std::string diagonality() {
  int tested = 0;
  for (const auto& M : corpus()) {
    if (!gen::loop_free_coloop_free(M)) continue;
    ++tested;
    const auto f0 = F(M, 0);
    for (const auto& [k, c] : f0.coeffs())
      if (k.first != k.second) return describe(M) + " has " + bivariate_key(k.first, k.second);
  }
  return tested > 0 ? std::string() : "empty sub-corpus";
}

std::string ehrhart() {
  if (F(uniform(2, 3), 2).coeff(0, 0).value_or(0) != 6) return "U(2,3) at m=2";
  std::vector<Matroid> sample{uniform(2, 3)};
  const auto pool = corpus_up_to(6);
  std::mt19937_64 rng(50);
  while (sample.size() < 50) sample.push_back(pool[rng() % pool.size()]);
  for (const auto& M : sample)
    for (int m = 0; m <= 3; ++m) {
      const BigInt a = F(M, m).coeff(0, 0).value_or(0), b = ehrhart_count(M, m);
      if (a != b) return describe(M) + " m=" + std::to_string(m) + ": " + a.str() + " vs " + b.str();
    }
  return {};
}

std::string moment_graph() {
  for (const auto& M : corpus()) {
    const auto r = check_moment_graph(y_poly(M));
    if (!r) return describe(M) + ": " + r.describe();
  }
  auto y = y_poly(square_pyramid());
  y.set(S({1, 3}), LaurentPoly::constant(4, 1));
  const auto r = check_moment_graph(y);
  if (r || r.S != S({1}) || r.i != 2 || r.j != 3) return "mutated table not caught: " + r.describe();
  return {};
}

std::string brion() {
  for (const auto& M : corpus()) {
    const auto r = verify_brion(M);
    if (!r) return describe(M) + ": " + r.describe();
  }
  return {};
}

std::string flip_calculus() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> num(1, 9), den(1, 7);
  std::vector<Matroid> cones_of = gen::exhaustive(4);
  cones_of.push_back(square_pyramid());
  std::uint64_t seed = 0;
  for (const auto& M : cones_of) {
    const auto n = static_cast<std::size_t>(M.n());
    for (Subset I : M.bases()) {
      const auto s = vertex_cone_series(M, I);
      const auto f = flip(s, FlipOrder::random(n, ++seed));
      for (int good = 0; good < 20;) {
        std::vector<BigRational> t;
        for (std::size_t k = 0; k < n; ++k) t.emplace_back(num(rng), den(rng));
        try {
          if (numeric_eval(s, t) != numeric_eval(f, t)) return describe(M) + " at " + subset::to_string(I);
          ++good;
        } catch (const PoleError&) {
        }
      }
    }
  }
  const auto& sp = square_pyramid();
  const auto ft1 = F_T(sp, 1), ft0 = F_T(sp, 0);
  const auto push = push_to_point(product(y_class(sp), bundle_class(BundleKind::twist, 1, 4, 2)));
  for (std::uint64_t z = 1; z <= 5; ++z) {
    IntegrateOptions o;
    o.order = FlipOrder::random(4, 1000 + z);
    if (!(F_T(sp, 1, o) == ft1)) return "F_T(M,1) depends on the order";
    if (!(F_T(sp, 0, o) == ft0)) return "F_T(M,0) depends on the order";
    if (!(push_to_point(product(y_class(sp), bundle_class(BundleKind::twist, 1, 4, 2)), o) == push))
      return "vertex sum depends on the order";
  }
  return {};
}

std::vector<int> gluable(const Matroid& M) {
  const auto st = structure(M);
  std::vector<int> out;
  for (int e = 1; e <= M.n(); ++e)
    if (!subset::contains(st.loops | st.coloops, e)) out.push_back(e);
  return out;
}

std::string identities() {
  const auto pool = corpus_up_to(6);
  std::mt19937_64 rng(11);
  auto pick = [&](int max_n) {
    while (true) {
      const auto& M = pool[rng() % pool.size()];
      if (M.n() <= max_n && M.n() >= 2) return M;
    }
  };
  for (int k = 0; k < 30; ++k) {
    const auto M = pick(6);
    const int m = k % 3;
    const auto r = verify_duality(M, m);
    if (!r) return describe(M) + ": " + r.describe();
  }
  for (int k = 0; k < 30; ++k) {
    const auto M = pick(4), N = pick(4);
    const auto r = verify_direct_sum(M, N, k % 3);
    if (!r) return describe(M) + " + " + describe(N) + ": " + r.describe();
  }
  for (int k = 0; k < 30;) {
    const auto M = pick(5), N = pick(5);
    if (M.n() + N.n() > 9) continue;
    const auto g1 = gluable(M), g2 = gluable(N);
    if (g1.empty() || g2.empty()) continue;
    const int i1 = g1[rng() % g1.size()], i2 = g2[rng() % g2.size()];
    for (const auto& r : verify_two_sum(M, i1, N, i2, k % 3))
      if (!r) return describe(M) + " 2-sum " + describe(N) + ": " + r.describe();
    ++k;
  }
  if (auto r = verify_valuation(octahedron_witness()); !r) return r.describe();
  for (const auto& r : verify_octahedron_relation())
    if (!r) return r.describe();
  return {};
}

std::string triangulation() {
  for (const auto& M : corpus_up_to(6))
    for (Subset I : M.bases())
      if (auto x = covering_mismatch(vertex_cone_series(M, I), enumerate_cone_points(M, I, 2), 2))
        return describe(M) + " at " + subset::to_string(I) + ", point " + monomial_string(*x);
  return {};
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    double budget_s;
    Criterion run;
  };
  const std::vector<Item> items = {
      {1, "golden y(M) of the square pyramid", 1, golden_y},
      {2, "golden equivariant rank generating function", 1, golden_ft},
      {3, "golden Tutte polynomial and rank generating function", 1, golden_tutte},
      {4, "golden F(M,0) = 1 - uv and H(s) = s", 1, golden_h},
      {5, "F(M,1) equals the rank oracle on the corpus", 120, oracle_equivalence},
      {6, "F(M,0) diagonal on loop-free coloop-free matroids", 120, diagonality},
      {7, "F(M,m)(0,0) equals lattice point counts, m = 0..3", 60, ehrhart},
      {8, "moment graph congruences and mutated-table witness", 60, moment_graph},
      {9, "Brion identity by coefficient extraction", 60, brion},
      {10, "flip invariance and flip-order independence", 60, flip_calculus},
      {11, "duality, direct sum, two-sum and octahedron identities", 300, identities},
      {12, "half-open triangulation exactness in [-2,2]^n", 120, triangulation},
  };
  (void)corpus();
  int failed = 0;
  for (const auto& item : items) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = item.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && secs > item.budget_s) detail = "over budget";
    const bool ok = detail.empty();
    if (!ok) ++failed;
    std::printf("%s %2d  %-56s %8.3fs / %4.0fs%s%s\n", ok ? "PASS" : "FAIL", item.id, item.name, secs, item.budget_s,
                ok ? "" : "  ", detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(items.size()) - failed, items.size());
  return failed == 0 ? 0 : 1;
}
