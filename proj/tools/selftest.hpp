#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ktmatroid/ktmatroid.hpp"

namespace ktm::selftest {

struct Item {
  std::string name;
  bool ok = false;
  std::string detail;
};

namespace detail {

inline LaurentPoly L(std::size_t n, const char* s) { return io::parse_laurent(n, s); }

inline std::string check_square_pyramid_y() {
  const auto y = y_poly(schubert({1, 3}, 4));
  const char* expected[] = {"0", "1 - t2*t3^-1", "1 - t2*t4^-1", "1 - t1*t3^-1", "1 - t1*t4^-1",
                            "1 - t1*t2*t3^-1*t4^-1"};
  for (std::size_t k = 0; k < 6; ++k) {
    const Subset I = y.fixed_points()[k];
    if (!(y.poly(I) == L(4, expected[k])))
      return subset::to_string(I) + ": got " + y.poly(I).to_string() + ", expected " + expected[k];
  }
  return {};
}

inline std::string check_square_pyramid_ft() {
  const auto f = F_T(schubert({1, 3}, 4), 1);
  const std::tuple<int, int, const char*> expected[] = {
      {0, 0, "t1*t3 + t2*t3 + t1*t4 + t2*t4 + t3*t4"},
      {1, 0, "t1 + t2 + t3 + t4"},
      {0, 1, "t1*t2*t3 + t1*t2*t4 + t1*t3*t4 + t2*t3*t4"},
      {2, 0, "1"},
      {1, 1, "t1*t2"},
      {0, 2, "t1*t2*t3*t4"}};
  LaurentBivariate want;
  for (const auto& [p, q, s] : expected) want.add(p, q, L(4, s));
  if (auto w = first_difference(f, want)) return w->where + ": got " + w->lhs + ", expected " + w->rhs;
  return {};
}

inline std::string expect_string(const std::string& got, const std::string& want) {
  return got == want ? std::string() : "got " + got + ", expected " + want;
}

template <typename Pred>
std::string all_of_corpus(const std::vector<Matroid>& corpus, Pred pred) {
  for (const auto& M : corpus) {
    std::string why = pred(M);
    if (!why.empty()) return io::matroid_to_json(M).dump() + ": " + why;
  }
  return {};
}

}  // namespace detail

/// Golden fixtures and reduced-size property checks.
inline std::vector<Item> run() {
  using detail::expect_string;
  const Matroid sp = schubert({1, 3}, 4);
  const auto small = gen::exhaustive(4);
  std::vector<std::pair<std::string, std::function<std::string()>>> checks = {
      {"y(M) of the square pyramid", detail::check_square_pyramid_y},
      {"equivariant rank generating function", detail::check_square_pyramid_ft},
      {"rank generating function", [&] { return expect_string(to_string(F(sp, 1)), "5 + 4u + 4v + u^2 + uv + v^2"); }},
      {"Tutte polynomial", [&] { return expect_string(to_string(tutte(sp), "z", "w"), "z + w + z^2 + zw + w^2"); }},
      {"F at m=0", [&] { return expect_string(to_string(F(sp, 0)), "1 - uv"); }},
      {"h polynomial", [&] { return expect_string(h_poly(sp).to_string(), "s"); }},
      {"pushforward of 1 - uv", [] {
         return expect_string(to_string(pushforward_to_PxP(int_bivariate({{0, 0, 1}, {1, 1, -1}}), 4), "a", "b"),
                              "a + b - ab");
       }},
      {"U(1,2) vertex sum", [] {
         const auto c = product(y_class(uniform(1, 2)), bundle_class(BundleKind::twist, 1, 2, 1));
         return expect_string(push_to_point(c).to_string(), "t2 + t1");
       }},
      {"lattice points of 2 Poly(U(2,3))", [] {
         const auto a = F(uniform(2, 3), 2).coeff(0, 0).value_or(0);
         const auto b = ehrhart_count(uniform(2, 3), 2);
         return a == 6 && b == 6 ? std::string() : "got " + a.str() + " and " + b.str();
       }},
      {"flip order independence", [&] {
         IntegrateOptions o;
         o.order = FlipOrder::random(4, 7);
         return F_T(sp, 1) == F_T(sp, 1, o) ? std::string() : "random order changed F_T";
       }},
      {"Brion identity (n <= 4)", [&] {
         return detail::all_of_corpus(small, [](const Matroid& M) {
           auto r = verify_brion(M);
           return r ? std::string() : r.describe();
         });
       }},
      {"rank oracle equivalence (n <= 4)", [&] {
         return detail::all_of_corpus(small, [](const Matroid& M) {
           return F(M, 1) == rank_gen_oracle(M) ? std::string() : "F(M,1) differs from the oracle";
         });
       }},
      {"moment graph congruences (n <= 4)", [&] {
         return detail::all_of_corpus(small, [](const Matroid& M) {
           auto r = verify_moment_graph(M);
           return r ? std::string() : r.describe();
         });
       }},
      {"triangulation exactness (n <= 4)", [&] {
         return detail::all_of_corpus(small, [](const Matroid& M) {
           for (Subset I : M.bases())
             if (covering_mismatch(vertex_cone_series(M, I), enumerate_cone_points(M, I, 2), 2))
               return "cover of " + subset::to_string(I) + " is not exact";
           return std::string();
         });
       }},
      {"octahedron valuation", [] {
         auto r = verify_valuation(octahedron_witness());
         return r ? std::string() : r.describe();
       }},
      {"octahedron relation", [] {
         for (const auto& r : verify_octahedron_relation())
           if (!r) return r.describe();
         return std::string();
       }},
      {"duality", [&] {
         auto r = verify_duality(sp, 1);
         return r ? std::string() : r.describe();
       }},
      {"direct sum", [] {
         auto r = verify_direct_sum(uniform(1, 2), uniform(1, 2), 0);
         return r ? std::string() : r.describe();
       }},
      {"two-sum", [] {
         for (const auto& r : verify_two_sum(uniform(2, 3), 1, uniform(1, 2), 1, 0))
           if (!r) return r.describe();
         return std::string();
       }},
  };
  std::vector<Item> out;
  for (auto& [name, fn] : checks) {
    Item item{name, false, {}};
    try {
      item.detail = fn();
      item.ok = item.detail.empty();
    } catch (const std::exception& e) {
      item.detail = e.what();
    }
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace ktm::selftest
