#include <catch_amalgamated.hpp>

#include <random>

#include "ktmatroid/generators.hpp"
#include "ktmatroid/identities.hpp"
#include "ktmatroid/io.hpp"

using namespace ktm;

namespace {

Matroid square_pyramid() { return schubert({1, 3}, 4); }

void require_all(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    INFO(r.describe());
    CHECK(r);
  }
}

/// Elements of M that are neither loops nor coloops.
std::vector<int> gluable(const Matroid& M) {
  const auto st = structure(M);
  std::vector<int> out;
  for (int e = 1; e <= M.n(); ++e)
    if (!subset::contains(st.loops | st.coloops, e)) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("octahedron valuation") {
  const auto w = octahedron_witness();
  CHECK(verify_valuation(w));

  SubdivisionWitness bad = w;
  bad.faces[0b11u] = from_basis_lists(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const auto r = verify_valuation(bad);
  REQUIRE_FALSE(r);
  REQUIRE(r.witness);
  CHECK(r.witness->rhs == "0");

  SubdivisionWitness missing = w;
  missing.faces.clear();
  CHECK_THROWS_AS(verify_valuation(missing), DomainError);

  SubdivisionWitness wrong_shape = w;
  wrong_shape.faces[0b11u] = uniform(1, 4);
  CHECK_THROWS(verify_valuation(wrong_shape));
}

TEST_CASE("trivial subdivision") {
  const auto M = square_pyramid();
  CHECK(verify_valuation(SubdivisionWitness{M, {M}, {}}));
}

TEST_CASE("hypersimplex splits (n <= 6)") {
  int count = 0;
  for (int n = 2; n <= 6; ++n)
    for (int d = 1; d < n; ++d)
      for (Subset A = 1; A < (Subset{1} << n) - 1; ++A)
        for (int r = 0; r <= d; ++r) {
          const int a = subset::size(A);
          if (r <= std::max(0, d - (n - a)) || r >= std::min(d, a)) {
            CHECK_THROWS_AS(hypersimplex_split(d, n, A, r), DomainError);
            continue;
          }
          const auto w = hypersimplex_split(d, n, A, r);
          for (const auto& f : w.facets) CHECK(validate(f));
          INFO("d=" << d << " n=" << n << " A=" << subset::to_string(A) << " r=" << r);
          CHECK(verify_valuation(w));
          ++count;
        }
  CHECK(count > 100);
}

TEST_CASE("octahedron relation") {
  const auto rs = verify_octahedron_relation();
  CHECK(rs.size() == 4);
  require_all(rs);
}

TEST_CASE("duality") {
  CHECK(verify_duality(square_pyramid(), 1));
  CHECK(verify_duality(uniform(2, 4), 0));
  const auto F0 = F(uniform(2, 4), 0);
  CHECK(F0 == F0.swapped());

  // Corrupted dual table.
  const auto M = square_pyramid();
  const auto t = F_T(M, 1);
  auto td = F_T(dual(M), 1);
  td.add(1, 1, LaurentPoly::monomial({1, 0, 0, 0}));
  const auto r = check_duality_tables(t, td, 4, 1);
  REQUIRE_FALSE(r);
  REQUIRE(r.witness);
  CHECK(r.witness->where == "slot uv");
}

TEST_CASE("direct sum") {
  CHECK(verify_direct_sum(uniform(1, 2), uniform(1, 2), 0));
  CHECK(F(direct_sum(uniform(1, 2), uniform(1, 2)), 0) ==
        int_bivariate({{0, 0, 1}, {1, 1, -1}}) * int_bivariate({{0, 0, 1}, {1, 1, -1}}));
  const auto sb = single_basis({1}, 2);
  CHECK(verify_direct_sum(square_pyramid(), sb, 1));
  CHECK(F(direct_sum(square_pyramid(), sb), 1) == rank_gen_oracle(square_pyramid()) * rank_gen_oracle(sb));
}

TEST_CASE("two-sum") {
  const auto rs = verify_two_sum(uniform(1, 2), 1, uniform(1, 2), 1, 0);
  CHECK(rs.size() == 4);
  require_all(rs);
  const auto q = divide_by_one_minus_uv(F(direct_sum(uniform(1, 2), uniform(1, 2)), 0));
  REQUIRE(q);
  CHECK(*q == int_bivariate({{0, 0, 1}, {1, 1, -1}}));

  require_all(verify_two_sum(uniform(2, 3), 1, uniform(1, 2), 1, 0));
  const auto h = h_poly(uniform(2, 3));
  CHECK(h_poly(connect(uniform(2, 3), 1, uniform(1, 2), 1, Connection::series)) == h);
  CHECK(h_poly(connect(uniform(2, 3), 1, uniform(1, 2), 1, Connection::parallel)) == h);

  require_all(verify_two_sum(uniform(2, 3), 2, uniform(2, 3), 3, 1));
  CHECK_FALSE(divide_by_one_minus_uv(int_bivariate({{0, 0, 1}, {1, 0, 1}})));
}

TEST_CASE("Brion and moment graph wrappers") {
  CHECK(verify_brion(square_pyramid()));
  CHECK(verify_moment_graph(square_pyramid()));
  CHECK(verify_brion(single_basis({2}, 3)));
}

TEST_CASE("identities on random matroids") {
  const auto corpus = gen::random_corpus(16, {3, 4, 5}, 555);
  std::mt19937_64 rng(6);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& M = corpus[k];
    const auto& N = corpus[(k + 3) % corpus.size()];
    const int m = static_cast<int>(k % 3);
    INFO(io::matroid_to_json(M).dump() << " / " << io::matroid_to_json(N).dump() << " m=" << m);
    CHECK(verify_duality(M, m));
    if (M.n() + N.n() <= 8) CHECK(verify_direct_sum(M, N, m));
    const auto g1 = gluable(M), g2 = gluable(N);
    if (g1.empty() || g2.empty() || M.n() + N.n() > 9) continue;
    const int i1 = g1[rng() % g1.size()], i2 = g2[rng() % g2.size()];
    require_all(verify_two_sum(M, i1, N, i2, m));
  }
}

TEST_CASE("first_difference reports the first differing slot in graded order") {
  const auto a = int_bivariate({{0, 0, 1}, {2, 0, 3}});
  const auto b = int_bivariate({{0, 0, 1}, {1, 1, 2}, {2, 0, 4}});
  const auto w = first_difference(a, b);
  REQUIRE(w);
  CHECK(w->where == "slot u^2");
  CHECK(w->lhs == "3");
  CHECK(w->rhs == "4");
  const auto only_uv = first_difference(a, int_bivariate({{0, 0, 1}, {1, 1, 2}, {2, 0, 3}}));
  REQUIRE(only_uv);
  CHECK(only_uv->where == "slot uv");
  CHECK(only_uv->lhs == "0");
  CHECK_FALSE(first_difference(a, a));
}
