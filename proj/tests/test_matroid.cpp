#include <catch_amalgamated.hpp>

#include <random>

#include "ktmatroid/generators.hpp"
#include "ktmatroid/matroid.hpp"

using namespace ktm;

namespace {

Matroid square_pyramid() { return from_basis_lists(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}); }

/// Rank by greedy independence over the basis family, independent of `rank`.
int rank_by_independence(const Matroid& M, Subset S) {
  Subset indep = 0;
  for (int e : subset::elements(S)) {
    const Subset trial = indep | subset::single(e);
    for (Subset b : M.bases())
      if ((trial & b) == trial) {
        indep = trial;
        break;
      }
  }
  return subset::size(indep);
}

}  // namespace

TEST_CASE("validate: basis exchange") {
  CHECK(validate(square_pyramid()));
  CHECK(validate(uniform(2, 4)));
  const auto bad = validate(from_basis_lists(4, {{1, 2}, {3, 4}}));
  REQUIRE_FALSE(bad);
  REQUIRE(bad.witness);
  CHECK(bad.describe().find("exchange") != std::string::npos);
  CHECK_THROWS_AS(require_valid(from_basis_lists(4, {{1, 2}, {3, 4}})), InvalidMatroidError);
}

TEST_CASE("structural checks in the constructor") {
  CHECK_THROWS_AS(Matroid(4, 2, {}), InvalidMatroidError);
  CHECK_THROWS_AS(from_basis_lists(4, {{1, 5}}), InvalidMatroidError);
  CHECK_THROWS_AS(from_basis_lists(4, {{1, 2}, {1}}), InvalidMatroidError);
  CHECK_THROWS_AS(Matroid(65, 1, {1}), InvalidMatroidError);
}

TEST_CASE("rank") {
  const auto M = square_pyramid();
  CHECK(rank(M, subset::from_elements({1, 2})) == 1);
  CHECK(rank(M, 0) == 0);
  CHECK(rank(M, subset::full(4)) == 2);
  for (Subset S = 0; S < 16; ++S) CHECK(rank(M, S) == rank_by_independence(M, S));
}

TEST_CASE("constructors") {
  CHECK(schubert({1, 3}, 4) == square_pyramid());
  CHECK(uniform(1, 2) == from_basis_lists(2, {{1}, {2}}));
  CHECK(single_basis({1, 2}, 4) == from_basis_lists(4, {{1, 2}}));
  CHECK(subset::to_string(schubert({1, 3}, 4).bases().front()) == "{1,3}");
}

TEST_CASE("dual and direct sum") {
  CHECK(dual(uniform(2, 4)) == uniform(2, 4));
  CHECK(dual(square_pyramid()) == from_basis_lists(4, {{2, 4}, {2, 3}, {1, 4}, {1, 3}, {1, 2}}));
  CHECK(direct_sum(uniform(1, 2), uniform(1, 2)) == from_basis_lists(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}}));
}

TEST_CASE("series, parallel and two-sum of U(1,2) with itself") {
  const auto U = uniform(1, 2);
  CHECK(connect(U, 1, U, 1, Connection::series) == uniform(2, 3));
  CHECK(connect(U, 1, U, 1, Connection::parallel) == uniform(1, 3));
  CHECK(connect(U, 1, U, 1, Connection::two_sum) == uniform(1, 2));
}

TEST_CASE("connections reject loops and coloops at the glued element") {
  const auto M = single_basis({1}, 2);  // 1 is a coloop, 2 a loop
  CHECK_THROWS_AS(connect(M, 1, uniform(1, 2), 1, Connection::two_sum), InvalidMatroidError);
  CHECK_THROWS_AS(connect(uniform(1, 2), 1, M, 2, Connection::series), InvalidMatroidError);
}

TEST_CASE("connections produce valid matroids of the right rank") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto M1 = gen::random_representable(4, 2, rng, 0.0);
    const auto M2 = gen::random_representable(3, 1 + trial % 2, rng, 0.0);
    const auto s1 = structure(M1), s2 = structure(M2);
    for (int i1 = 1; i1 <= 4; ++i1) {
      if (subset::contains(s1.loops | s1.coloops, i1)) continue;
      for (int i2 = 1; i2 <= 3; ++i2) {
        if (subset::contains(s2.loops | s2.coloops, i2)) continue;
        const auto ser = connect(M1, i1, M2, i2, Connection::series);
        const auto par = connect(M1, i1, M2, i2, Connection::parallel);
        const auto two = connect(M1, i1, M2, i2, Connection::two_sum);
        CHECK(validate(ser));
        CHECK(validate(par));
        CHECK(validate(two));
        CHECK(ser.rank() == M1.rank() + M2.rank());
        CHECK(par.rank() == M1.rank() + M2.rank() - 1);
        CHECK(two.n() == 5);
      }
    }
  }
}

TEST_CASE("structure") {
  const auto u = structure(uniform(2, 4));
  CHECK(u.loops == 0);
  CHECK(u.coloops == 0);
  CHECK(u.components == 1);
  const auto s = structure(single_basis({1, 2}, 4));
  CHECK(s.coloops == subset::from_elements({1, 2}));
  CHECK(s.loops == subset::from_elements({3, 4}));
  CHECK(s.components == 4);
  CHECK(structure(direct_sum(uniform(1, 2), uniform(1, 2))).components == 2);
}

TEST_CASE("exchange neighbours") {
  const auto M = square_pyramid();
  using P = std::vector<std::pair<int, int>>;
  CHECK(exchange_neighbors(M, subset::from_elements({1, 3})) == P{{1, 2}, {1, 4}, {3, 4}});
  CHECK(exchange_neighbors(M, subset::from_elements({3, 4})) == P{{3, 1}, {4, 1}, {3, 2}, {4, 2}});
  CHECK(exchange_neighbors(uniform(1, 2), subset::from_elements({1})) == P{{1, 2}});
  CHECK_THROWS_AS(exchange_neighbors(M, subset::from_elements({1, 2})), InvalidMatroidError);
}

TEST_CASE("dual is an involution and components add under direct sums") {
  const auto corpus = gen::random_corpus(60, {3, 4, 5, 6}, 17);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& M = corpus[k];
    CHECK(dual(dual(M)) == M);
    const auto& N = corpus[(k + 1) % corpus.size()];
    CHECK(structure(direct_sum(M, N)).components == structure(M).components + structure(N).components);
  }
}

TEST_CASE("rank is monotone and submodular (n <= 8)") {
  const auto corpus = gen::random_corpus(12, {6, 7, 8}, 23);
  for (const auto& M : corpus) {
    const Subset end = Subset{1} << M.n();
    std::vector<int> r(end);
    for (Subset S = 0; S < end; ++S) r[S] = rank(M, S);
    bool ok = true;
    for (Subset A = 0; A < end && ok; ++A)
      for (Subset B = 0; B < end; ++B) {
        if ((A & B) == A && r[A] > r[B]) ok = false;
        if (r[A | B] + r[A & B] > r[A] + r[B]) ok = false;
        if (!ok) break;
      }
    CHECK(ok);
  }
}

TEST_CASE("validity is equivalent to the local exchange condition at every basis") {
  // For each basis I and i in I that some other basis omits, an exchange
  // neighbour (i, j) must exist; on all collections with n <= 4 this local
  // condition agrees with the full exchange axiom.
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= n; ++d) {
      const auto subsets = subset::k_subsets(n, d);
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << subsets.size()); ++mask) {
        std::vector<Subset> bases;
        for (std::size_t k = 0; k < subsets.size(); ++k)
          if ((mask >> k) & 1U) bases.push_back(subsets[k]);
        const Matroid M(n, d, bases);
        bool local = true;
        for (Subset I : M.bases()) {
          for (Subset J : M.bases())
            for (int i : subset::elements(I & ~J)) {
              bool found = false;
              for (int j : subset::elements(J & ~I))
                if (M.is_basis((I & ~subset::single(i)) | subset::single(j))) found = true;
              if (!found) local = false;
            }
        }
        CHECK(static_cast<bool>(validate(M)) == local);
      }
    }
}

TEST_CASE("exhaustive enumeration counts") {
  // Numbers of matroids on a labelled n-set.
  CHECK(gen::exhaustive(3).size() == 2 + 5 + 16);
  std::size_t four = 0;
  for (int d = 0; d <= 4; ++d) four += gen::all_matroids(4, d).size();
  CHECK(four == 68);
}
