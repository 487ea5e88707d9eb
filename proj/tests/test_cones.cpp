#include <catch_amalgamated.hpp>

#include <random>

#include "ktmatroid/cones.hpp"
#include "ktmatroid/generators.hpp"
#include "ktmatroid/io.hpp"
#include "ktmatroid/kclass.hpp"

using namespace ktm;

namespace {

Matroid square_pyramid() { return schubert({1, 3}, 4); }
Subset S(std::initializer_list<int> xs) { return subset::from_elements(xs); }

std::vector<BigRational> random_point(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 7);
  std::vector<BigRational> t;
  for (std::size_t k = 0; k < n; ++k) t.emplace_back(num(rng), den(rng));
  return t;
}

}  // namespace

TEST_CASE("closed unimodular vertex cone") {
  const auto s = vertex_cone_series(square_pyramid(), S({1, 3}));
  REQUIRE(s.pieces().size() == 1);
  const auto& p = s.pieces()[0];
  CHECK(p.apex == Exponent{0, 0, 0, 0});
  CHECK(p.rays == std::vector<Exponent>{{-1, 1, 0, 0}, {-1, 0, 0, 1}, {0, 0, -1, 1}});
  CHECK(p.strict == std::vector<bool>{false, false, false});
  CHECK(p.sign == 1);
  CHECK(s.to_string() == "1/((1-t1^-1*t2)*(1-t1^-1*t4)*(1-t3^-1*t4))");
}

TEST_CASE("square vertex cone splits into two pieces") {
  const auto I = S({3, 4});
  const auto s = vertex_cone_series(square_pyramid(), I);
  CHECK(s.pieces().size() == 2);
  for (const auto& p : s.pieces()) CHECK(p.apex == Exponent(4, 0));
  CHECK(clear_denominators(s, tangent_exponents(4, I)) == io::parse_laurent(4, "1 - t1*t2*t3^-1*t4^-1"));
}

TEST_CASE("single exchange and non-bases") {
  const auto s = vertex_cone_series(uniform(1, 2), S({1}));
  REQUIRE(s.pieces().size() == 1);
  CHECK(s.pieces()[0].rays == std::vector<Exponent>{{-1, 1}});
  CHECK(vertex_cone_series(square_pyramid(), S({1, 2})).empty());
  CHECK(enumerate_cone_points(square_pyramid(), S({1, 2}), 3).empty());
  CHECK(enumerate_cone_points(square_pyramid(), S({1, 3}), 0) == std::set<Exponent>{Exponent(4, 0)});
  const auto pts = enumerate_cone_points(square_pyramid(), S({1, 3}), 1);
  for (const Exponent& e : std::vector<Exponent>{{0, 0, 0, 0}, {-1, 1, 0, 0}, {-1, 0, 0, 1}, {0, 0, -1, 1}, {-1, 1, -1, 1}})
    CHECK(pts.count(e) == 1);
}

TEST_CASE("flip in one dimension") {
  const ConeSeries s(1, {HalfOpenCone{{0}, {{-1}}, {false}, 1}});
  const auto f = flip(s, FlipOrder::lex(1));
  REQUIRE(f.pieces().size() == 1);
  CHECK(f.pieces()[0].rays == std::vector<Exponent>{{1}});
  CHECK(f.pieces()[0].strict == std::vector<bool>{true});
  CHECK(f.pieces()[0].sign == -1);
  CHECK(is_pointed(f, FlipOrder::lex(1)));
  CHECK_FALSE(is_pointed(s, FlipOrder::lex(1)));
  CHECK(flip(f, FlipOrder::lex(1)) == f);
  const std::vector<BigRational> t{BigRational(3)};
  CHECK(numeric_eval(s, t) == numeric_eval(f, t));
  CHECK(numeric_eval(s, t) == BigRational(3, 2));
}

TEST_CASE("pointed pieces are unchanged by flipping") {
  const ConeSeries s(2, {HalfOpenCone{{0, 0}, {{1, -1}, {0, 1}}, {true, false}, -1}});
  CHECK(flip(s, FlipOrder::lex(2)) == s);
}

TEST_CASE("numeric evaluation") {
  const ConeSeries s(2, {HalfOpenCone{{0, 0}, {{-1, 1}}, {false}, 1}});
  const std::vector<BigRational> t{BigRational(2), BigRational(1)};
  CHECK(numeric_eval(s, t) == 2);
  CHECK(numeric_eval(flip(s, FlipOrder::lex(2)), t) == 2);
  const std::vector<BigRational> pole{BigRational(1), BigRational(1)};
  CHECK_THROWS_AS(numeric_eval(s, pole), PoleError);
  CHECK_THROWS_AS(numeric_eval(s, std::vector<BigRational>{BigRational(1)}), DimensionError);
}

TEST_CASE("coefficient extraction on a single ray") {
  const ConeSeries s(2, {HalfOpenCone{{0, 0}, {{-1, 1}}, {false}, 1}});
  const FlipOrder up({{0, 1}, {1, 0}});
  const auto f = flip(s, up);
  CHECK(f == s);
  const WeightedSeries terms[] = {{f, LaurentPoly::constant(2, 1)}};
  CHECK(coeff(terms, {-2, 2}) == 1);
  CHECK(coeff(terms, {1, -1}) == 0);
  CHECK_THROWS_AS(coeff(terms, {1, -1, 0}), DimensionError);

  // Under lex the same function expands the other way.
  const WeightedSeries lex_terms[] = {{flip(s, FlipOrder::lex(2)), LaurentPoly::constant(2, 1)}};
  CHECK(coeff(lex_terms, {-2, 2}) == 0);
  CHECK(coeff(lex_terms, {1, -1}) == -1);
}

TEST_CASE("flip orders") {
  CHECK(FlipOrder::lex(3).sign({0, 0, -2}) == -1);
  CHECK(FlipOrder::lex(3).sign({0, 0, 0}) == 0);
  CHECK(FlipOrder::lex(3).less({0, 1, 0}, {1, 0, 0}));
  CHECK_THROWS_AS(FlipOrder({{1, 0}, {2, 0}}), DomainError);
  CHECK_THROWS_AS(FlipOrder({{1, 0}, {2}}), DimensionError);
  CHECK_THROWS_AS(flip(ConeSeries(2, {HalfOpenCone{{0, 0}, {{0, 0}}, {false}, 1}}), FlipOrder::lex(2)), DomainError);
  const auto r = FlipOrder::random(5, 9);
  CHECK(r.ambient() == 5);
  CHECK(r.sign({1, 2, 3, 4, 5}) == -r.sign({-1, -2, -3, -4, -5}));
}

TEST_CASE("malformed pieces are rejected") {
  CHECK_THROWS_AS(ConeSeries(2, {HalfOpenCone{{0}, {}, {}, 1}}), DimensionError);
  CHECK_THROWS_AS(ConeSeries(2, {HalfOpenCone{{0, 0}, {{1, 0}}, {}, 1}}), DomainError);
  CHECK_THROWS_AS(ConeSeries(2, {HalfOpenCone{{0, 0}, {}, {}, 2}}), DomainError);
}

TEST_CASE("empty generator list gives the apex") {
  const auto s = half_open_decomposition({}, 3);
  REQUIRE(s.pieces().size() == 1);
  CHECK(signed_multiplicity(s, {0, 0, 0}) == 1);
  CHECK(signed_multiplicity(s, {1, 0, -1}) == 0);
}

TEST_CASE("half-open covering is exact (n <= 5)") {
  const auto corpus = gen::exhaustive(5);
  std::size_t bad = 0;
  for (const auto& M : corpus)
    for (Subset I : M.bases()) {
      const auto s = vertex_cone_series(M, I);
      for (const auto& p : s.pieces()) {
        PieceSolver solver(p.rays, s.ambient());
        if (!solver.unimodular()) ++bad;
      }
      if (auto x = covering_mismatch(s, enumerate_cone_points(M, I, 2), 2)) {
        ++bad;
        UNSCOPED_INFO(io::matroid_to_json(M).dump() << " at " << subset::to_string(I));
      }
    }
  CHECK(bad == 0);
}

TEST_CASE("half-open covering is exact for another reference seed (n = 6)") {
  const auto corpus = gen::random_corpus(15, {6}, 41);
  for (const auto& M : corpus)
    for (Subset I : M.bases())
      CHECK_FALSE(covering_mismatch(vertex_cone_series(M, I, 12345), enumerate_cone_points(M, I, 2), 2));
}

TEST_CASE("flip preserves the represented function") {
  std::mt19937_64 rng(77);
  const auto corpus = gen::random_corpus(25, {3, 4, 5}, 5);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& M = corpus[k];
    const auto n = static_cast<std::size_t>(M.n());
    const auto order = FlipOrder::random(n, 100 + k);
    for (Subset I : M.bases()) {
      const auto s = vertex_cone_series(M, I);
      const auto f = flip(s, order);
      CHECK(is_pointed(f, order));
      int checked = 0;
      while (checked < 20) {
        const auto t = random_point(n, rng);
        try {
          const auto a = numeric_eval(s, t);
          CHECK(a == numeric_eval(f, t));
          ++checked;
        } catch (const PoleError&) {
        }
      }
    }
  }
}

TEST_CASE("Brion sum by coefficient extraction, order independent, supported on vertices") {
  std::mt19937_64 rng(19);
  const auto corpus = gen::random_corpus(20, {3, 4, 5}, 29);
  for (const auto& M : corpus) {
    const auto n = static_cast<std::size_t>(M.n());
    std::vector<FlipOrder> orders{FlipOrder::lex(n)};
    for (std::uint64_t z = 0; z < 5; ++z) orders.push_back(FlipOrder::random(n, z + 1));
    std::vector<std::vector<WeightedSeries>> per_order;
    for (const auto& order : orders) {
      std::vector<WeightedSeries> terms;
      for (Subset I : M.bases())
        terms.push_back({flip(vertex_cone_series(M, I), order), LaurentPoly::monomial(subset::indicator(I, M.n()))});
      per_order.push_back(std::move(terms));
    }
    for (Subset T : subset::k_subsets(M.n(), M.rank()))
      for (const auto& terms : per_order) CHECK(coeff(terms, subset::indicator(T, M.n())) == (M.is_basis(T) ? 1 : 0));
    // Points of the right degree outside the 0/1 cube lie outside the hull.
    std::uniform_int_distribution<int> coord(-2, 2);
    std::uniform_int_distribution<std::size_t> pos(0, n - 1);
    int outside = 0;
    while (outside < 50) {
      Exponent a(n);
      for (auto& x : a) x = coord(rng);
      int deg = 0;
      for (int x : a) deg += x;
      a[pos(rng)] += M.rank() - deg;
      if (std::all_of(a.begin(), a.end(), [](int x) { return x == 0 || x == 1; })) continue;
      ++outside;
      for (const auto& terms : per_order) CHECK(coeff(terms, a) == 0);
    }
  }
}
