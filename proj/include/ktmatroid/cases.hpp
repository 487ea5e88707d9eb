#pragma once

// Batch verification from a JSON case file:
//   {"cases": [{"name": "...", "check": "duality", "matroid": {...}, "m": 1}, ...]}

#include <string>
#include <vector>

#include "identities.hpp"
#include "io.hpp"

namespace ktm {

struct CaseOutcome {
  std::string name;
  std::string check;
  std::vector<CheckResult> results;
  std::string error;  // set when the case could not be run

  bool ok() const {
    if (!error.empty()) return false;
    for (const auto& r : results)
      if (!r.ok) return false;
    return true;
  }
};

namespace detail {

inline int case_int(const io::Json& c, const char* key, int fallback) {
  if (!c.contains(key)) return fallback;
  if (!c[key].is_number_integer()) throw DomainError(std::string("case field \"") + key + "\" must be an integer");
  return c[key].get<int>();
}

inline Matroid case_matroid(const io::Json& c, const char* key) {
  if (!c.contains(key)) throw DomainError(std::string("case needs a \"") + key + "\" matroid");
  auto M = io::matroid_from_json(c[key]);
  require_valid(M);
  return M;
}

inline CheckResult expect_bivariate(const std::string& name, const IntBivariate& got, const io::Json& expected,
                                    std::string_view x, std::string_view y) {
  const auto rendered = io::bivariate_json(got, x, y);
  if (rendered == expected) return {true, name, std::nullopt};
  return {false, name, CheckWitness{"table", rendered.dump(), expected.dump()}};
}

inline SubdivisionWitness case_subdivision(const io::Json& c) {
  SubdivisionWitness w{case_matroid(c, "whole"), {}, {}};
  if (!c.contains("facets") || !c["facets"].is_array()) throw DomainError("valuation case needs \"facets\"");
  for (const auto& f : c["facets"]) {
    auto M = io::matroid_from_json(f);
    require_valid(M);
    w.facets.push_back(std::move(M));
  }
  if (c.contains("faces")) {
    for (const auto& f : c["faces"]) {
      std::uint32_t J = 0;
      for (int j : f.at("J").get<std::vector<int>>()) {
        if (j < 1 || j > static_cast<int>(w.facets.size())) throw DomainError("face index out of range");
        J |= std::uint32_t{1} << (j - 1);
      }
      if (f.at("matroid").is_null()) {
        w.faces.emplace(J, std::nullopt);
      } else {
        auto M = io::matroid_from_json(f.at("matroid"));
        require_valid(M);
        w.faces.emplace(J, std::move(M));
      }
    }
  }
  return w;
}

}  // namespace detail

inline CaseOutcome run_case(const io::Json& c, const IntegrateOptions& opts = {}) {
  CaseOutcome out;
  out.name = c.value("name", std::string("unnamed"));
  out.check = c.value("check", std::string());
  try {
    const int m = detail::case_int(c, "m", 1);
    const std::string& k = out.check;
    if (k == "duality") {
      out.results.push_back(verify_duality(detail::case_matroid(c, "matroid"), m, opts));
    } else if (k == "direct_sum") {
      out.results.push_back(verify_direct_sum(detail::case_matroid(c, "matroid"), detail::case_matroid(c, "other"), m, opts));
    } else if (k == "two_sum") {
      out.results = verify_two_sum(detail::case_matroid(c, "m1"), detail::case_int(c, "i1", 1),
                                   detail::case_matroid(c, "m2"), detail::case_int(c, "i2", 1), m, opts);
    } else if (k == "valuation") {
      out.results.push_back(verify_valuation(detail::case_subdivision(c)));
    } else if (k == "hypersimplex_split") {
      const auto A = subset::from_elements(c.at("A").get<std::vector<int>>());
      out.results.push_back(verify_valuation(
          hypersimplex_split(detail::case_int(c, "d", 0), detail::case_int(c, "n", 0), A, detail::case_int(c, "r", 0))));
    } else if (k == "octahedron") {
      out.results = verify_octahedron_relation(opts);
    } else if (k == "moment_graph") {
      out.results.push_back(verify_moment_graph(detail::case_matroid(c, "matroid")));
    } else if (k == "brion") {
      out.results.push_back(verify_brion(detail::case_matroid(c, "matroid"), opts));
    } else if (k == "rank_oracle") {
      const auto M = detail::case_matroid(c, "matroid");
      CheckResult r{true, "rank oracle", first_difference(F(M, 1, opts), rank_gen_oracle(M))};
      r.ok = !r.witness;
      out.results.push_back(std::move(r));
    } else if (k == "ehrhart") {
      const auto M = detail::case_matroid(c, "matroid");
      const BigInt a = F(M, m, opts).coeff(0, 0).value_or(0), b = ehrhart_count(M, m);
      out.results.push_back({a == b, "ehrhart m=" + std::to_string(m),
                             a == b ? std::nullopt : std::optional(CheckWitness{"F(0,0)", a.str(), b.str()})});
    } else if (k == "tutte") {
      out.results.push_back(detail::expect_bivariate("tutte", tutte(detail::case_matroid(c, "matroid"), opts),
                                                     c.at("expected"), "z", "w"));
    } else if (k == "f") {
      out.results.push_back(detail::expect_bivariate("F m=" + std::to_string(m),
                                                     F(detail::case_matroid(c, "matroid"), m, opts), c.at("expected"),
                                                     "u", "v"));
    } else if (k == "h") {
      const auto got = io::unipoly_json(h_poly(detail::case_matroid(c, "matroid"), opts));
      const auto& expected = c.at("expected");
      out.results.push_back({got == expected, "h",
                             got == expected ? std::nullopt
                                             : std::optional(CheckWitness{"h", got.dump(), expected.dump()})});
    } else {
      out.error = "unknown check \"" + k + "\"";
    }
  } catch (const InternalConsistencyError&) {
    throw;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

inline std::vector<CaseOutcome> run_cases(const io::Json& file, const IntegrateOptions& opts = {}) {
  if (!file.is_object() || !file.contains("cases") || !file["cases"].is_array())
    throw DomainError("case file must be an object with a \"cases\" array");
  std::vector<CaseOutcome> out;
  for (const auto& c : file["cases"]) out.push_back(run_case(c, opts));
  return out;
}

}  // namespace ktm
