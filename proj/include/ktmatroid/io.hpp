#pragma once

// JSON reading and writing for matroids, polynomials and classes.

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integrals.hpp"
#include "kclass.hpp"
#include "laurent.hpp"
#include "matroid.hpp"

namespace ktm::io {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
inline Json bigint_json(const BigInt& c) {
  if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
    return static_cast<long long>(c);
  return c.str();
}

namespace detail {

inline std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidMatroidError(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidMatroidError(std::string(what) + " must contain integers only");
    out.push_back(x.get<int>());
  }
  return out;
}

inline int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InvalidMatroidError(std::string("matroid field \"") + key + "\" must be an integer");
  return j[key].get<int>();
}

inline void check_ground(int n) {
  if (n < 0 || n > kMaxGroundSet) throw InvalidMatroidError("ground set size out of range: " + std::to_string(n));
}

}  // namespace detail

/// Reads `{"n","d","bases"}`, `{"uniform":[d,n]}`, `{"schubert":{"I":[..],"n":n}}`
/// or `{"single_basis":{"I":[..],"n":n}}`. Only structure is checked here.
inline Matroid matroid_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidMatroidError("matroid must be a JSON object");
  if (j.contains("uniform")) {
    const auto v = detail::int_list(j["uniform"], "uniform");
    if (v.size() != 2) throw InvalidMatroidError("uniform expects [d, n]");
    detail::check_ground(v[1]);
    if (v[0] < 0 || v[0] > v[1]) throw InvalidMatroidError("uniform rank out of range");
    return uniform(v[0], v[1]);
  }
  for (const char* key : {"schubert", "single_basis"}) {
    if (!j.contains(key)) continue;
    const auto& s = j[key];
    if (!s.is_object() || !s.contains("I")) throw InvalidMatroidError(std::string(key) + " expects {\"I\": [...], \"n\": n}");
    const int n = detail::get_int(s, "n");
    detail::check_ground(n);
    auto I = detail::int_list(s["I"], "I");
    for (int x : I)
      if (x < 1 || x > n) throw InvalidMatroidError("element " + std::to_string(x) + " outside [1, n]");
    std::sort(I.begin(), I.end());
    if (std::adjacent_find(I.begin(), I.end()) != I.end()) throw InvalidMatroidError("repeated element in I");
    return std::string(key) == "schubert" ? schubert(I, n) : single_basis(I, n);
  }
  const int n = detail::get_int(j, "n");
  const int d = detail::get_int(j, "d");
  detail::check_ground(n);
  if (!j.contains("bases") || !j["bases"].is_array()) throw InvalidMatroidError("matroid needs a \"bases\" array");
  std::vector<Subset> bases;
  for (const auto& b : j["bases"]) {
    const auto elems = detail::int_list(b, "basis");
    if (static_cast<int>(elems.size()) != d)
      throw InvalidMatroidError("basis of size " + std::to_string(elems.size()) + " in a rank " + std::to_string(d) +
                                " matroid");
    Subset s = 0;
    for (int x : elems) {
      if (x < 1 || x > n) throw InvalidMatroidError("element " + std::to_string(x) + " outside [1, n]");
      if (subset::contains(s, x)) throw InvalidMatroidError("repeated element in basis");
      s |= subset::single(x);
    }
    bases.push_back(s);
  }
  try {
    return Matroid(n, d, std::move(bases));
  } catch (const std::invalid_argument& e) {
    throw InvalidMatroidError(e.what());
  }
}

inline Json matroid_to_json(const Matroid& M) {
  Json bases = Json::array();
  for (Subset b : M.bases()) bases.push_back(subset::elements(b));
  return Json{{"n", M.n()}, {"d", M.rank()}, {"bases", std::move(bases)}};
}

/// Graded-order map from monomial keys to integers.
inline Json bivariate_json(const IntBivariate& f, std::string_view x = "u", std::string_view y = "v") {
  Json out = Json::object();
  for (const auto& [k, c] : f.coeffs()) out[bivariate_key(k.first, k.second, x, y)] = bigint_json(c);
  return out;
}

/// Monomial string to coefficient, lexicographic in the exponent.
inline Json laurent_json(const LaurentPoly& f) {
  Json out = Json::object();
  for (const auto& [e, c] : f.terms()) out[monomial_string(e)] = bigint_json(c);
  return out;
}

inline Json laurent_bivariate_json(const LaurentBivariate& f) {
  Json out = Json::object();
  for (const auto& [k, c] : f.coeffs()) out[bivariate_key(k.first, k.second)] = laurent_json(c);
  return out;
}

inline Json unipoly_json(const UniPoly& f, std::string_view var = "s") {
  Json out = Json::object();
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    if (f.coeffs[k] == 0) continue;
    std::string key = k == 0 ? "1" : std::string(var) + (k > 1 ? "^" + std::to_string(k) : "");
    out[key] = bigint_json(f.coeffs[k]);
  }
  return out;
}

/// Parses the canonical rendering, e.g. "1 - t1*t3^-1" or "2*t1 + t2^2".
inline LaurentPoly parse_laurent(std::size_t n, std::string_view text) {
  LaurentPoly out(n);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw DomainError("cannot parse polynomial at offset " + std::to_string(pos) + ": " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  auto read_int = [&]() -> long long {
    std::size_t start = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || (text[start] == '-' && pos == start + 1)) fail("expected an integer");
    return std::stoll(std::string(text.substr(start, pos - start)));
  };
  skip_ws();
  if (text.substr(pos) == "0") return out;
  int sign = 1;
  if (pos < text.size() && text[pos] == '-') {
    sign = -1;
    ++pos;
    skip_ws();
  }
  while (true) {
    BigInt coeff = sign;
    Exponent e(n, 0);
    bool any = false;
    while (true) {
      if (pos < text.size() && text[pos] == 't') {
        ++pos;
        const long long var = read_int();
        if (var < 1 || var > static_cast<long long>(n)) fail("variable out of range");
        long long power = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          power = read_int();
        }
        e[static_cast<std::size_t>(var - 1)] += static_cast<int>(power);
      } else {
        coeff *= read_int();
      }
      any = true;
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    out.add_term(e, coeff);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+' && text[pos] != '-') fail("expected + or -");
    sign = text[pos] == '-' ? -1 : 1;
    ++pos;
    skip_ws();
  }
  return out;
}

/// Polynomial-form class as a map from fixed points to polynomial strings.
inline Json class_json(const LocalizationClass& c) {
  Json out = Json::object();
  for (Subset I : c.fixed_points()) out[subset::to_string(I)] = c.poly(I).to_string();
  return out;
}

}  // namespace ktm::io
