#pragma once

// Matroid families for property testing: exhaustive small collections and
// random column matroids of small integer matrices.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cones.hpp"
#include "errors.hpp"
#include "matroid.hpp"

namespace ktm::gen {

/// Every rank-d matroid on [n], by filtering all basis collections
/// (2^C(n,d) of them; refused above 2^20).
inline std::vector<Matroid> all_matroids(int n, int d) {
  const auto subsets = subset::k_subsets(n, d);
  if (subsets.size() > 20) throw SizeGuardError("exhaustive enumeration refused");
  std::vector<Matroid> out;
  const std::uint64_t end = std::uint64_t{1} << subsets.size();
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    std::vector<Subset> bases;
    for (std::size_t k = 0; k < subsets.size(); ++k)
      if ((mask >> k) & 1U) bases.push_back(subsets[k]);
    Matroid M(n, d, std::move(bases));
    if (validate(M)) out.push_back(std::move(M));
  }
  return out;
}

/// All matroids with 1 <= n <= max_n, every rank.
inline std::vector<Matroid> exhaustive(int max_n) {
  std::vector<Matroid> out;
  for (int n = 1; n <= max_n; ++n)
    for (int d = 0; d <= n; ++d) {
      auto part = all_matroids(n, d);
      out.insert(out.end(), part.begin(), part.end());
    }
  return out;
}

/// Column matroid of a random d x n integer matrix of rank d. Entries are
/// drawn from [-2, 2]; a column is zeroed with probability `loop_rate`.
inline Matroid random_representable(int n, int d, std::mt19937_64& rng, double loop_rate = 0.05) {
  std::uniform_int_distribution<int> entry(-2, 2);
  std::bernoulli_distribution loop(loop_rate);
  while (true) {
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(d)));
    for (auto& c : cols) {
      const bool zero = loop(rng);
      for (auto& x : c) x = zero ? 0 : entry(rng);
    }
    std::vector<Subset> bases;
    for (Subset S : subset::k_subsets(n, d)) {
      std::vector<std::vector<detail::Wide>> m(static_cast<std::size_t>(d), std::vector<detail::Wide>());
      for (int e : subset::elements(S))
        for (int row = 0; row < d; ++row)
          m[static_cast<std::size_t>(row)].push_back(cols[static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(row)]);
      if (detail::det_sign(std::move(m)) != 0) bases.push_back(S);
    }
    if (!bases.empty()) return Matroid(n, d, std::move(bases));
  }
}

/// A uniformly random permutation of [n], 0-indexed images.
inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) p[static_cast<std::size_t>(k)] = k;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Random valid matroids with ground set sizes drawn from `sizes`: mostly
/// column matroids, with permuted Schubert matroids mixed in.
inline std::vector<Matroid> random_corpus(std::size_t count, const std::vector<int>& sizes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matroid> out;
  while (out.size() < count) {
    const int n = sizes[std::uniform_int_distribution<std::size_t>(0, sizes.size() - 1)(rng)];
    const int d = n < 2 ? n : std::uniform_int_distribution<int>(1, n - 1)(rng);
    if (std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
      std::vector<int> I;
      for (Subset s : subset::k_subsets(n, d)) {
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
          I = subset::elements(s);
          break;
        }
      }
      if (I.empty()) I = subset::elements(subset::k_subsets(n, d).back());
      const auto p = random_permutation(n, rng);
      out.push_back(permuted(schubert(I, n), p));
    } else {
      out.push_back(random_representable(n, d, rng));
    }
  }
  return out;
}

inline bool loop_free_coloop_free(const Matroid& M) {
  const auto st = structure(M);
  return st.loops == 0 && st.coloops == 0;
}

}  // namespace ktm::gen
