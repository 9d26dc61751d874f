/*
 * Copyright 2026 The DSA Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DSA_CONSTRUCTION_HPP_
#define DSA_CONSTRUCTION_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/linalg.hpp"
#include "dsa/rank_condition.hpp"
#include "dsa/rational.hpp"
#include "dsa/scheme.hpp"

namespace dsa::scheme {

// True when the rank condition holds for every user and every collusion set
// of size at most T.
inline bool rank_condition_everywhere(const Precoder& p) {
  const int K = p.params().K;
  for (int k = 0; k < K; ++k) {
    for (const auto& t : audit::collusion_sets(K, k, p.params().T)) {
      if (!audit::rank_condition(p, k, t).ok) return false;
    }
  }
  return true;
}

struct BuildResult {
  Precoder precoder;
  std::uint64_t seed;      // seed of the accepted draw
  unsigned attempts;       // draws made, including the accepted one
};

// Randomized construction at L = m C(K-T-1,G), L_S = m (K-T-2). Draw i uses
// seed + i; the first draw that satisfies the rank condition for every
// (user, collusion set) is returned.
inline BuildResult build_precoder_verbose(const SchemeParams& params, std::uint64_t seed,
                                          unsigned max_retries) {
  if (!params.is_feasible()) {
    throw Error("no precoder exists for infeasible parameters (K=" +
                std::to_string(params.K) + ", T=" + std::to_string(params.T) +
                ", G=" + std::to_string(params.G) + ")");
  }
  const unsigned draws = std::max(1u, max_retries);
  for (unsigned i = 0; i < draws; ++i) {
    auto p = random_zero_sum_precoder(params, params.input_len(), params.key_len(), seed + i);
    if (rank_condition_everywhere(p)) return {std::move(p), seed + i, i + 1};
  }
  throw ConstructionFailed("no rank-valid precoder for seeds " + std::to_string(seed) +
                               ".." + std::to_string(seed + draws - 1) +
                               "; increase q or m",
                           seed, seed + draws - 1);
}

inline Precoder build_precoder(const SchemeParams& params, std::uint64_t seed,
                               unsigned max_retries) {
  return build_precoder_verbose(params, seed, max_retries).precoder;
}

// Deterministic existence witness for the rank condition.
//
// For n surviving users and group size G it builds, without randomness, a
// zero-colluder coefficient matrix H' whose rank is (n-1) L'. Each permutation
// pi of the n users contributes one input symbol per user and a path of n-1
// scalar keys: the i-th key lives in the group of G cyclically consecutive
// users starting at pi(i), enters user pi(i) with +1 and user pi(i+1) with -1.
// Over all n! permutations every G-subset is used equally often, which gives
//   L'   = n!
//   L_S' = (n-1) G! (n-G)!   so that   L_S'/L' = (n-1)/C(n,G).
// Repetitions use disjoint symbols, so the rank is n! times the rank n-1 of a
// path's incidence matrix. Only meant for small n (n! blocks).
struct ReferenceWitness {
  int users = 0;
  int group_size = 0;
  std::size_t input_len = 0;
  std::size_t key_len = 0;
  std::vector<Group> groups;
  linalg::Matrix matrix;  // (n L') x (C(n,G) L_S')
  std::size_t required_rank = 0;
};

inline ReferenceWitness reference_witness(int n, int G, const gf::Field& field) {
  if (n < 2 || G < 2 || G > n || n > 6) {
    throw Error("reference witness needs 2 <= G <= n <= 6");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= static_cast<std::size_t>(i);

  auto groups = all_groups(n, G);
  std::size_t per_group = static_cast<std::size_t>(n - 1);
  for (int i = 2; i <= G; ++i) per_group *= static_cast<std::size_t>(i);
  for (int i = 2; i <= n - G; ++i) per_group *= static_cast<std::size_t>(i);

  ReferenceWitness w{n,
                     G,
                     factorial,
                     per_group,
                     groups,
                     linalg::Matrix(field, n * factorial, groups.size() * per_group),
                     static_cast<std::size_t>(n - 1) * factorial};

  std::vector<std::size_t> used(groups.size(), 0);
  std::size_t rep = 0;
  do {
    for (int i = 0; i + 1 < n; ++i) {
      Group g;
      for (int j = 0; j < G; ++j) g.push_back(perm[(i + j) % n]);
      std::sort(g.begin(), g.end());
      const std::size_t gi = group_index(groups, g);
      const std::size_t col = gi * per_group + used[gi]++;
      w.matrix.set(static_cast<std::size_t>(perm[i]) * factorial + rep, col, 1);
      w.matrix.set(static_cast<std::size_t>(perm[i + 1]) * factorial + rep, col,
                   field.neg(1 % field.modulus()));
    }
    ++rep;
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (auto u : used) {
    if (u != per_group) throw Error("reference witness: unbalanced key usage");
  }
  return w;
}

}  // namespace dsa::scheme

#endif  // DSA_CONSTRUCTION_HPP_
