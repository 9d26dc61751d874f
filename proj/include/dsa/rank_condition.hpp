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

#ifndef DSA_RANK_CONDITION_HPP_
#define DSA_RANK_CONDITION_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/linalg.hpp"
#include "dsa/rational.hpp"
#include "dsa/scheme.hpp"

namespace dsa::audit {

using Coalition = std::vector<int>;

// Every collusion set for `user`: subsets of the other users of size 0..T,
// ordered by size and lexicographically within a size.
inline std::vector<Coalition> collusion_sets(int K, int user, int max_size) {
  std::vector<int> others;
  for (int i = 0; i < K; ++i) {
    if (i != user) others.push_back(i);
  }
  std::vector<Coalition> out;
  for (int t = 0; t <= max_size && t <= static_cast<int>(others.size()); ++t) {
    auto level = subsets_of(others, t);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// Users outside coalition and user, ascending.
inline std::vector<int> survivors(int K, int user, const Coalition& coalition) {
  std::vector<int> out;
  for (int i = 0; i < K; ++i) {
    if (i != user && std::find(coalition.begin(), coalition.end(), i) == coalition.end()) {
      out.push_back(i);
    }
  }
  return out;
}

inline void check_coalition(const scheme::Precoder& p, int user, const Coalition& coalition) {
  const int K = p.params().K;
  if (user < 0 || user >= K) throw InvalidCollusionSet("user out of range");
  if (static_cast<int>(coalition.size()) > p.params().T) {
    throw InvalidCollusionSet("collusion set " + scheme::format_users(coalition) +
                              " is larger than T=" + std::to_string(p.params().T));
  }
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    int c = coalition[i];
    if (c < 0 || c >= K || c == user) {
      throw InvalidCollusionSet("collusion set " + scheme::format_users(coalition) +
                                " must lie in [K] minus user " + std::to_string(user + 1));
    }
    if (i > 0 && coalition[i - 1] >= c) {
      throw InvalidCollusionSet("collusion set must be strictly ascending");
    }
  }
}

// Coefficients of the keys unknown to the user and its colluders, seen in the
// messages of the remaining users: row blocks are the surviving users, column
// blocks the groups made only of surviving users.
inline linalg::Matrix submatrix_hhat(const scheme::Precoder& p, int user,
                                     const Coalition& coalition) {
  check_coalition(p, user, coalition);
  const auto rest = survivors(p.params().K, user, coalition);
  std::vector<std::size_t> cols;
  for (std::size_t g = 0; g < p.groups().size(); ++g) {
    const auto& grp = p.groups()[g];
    bool inside = std::all_of(grp.begin(), grp.end(), [&](int u) {
      return std::binary_search(rest.begin(), rest.end(), u);
    });
    if (inside) cols.push_back(g);
  }
  linalg::Matrix out(p.params().field, rest.size() * p.input_len(),
                     cols.size() * p.key_len());
  for (std::size_t bi = 0; bi < rest.size(); ++bi) {
    for (std::size_t bj = 0; bj < cols.size(); ++bj) {
      linalg::Matrix b = p.coefficient(rest[bi], cols[bj]);
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          out.set(bi * p.input_len() + r, bj * p.key_len() + c, b.at(r, c));
        }
      }
    }
  }
  return out;
}

struct RankCheck {
  std::size_t required = 0;
  std::size_t achieved = 0;
  bool ok = false;
};

// Security holds for (user, coalition) when the surviving key mixes have rank
// at least (K - |coalition| - 2) L.
inline RankCheck rank_condition(const scheme::Precoder& p, int user,
                                const Coalition& coalition) {
  auto h = submatrix_hhat(p, user, coalition);
  RankCheck rc;
  rc.required = static_cast<std::size_t>(p.params().K - static_cast<int>(coalition.size()) - 2) *
                p.input_len();
  rc.achieved = linalg::rank(h);
  rc.ok = rc.achieved >= rc.required;
  return rc;
}

// Number of (user, collusion set) pairs an exhaustive audit visits.
inline std::size_t pair_count(int K, int T) {
  BigInt per_user = 0;
  for (int t = 0; t <= T; ++t) per_user += binomial(K - 1, t);
  return static_cast<std::size_t>(K) * per_user.convert_to<std::size_t>();
}

}  // namespace dsa::audit

#endif  // DSA_RANK_CONDITION_HPP_
