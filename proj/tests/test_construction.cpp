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

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "dsa/construction.hpp"
#include "dsa/errors.hpp"
#include "dsa/rank_condition.hpp"

namespace {

using dsa::Rational;
using dsa::linalg::Vector;
using namespace dsa::scheme;

TEST(Build, ExampleOneParametersOverF2) {
  auto params = SchemeParams::make(3, 0, 2, 2, 1);
  const auto r = build_precoder_verbose(params, 0, 64);
  // Over F_2 the only valid scalar blocks are 1 and -1 = 1.
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_EQ(r.precoder.block(g, 0).at(0, 0), 1u);
    EXPECT_EQ(r.precoder.block(g, 1).at(0, 0), 1u);
  }
  EXPECT_EQ(r.precoder, fixture_example1());
}

TEST(Build, ExampleTwoFixturePassesRankCondition) {
  EXPECT_TRUE(rank_condition_everywhere(fixture_example2()));
  EXPECT_TRUE(rank_condition_everywhere(fixture_example1()));
}

// At q = 5 only about one draw in twenty satisfies every rank condition, so
// a 16-draw budget succeeds from some starting seeds and not others. The
// seed is pinned; at q = 101 every starting seed tried succeeds.
TEST(Build, ExampleTwoParametersRandom) {
  auto params = SchemeParams::make(5, 1, 2, 5, 1);
  const auto r = build_precoder_verbose(params, 16, 16);
  EXPECT_LE(r.attempts, 16u);
  EXPECT_TRUE(r.precoder.zero_sum());
  EXPECT_TRUE(rank_condition_everywhere(r.precoder));
  // The accepted seed reproduces the same precoder.
  EXPECT_EQ(build_precoder(params, r.seed, 1), r.precoder);
}

TEST(Build, LargeFieldSucceedsFromEverySeed) {
  auto params = SchemeParams::make(5, 1, 2, 101, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_LE(build_precoder_verbose(params, seed, 16).attempts, 16u);
  }
}

TEST(Build, InfeasibleParametersRejected) {
  EXPECT_THROW(build_precoder(SchemeParams::make(5, 1, 1, 5), 0, 4), dsa::Error);
  EXPECT_THROW(build_precoder(SchemeParams::make(5, 1, 4, 5), 0, 4), dsa::Error);
}

TEST(Build, ConstructionFailedReportsSeedRange) {
  // Over F_2 many draws fail; a single retry from a failing seed is
  // rejected with the tried range.
  auto params = SchemeParams::make(4, 0, 2, 2, 1);
  std::uint64_t failing = 0;
  while (rank_condition_everywhere(random_zero_sum_precoder(params, params.input_len(),
                                                            params.key_len(), failing))) {
    ++failing;
  }
  try {
    build_precoder(params, failing, 1);
    FAIL() << "expected ConstructionFailed";
  } catch (const dsa::ConstructionFailed& e) {
    EXPECT_EQ(e.first_seed(), failing);
    EXPECT_EQ(e.last_seed(), failing);
  }
}

// Recovery identity for every feasible triple with K <= 8 and seeded
// realizations: recover(k) + W_k equals the directly summed inputs.
TEST(Build, RecoveryIdentityAcrossGrid) {
  for (int K = 3; K <= 8; ++K) {
    for (int T = 0; T <= K - 3; ++T) {
      for (int G = 2; G <= K - T - 1; ++G) {
        auto params = SchemeParams::make(K, T, G, 101, 1);
        const auto p = build_precoder(params, static_cast<std::uint64_t>(K * 100 + T * 10 + G), 16);
        EXPECT_TRUE(p.zero_sum());
        EXPECT_EQ(Rational(static_cast<long long>(p.key_len()), static_cast<long long>(p.input_len())),
                  capacity(K, T, G).rs_star);
        for (std::uint64_t s = 0; s < 2; ++s) {
          const auto keys = sample_keys(params, s);
          dsa::SymbolRng rng(s + 77);
          std::vector<Vector> w(K, Vector(p.input_len()));
          for (auto& v : w) {
            for (auto& x : v) x = rng.uniform(101);
          }
          Vector total(p.input_len(), 0);
          for (const auto& v : w) {
            for (std::size_t j = 0; j < v.size(); ++j) total[j] = (total[j] + v[j]) % 101;
          }
          std::vector<Message> msgs;
          for (int k = 0; k < K; ++k) msgs.push_back(encode(p, keys, w[k], k));
          for (int k = 0; k < K; ++k) {
            std::vector<Message> rx;
            for (const auto& m : msgs) {
              if (m.user != k) rx.push_back(m);
            }
            auto sum = recover(p, keys, k, rx);
            for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = (sum[j] + w[k][j]) % 101;
            EXPECT_EQ(sum, total) << K << ' ' << T << ' ' << G << " k=" << k;
          }
        }
      }
    }
  }
}

// The permutation witness reaches the required rank at the optimal key
// ratio for every small survivor count.
TEST(ReferenceWitness, RankAndRatio) {
  for (int n = 2; n <= 5; ++n) {
    for (int G = 2; G <= n; ++G) {
      for (std::uint64_t q : {2u, 5u}) {
        dsa::gf::Field f(q);
        const auto w = reference_witness(n, G, f);
        EXPECT_EQ(dsa::linalg::rank(w.matrix), w.required_rank) << n << ' ' << G;
        EXPECT_EQ(Rational(static_cast<long long>(w.key_len), static_cast<long long>(w.input_len)),
                  Rational(n - 1, dsa::binomial(n, G).convert_to<long long>()));
        // Column sums vanish: each key enters once with +1 and once with -1.
        for (std::size_t c = 0; c < w.matrix.cols(); ++c) {
          std::uint32_t s = 0;
          for (std::size_t r = 0; r < w.matrix.rows(); ++r) s = f.add(s, w.matrix.at(r, c));
          EXPECT_EQ(s, 0u);
        }
      }
    }
  }
  EXPECT_THROW(reference_witness(7, 3, dsa::gf::Field(5)), dsa::Error);
}

// Cross-check against the randomized path: for K <= 4 the surviving user
// count n = K - T - 1 admits a witness at the same key ratio as the scheme.
TEST(ReferenceWitness, MatchesSchemeRatioForSmallK) {
  for (int K = 3; K <= 4; ++K) {
    for (int T = 0; T <= K - 3; ++T) {
      for (int G = 2; G <= K - T - 1; ++G) {
        const int n = K - T - 1;
        const auto w = reference_witness(n, G, dsa::gf::Field(2));
        EXPECT_EQ(Rational(static_cast<long long>(w.key_len), static_cast<long long>(w.input_len)),
                  capacity(K, T, G).rs_star);
        EXPECT_EQ(dsa::linalg::rank(w.matrix), w.required_rank);
      }
    }
  }
}

}  // namespace
