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

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "dsa/rng.hpp"

namespace {

TEST(SymbolRng, SameSeedSameStream) {
  dsa::SymbolRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.uniform(101);
    EXPECT_EQ(x, b.uniform(101));
    differs = differs || x != c.uniform(101);
  }
  EXPECT_TRUE(differs);
}

TEST(SymbolRng, EngineMatchesStandardSequence) {
  // The 10000th output of a default-seeded mt19937_64 is fixed by the
  // standard; a seed of 5489 is the default seed.
  dsa::SymbolRng r(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = r.next();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(SymbolRng, SymbolsInRange) {
  dsa::SymbolRng r(7);
  for (std::uint32_t q : {2u, 3u, 5u, 101u, 2147483647u}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(r.uniform(q), q);
  }
}

// Chi-square goodness of fit against the uniform law on F_q. Critical values
// at significance 0.001: df=4 -> 18.47, df=100 -> 149.45.
TEST(SymbolRng, ChiSquareUniform) {
  struct Case {
    std::uint32_t q;
    double critical;
  };
  for (const Case c : {Case{5, 18.47}, Case{101, 149.45}}) {
    dsa::SymbolRng r(2024);
    const int n = 200000;
    std::vector<int> counts(c.q, 0);
    for (int i = 0; i < n; ++i) ++counts[r.uniform(c.q)];
    const double expected = static_cast<double>(n) / c.q;
    double chi2 = 0;
    for (int k : counts) chi2 += (k - expected) * (k - expected) / expected;
    EXPECT_LT(chi2, c.critical) << "q=" << c.q;
  }
}

TEST(DeriveSeed, StreamsDifferAndAreStable) {
  EXPECT_NE(dsa::derive_seed(1, 0), dsa::derive_seed(1, 1));
  EXPECT_NE(dsa::derive_seed(1, 0), dsa::derive_seed(2, 0));
  EXPECT_EQ(dsa::derive_seed(9, 3), dsa::derive_seed(9, 3));
}

}  // namespace
