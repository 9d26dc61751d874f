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
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dsa/construction.hpp"
#include "dsa/errors.hpp"
#include "dsa/sim.hpp"

namespace {

using dsa::Rational;
using dsa::linalg::Vector;
namespace scheme = dsa::scheme;
namespace sim = dsa::sim;

Vector direct_sum(const std::vector<Vector>& w, std::uint32_t q) {
  Vector s(w.front().size(), 0);
  for (const auto& v : w) {
    for (std::size_t j = 0; j < v.size(); ++j) s[j] = (s[j] + v[j]) % q;
  }
  return s;
}

TEST(RunRound, ExampleOneAllZero) {
  const auto t = sim::run_round(scheme::fixture_example1(), sim::InputSource::all_zero(), 4);
  EXPECT_TRUE(t.verdict);
  for (const auto& r : t.recovered) EXPECT_EQ(r, (Vector{0}));
}

TEST(RunRound, ExampleTwoSeededAgainstDirectSum) {
  const auto p = scheme::fixture_example2();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = sim::run_round(p, sim::InputSource::seeded_random(), seed);
    EXPECT_TRUE(t.verdict);
    const auto want = direct_sum(t.inputs, 5);
    for (const auto& r : t.recovered) EXPECT_EQ(r, want);
  }
}

TEST(RunRound, UserIndexInputs) {
  auto params = scheme::SchemeParams::make(3, 0, 2, 7, 2);
  const auto p = scheme::build_precoder(params, 0, 16);
  const auto t = sim::run_round(p, sim::InputSource::user_index(), 1);
  EXPECT_TRUE(t.verdict);
  for (const auto& r : t.recovered) EXPECT_EQ(r, Vector(p.input_len(), 6));
}

TEST(RunRound, StructuredInputsRecover) {
  const auto p = scheme::fixture_example2();
  for (const auto& src : {sim::InputSource::all_equal(), sim::InputSource::constant(4),
                          sim::InputSource::one_hot(2, 1), sim::InputSource::user_index()}) {
    const auto t = sim::run_round(p, src, 9);
    EXPECT_TRUE(t.verdict) << src.describe();
    EXPECT_EQ(t.recovered.front(), direct_sum(t.inputs, 5));
  }
}

TEST(RunRound, ParallelMatchesSequential) {
  const auto p = scheme::fixture_example2();
  const auto a = sim::run_round(p, sim::InputSource::seeded_random(), 5, false);
  const auto b = sim::run_round(p, sim::InputSource::seeded_random(), 5, true);
  EXPECT_EQ(a.str(), b.str());
}

TEST(RunRound, BrokenPrecoderFailsVerdict) {
  const auto p = scheme::fixture_example2();
  auto b = p.block(3, 0);
  b.set(1, 1, p.params().field.add(b.at(1, 1), 2));
  const auto t = sim::run_round(p.with_block(3, 0, b), sim::InputSource::seeded_random(), 0);
  EXPECT_FALSE(t.verdict);
}

TEST(Transcript, DeterministicSerialization) {
  const auto p = scheme::fixture_example2();
  const auto a = sim::run_round(p, sim::InputSource::seeded_random(), 123).str();
  const auto b = sim::run_round(p, sim::InputSource::seeded_random(), 123).str();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, sim::run_round(p, sim::InputSource::seeded_random(), 124).str());
  EXPECT_EQ(a.rfind("DSAT1 5 1 2 5 1 3 2 seed=123 inputs=random\n", 0), 0u);
  EXPECT_NE(a.find("\nW 1 "), std::string::npos);
  EXPECT_NE(a.find("\nX 5 "), std::string::npos);
  EXPECT_NE(a.find("\nR 3 "), std::string::npos);
  EXPECT_EQ(a.substr(a.size() - 13), "VERDICT pass\n");
}

TEST(InputSource, ExplicitValuesValidated) {
  const auto p = scheme::fixture_example1();
  auto ok = sim::InputSource::explicit_values({{1}, {0}, {1}});
  EXPECT_TRUE(sim::run_round(p, ok, 0).verdict);
  EXPECT_THROW(sim::run_round(p, sim::InputSource::explicit_values({{1}, {0}}), 0),
               dsa::DimensionMismatch);
  EXPECT_THROW(sim::run_round(p, sim::InputSource::explicit_values({{1}, {0}, {2}}), 0), dsa::Error);
  EXPECT_THROW(sim::run_round(p, sim::InputSource::one_hot(5, 0), 0), dsa::Error);
}

TEST(InputSource, ReadInputsReportsLine) {
  std::istringstream good("# inputs\n1 2 3\n\n4 5 6\n");
  EXPECT_EQ(sim::read_inputs(good), (std::vector<Vector>{{1, 2, 3}, {4, 5, 6}}));
  std::istringstream bad("1 2 3\n4 x 6\n");
  try {
    sim::read_inputs(bad);
    FAIL() << "expected FormatError";
  } catch (const dsa::FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

// The messages in a transcript are the linear observables X_k evaluated at
// the realized source, and the calculus' leakage verdict matches the
// auditor's rank verdict.
TEST(ObserverCheck, TranscriptAgreesWithCalculus) {
  for (const auto& p : {scheme::fixture_example1(), scheme::fixture_example2()}) {
    const auto t = sim::run_round(p, sim::InputSource::seeded_random(), 31);
    const auto c = sim::observer_check(p, t);
    EXPECT_TRUE(c.messages_match);
    EXPECT_TRUE(c.verdicts_agree);
    for (const auto& mi : c.leakage) EXPECT_EQ(mi, 0);
  }
}

TEST(Grid, InfeasibleCellsAndVerdicts) {
  const auto cells = sim::run_grid({3, 6}, {0, 6}, {1, 6}, 11, 1, 0);
  std::size_t count = 0;
  for (const auto& c : cells) {
    ++count;
    const bool expected = c.G >= 2 && c.G <= c.K - c.T - 1;
    EXPECT_EQ(c.feasible, expected) << c.K << ' ' << c.T << ' ' << c.G;
    if (c.feasible) {
      EXPECT_TRUE(c.built) << c.note;
      EXPECT_TRUE(c.audited);
      EXPECT_TRUE(c.verdict);
      EXPECT_EQ(c.rs_achieved, c.rs_star);
    }
    if (c.K == 3 && c.T == 0 && c.G == 2) {
      EXPECT_EQ(c.rs_achieved, 1);
    }
  }
  // sum over K of (K-2) * K cells.
  EXPECT_EQ(count, 3u + 8u + 15u + 24u);
}

TEST(Grid, FailuresRecordedNotThrown) {
  // Over F_2 with a single draw some cells fail; the grid still completes.
  const auto cells = sim::run_grid({4, 5}, {0, 2}, {2, 3}, 2, 1, 0, 1);
  bool any_failure = false;
  for (const auto& c : cells) {
    if (c.feasible && !c.built) {
      any_failure = true;
      EXPECT_FALSE(c.note.empty());
    }
  }
  EXPECT_TRUE(any_failure);
}

}  // namespace
