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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "cli_app.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dsa_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dsa::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("dsa_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, FeasibleExamples) {
  auto r = run({"feasible", "-K", "5", "-T", "1", "-G", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("FEASIBLE R_X*=1 R_S*=2/3\n", 0), 0u);
  EXPECT_NE(r.out.find("R_Z*=8/3 R_ZSigma*=20/3"), std::string::npos);

  r = run({"feasible", "-K", "4", "-T", "0", "-G", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "INFEASIBLE: G=1\n");

  r = run({"feasible", "-K", "5", "-T", "2", "-G", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "INFEASIBLE: G>=K-T\n");

  r = run({"feasible", "-K", "2", "-T", "0", "-G", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"feasible", "-K", "5"}).code, 1);
  EXPECT_EQ(run({"feasible", "-K", "5", "-T", "1", "-G", "2", "--bogus"}).code, 1);
  EXPECT_EQ(run({"feasible", "-K", "5", "-T", "1", "-G", "2", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"build", "--fixture", "example2", "-K", "6"}).code, 1);
  EXPECT_EQ(run({"build", "--fixture", "example3"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

// CSV rows parse back into the same exact rationals.
TEST(Cli, RatesSweepCsvRoundTrip) {
  const auto r = run({"rates-sweep", "-K", "20", "-T", "0"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "G,feasible,R_S*,R_Z*,R_ZSigma*,R_Z_baseline,R_ZSigma_baseline");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (line.back() == ',') f.push_back("");
    ASSERT_EQ(f.size(), 7u) << line;
    const int G = std::stoi(f[0]);
    const auto region = dsa::scheme::capacity(20, 0, G);
    EXPECT_EQ(f[1] == "1", region.feasible);
    if (region.feasible) {
      EXPECT_EQ(dsa::parse_rational(f[2]), region.rs_star);
      EXPECT_EQ(dsa::parse_rational(f[3]), region.rz_star);
      EXPECT_EQ(dsa::parse_rational(f[4]), region.rz_sigma_star);
    } else {
      EXPECT_TRUE(f[2].empty());
    }
    EXPECT_EQ(dsa::parse_rational(f[5]), 1);
    EXPECT_EQ(dsa::parse_rational(f[6]), 19);
    if (G == 2) {
      EXPECT_EQ(dsa::parse_rational(f[2]), dsa::parse_rational("6/57"));  // printed reduced
    }
  }
  EXPECT_EQ(rows, 20);
}

TEST(Cli, RatesSweepSmall) {
  const auto r = run({"rates-sweep", "-K", "5", "-T", "1"});
  EXPECT_NE(r.out.find("\n1,0,,,,1,4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n4,0,,,,1,4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n5,0,,,,1,4\n"), std::string::npos);
  const auto t = run({"rates-sweep", "-K", "20", "-T", "0", "--format", "text"});
  EXPECT_NE(t.out.find("G*=9 "), std::string::npos);
}

TEST(Cli, BuildAuditFixtureEndToEnd) {
  TempDir dir;
  const auto path = dir.file("s.dsa");
  auto r = run({"build", "-K", "5", "-T", "1", "-G", "2", "--q", "5", "--fixture", "example2",
                "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(dsa::scheme::load_file(path), dsa::scheme::fixture_example2());

  r = run({"audit", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("CHECK security k=1 T={2} value=0 bound=0 PASS"), std::string::npos);
}

TEST(Cli, AuditZeroedBlockFails) {
  TempDir dir;
  const auto p = dsa::scheme::fixture_example2();
  const auto path = dir.file("bad.dsa");
  dsa::scheme::save_file(path, p.with_block(4, 0, dsa::linalg::Matrix(p.params().field, 3, 2)));
  const auto r = run({"audit", path});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find(" FAIL\n"), std::string::npos);
}

TEST(Cli, FormatErrorExitCode) {
  TempDir dir;
  const auto path = dir.file("broken.dsa");
  std::ofstream(path) << "DSA1 3 0 2 2 1\n1 1\n1\n1 1\nfoo\n";
  const auto r = run({"audit", path});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find(":5:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 5"), std::string::npos);
}

TEST(Cli, BuildRandomAndSimulate) {
  TempDir dir;
  const auto scheme_path = dir.file("r.dsa");
  auto r = run({"build", "-K", "5", "-T", "1", "-G", "2", "--seed", "3", "--out", scheme_path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto transcript = dir.file("t.txt");
  r = run({"simulate", scheme_path, "--seed", "8", "--out", transcript});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto text = slurp(transcript);
  EXPECT_EQ(text.rfind("DSAT1 5 1 2 101 1 3 2 seed=8 inputs=random\n", 0), 0u);
  EXPECT_NE(text.find("VERDICT pass"), std::string::npos);

  r = run({"simulate", "-K", "3", "-T", "0", "-G", "2", "--q", "7", "--m", "2", "--inputs",
           "user-index"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\nR 1 6 6\n"), std::string::npos) << r.out;

  r = run({"simulate", "-K", "4", "-T", "0", "-G", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"simulate", "--inputs", "one-hot:0,1", "-K", "3", "-T", "0", "-G", "2"}).code, 1);
}

TEST(Cli, SimulateInputsFile) {
  TempDir dir;
  const auto in = dir.file("w.txt");
  std::ofstream(in) << "1\n0\n1\n";
  const auto scheme_path = dir.file("e1.dsa");
  dsa::scheme::save_file(scheme_path, dsa::scheme::fixture_example1());
  auto r = run({"simulate", scheme_path, "--inputs", "file:" + in});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("R 1 0\n"), std::string::npos);
  const auto bad = dir.file("bad.txt");
  std::ofstream(bad) << "1\n-\n";
  r = run({"simulate", scheme_path, "--inputs", "file:" + bad});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, OracleExampleOne) {
  const auto r = run({"oracle", "-K", "3", "-T", "0", "-G", "2", "--q", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("realizations=2^6"), std::string::npos);
  EXPECT_NE(r.out.find("rank-calculus MI = brute-force MI = 0\n"), std::string::npos);
}

TEST(Cli, OracleBudget) {
  const auto r = run({"oracle", "--fixture", "example2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"build", "-K", "6", "-T", "1", "-G", "3", "--seed", "11"},
      {"simulate", "-K", "5", "-T", "1", "-G", "2", "--seed", "2", "--parallel"},
      {"rates-sweep", "-K", "9", "-T", "2"},
      {"grid", "--kmin", "3", "--kmax", "4", "--q", "11"},
  };
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
