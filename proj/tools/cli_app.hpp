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

// Command-line front end. run_cli() is separate from main() so tests can
// drive it in-process with captured streams.
//
// Exit codes: 0 ok, 1 usage or out-of-model parameters, 2 infeasible
// parameters, 3 malformed input file, 4 a check, verdict or construction
// failed.

#ifndef DSA_TOOLS_CLI_APP_HPP_
#define DSA_TOOLS_CLI_APP_HPP_

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsa/dsa.hpp"

namespace dsa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitFormat = 3;
inline constexpr int kExitFailed = 4;

// Raised for bad flag combinations found after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A failed input file, tagged with its path for the error message.
class FileFormatError : public std::runtime_error {
 public:
  FileFormatError(const std::string& path, const FormatError& e)
      : std::runtime_error(path + ":" + std::to_string(e.line()) + ": " + e.what()) {}
};

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t q = 101;
  int m = 1;
  std::string out;
  std::string format;  // empty: the subcommand's default
};

struct Triple {
  int K = -1;
  int T = -1;
  int G = -1;

  bool given() const { return K >= 0 || T >= 0 || G >= 0; }
  bool complete() const { return K >= 0 && T >= 0 && G >= 0; }
};

namespace detail {

inline void add_triple(CLI::App* cmd, Triple& t, bool required) {
  auto* k = cmd->add_option("-K", t.K, "number of users");
  auto* tt = cmd->add_option("-T", t.T, "maximum number of colluders");
  auto* g = cmd->add_option("-G", t.G, "group size");
  if (required) {
    k->required();
    tt->required();
    g->required();
  }
}

inline std::string format_of(const Globals& g, const char* fallback) {
  return g.format.empty() ? std::string(fallback) : g.format;
}

// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open " + path + " for writing");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }
  bool to_file() const { return !path_.empty(); }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_;
};

inline scheme::Precoder load_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return scheme::load(in);
  } catch (const FormatError& e) {
    throw FileFormatError(path, e);
  }
}

inline scheme::Precoder fixture(const std::string& name, const Triple& t, std::uint64_t q,
                                bool q_given) {
  scheme::Precoder p = name == "example1"   ? scheme::fixture_example1()
                       : name == "example2" ? scheme::fixture_example2()
                                            : throw UsageError("unknown fixture '" + name + "'");
  const auto& params = p.params();
  if ((t.K >= 0 && t.K != params.K) || (t.T >= 0 && t.T != params.T) ||
      (t.G >= 0 && t.G != params.G) || (q_given && q != params.field.modulus())) {
    throw UsageError("fixture " + name + " has K=" + std::to_string(params.K) +
                     " T=" + std::to_string(params.T) + " G=" + std::to_string(params.G) +
                     " q=" + std::to_string(params.field.modulus()));
  }
  return p;
}

// Infeasible triples are reported on stdout and end the command with exit 2.
struct Infeasible {
  scheme::Infeasibility reason;
};

inline scheme::SchemeParams feasible_params(const Triple& t, const Globals& g) {
  auto params = scheme::SchemeParams::make(t.K, t.T, t.G, g.q, g.m);
  auto region = scheme::capacity(t.K, t.T, t.G);
  if (!region.feasible) throw Infeasible{*region.reason};
  return params;
}

inline sim::InputSource parse_inputs(const std::string& spec) {
  auto arg = [&](const std::string& prefix) { return spec.substr(prefix.size()); };
  auto number = [](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("bad number '" + s + "' in --inputs");
    return v;
  };
  if (spec == "random") return sim::InputSource::seeded_random();
  if (spec == "zero") return sim::InputSource::all_zero();
  if (spec == "all-equal") return sim::InputSource::all_equal();
  if (spec == "user-index") return sim::InputSource::user_index();
  if (spec.rfind("constant:", 0) == 0) {
    return sim::InputSource::constant(static_cast<std::uint32_t>(number(arg("constant:"))));
  }
  if (spec.rfind("one-hot:", 0) == 0) {
    const auto rest = arg("one-hot:");
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw UsageError("one-hot needs USER,POSITION");
    const auto user = number(rest.substr(0, comma));
    const auto pos = number(rest.substr(comma + 1));
    if (user == 0 || pos == 0) throw UsageError("one-hot USER and POSITION are 1-based");
    return sim::InputSource::one_hot(static_cast<int>(user - 1), pos - 1);
  }
  if (spec.rfind("file:", 0) == 0) {
    const auto path = arg("file:");
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
      return sim::InputSource::explicit_values(sim::read_inputs(in));
    } catch (const FormatError& e) {
      throw FileFormatError(path, e);
    }
  }
  throw UsageError("unknown input source '" + spec + "'");
}

inline std::string csv_rational(const std::optional<Rational>& v) {
  return v ? to_string(*v) : std::string();
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decentralized secure aggregation with groupwise keys"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed");
  auto* q_opt = app.add_option("--q", g.q, "field size (prime)");
  app.add_option("--m", g.m, "block scale, L = m*C(K-T-1,G)")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

  Triple feas_t;
  bool explain = false;
  auto* feas = app.add_subcommand("feasible", "capacity region for (K, T, G)");
  detail::add_triple(feas, feas_t, true);
  feas->add_flag("--explain", explain, "for infeasible triples, run the impossibility audit");

  int sweep_K = 0;
  int sweep_T = 0;
  auto* sweep = app.add_subcommand("rates-sweep", "optimal rates for every G");
  sweep->add_option("-K", sweep_K, "number of users")->required();
  sweep->add_option("-T", sweep_T, "maximum number of colluders")->required();

  Triple build_t;
  std::string build_fixture;
  unsigned build_retries = 16;
  auto* build = app.add_subcommand("build", "construct a precoder and write a scheme file");
  detail::add_triple(build, build_t, false);
  build->add_option("--fixture", build_fixture, "example1 or example2");
  build->add_option("--retries", build_retries, "construction attempts");

  Triple sim_t;
  std::string sim_scheme;
  std::string sim_inputs = "random";
  unsigned sim_retries = 16;
  bool sim_parallel = false;
  auto* simulate = app.add_subcommand("simulate", "run one broadcast round");
  simulate->add_option("scheme", sim_scheme, "scheme file (otherwise -K -T -G)");
  detail::add_triple(simulate, sim_t, false);
  simulate->add_option("--inputs", sim_inputs,
                       "random | zero | all-equal | user-index | constant:C | one-hot:USER,POS | "
                       "file:PATH");
  simulate->add_option("--retries", sim_retries, "construction attempts");
  simulate->add_flag("--parallel", sim_parallel, "encode users concurrently");

  std::string audit_scheme;
  std::size_t audit_samples = 4;
  auto* audit_cmd = app.add_subcommand("audit", "audit a scheme file");
  audit_cmd->add_option("scheme", audit_scheme, "scheme file")->required();
  audit_cmd->add_option("--samples", audit_samples, "seeded recovery spot checks");

  Triple or_t;
  std::string or_scheme;
  std::string or_fixture;
  std::uint64_t or_budget = oracle::kDefaultBudget;
  unsigned or_retries = 64;
  auto* orc = app.add_subcommand("oracle", "compare rank calculus with brute-force enumeration");
  orc->add_option("scheme", or_scheme, "scheme file (otherwise -K -T -G or --fixture)");
  detail::add_triple(orc, or_t, false);
  orc->add_option("--fixture", or_fixture, "example1 or example2");
  orc->add_option("--budget", or_budget, "maximum number of enumerated realizations");
  orc->add_option("--retries", or_retries, "construction attempts");

  int grid_kmin = 3;
  int grid_kmax = 6;
  unsigned grid_retries = 16;
  auto* grid = app.add_subcommand("grid", "capacity, build, audit and simulate over a range of K");
  grid->add_option("--kmin", grid_kmin, "smallest K");
  grid->add_option("--kmax", grid_kmax, "largest K");
  grid->add_option("--retries", grid_retries, "construction attempts per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const bool q_given = q_opt->count() > 0;

  try {
    if (*feas) {
      const auto region = scheme::capacity(feas_t.K, feas_t.T, feas_t.G);
      detail::Sink sink(g.out, out);
      auto& os = sink.stream();
      if (detail::format_of(g, "text") == "csv") {
        os << "K,T,G,feasible,R_X*,R_S*,R_Z*,R_ZSigma*\n";
        os << feas_t.K << ',' << feas_t.T << ',' << feas_t.G << ',' << (region.feasible ? 1 : 0);
        if (region.feasible) {
          os << ',' << to_string(region.rx_star) << ',' << to_string(region.rs_star) << ','
             << to_string(region.rz_star) << ',' << to_string(region.rz_sigma_star) << '\n';
        } else {
          os << ",,,,\n";
        }
      } else if (region.feasible) {
        os << "FEASIBLE R_X*=" << to_string(region.rx_star) << " R_S*=" << to_string(region.rs_star)
           << '\n';
        os << "R_Z*=" << to_string(region.rz_star) << " R_ZSigma*=" << to_string(region.rz_sigma_star)
           << '\n';
      } else {
        os << "INFEASIBLE: " << scheme::to_string(*region.reason) << '\n';
        if (explain) {
          const auto r = audit::audit_infeasibility(feas_t.K, feas_t.T, feas_t.G);
          os << r.explanation << '\n';
        }
      }
      return region.feasible ? kExitOk : kExitInfeasible;
    }

    if (*sweep) {
      scheme::check_model(sweep_K, sweep_T, 1);
      detail::Sink sink(g.out, out);
      auto& os = sink.stream();
      const Rational baseline_z(1);
      const Rational baseline_sigma(sweep_K - 1);
      if (detail::format_of(g, "csv") == "csv") {
        os << "G,feasible,R_S*,R_Z*,R_ZSigma*,R_Z_baseline,R_ZSigma_baseline\n";
        for (int G = 1; G <= sweep_K; ++G) {
          const auto r = scheme::capacity(sweep_K, sweep_T, G);
          std::optional<Rational> rs, rz, rzs;
          if (r.feasible) {
            rs = r.rs_star;
            rz = r.rz_star;
            rzs = r.rz_sigma_star;
          }
          os << G << ',' << (r.feasible ? 1 : 0) << ',' << detail::csv_rational(rs) << ','
             << detail::csv_rational(rz) << ',' << detail::csv_rational(rzs) << ','
             << to_string(baseline_z) << ',' << to_string(baseline_sigma) << '\n';
        }
      } else {
        for (int G = 1; G <= sweep_K; ++G) {
          const auto r = scheme::capacity(sweep_K, sweep_T, G);
          os << "G=" << G;
          if (r.feasible) {
            os << " R_S*=" << to_string(r.rs_star) << " R_Z*=" << to_string(r.rz_star)
               << " R_ZSigma*=" << to_string(r.rz_sigma_star) << '\n';
          } else {
            os << " INFEASIBLE: " << scheme::to_string(*r.reason) << '\n';
          }
        }
        const auto choice = scheme::optimal_group_size(sweep_K, sweep_T);
        os << "G*=" << choice.feasible_argmin << " R_S*=" << to_string(choice.min_rate);
        if (choice.ties.size() > 1) {
          os << " ties=";
          for (std::size_t i = 0; i < choice.ties.size(); ++i) os << (i ? "," : "") << choice.ties[i];
        }
        os << '\n';
      }
      return kExitOk;
    }

    if (*build) {
      std::optional<scheme::Precoder> p;
      std::string how;
      if (!build_fixture.empty()) {
        p = detail::fixture(build_fixture, build_t, g.q, q_given);
        how = "fixture=" + build_fixture;
      } else {
        if (!build_t.complete()) throw UsageError("build needs -K, -T and -G or --fixture");
        auto params = detail::feasible_params(build_t, g);
        auto r = scheme::build_precoder_verbose(params, g.seed, build_retries);
        how = "seed=" + std::to_string(r.seed) + " attempts=" + std::to_string(r.attempts);
        p = std::move(r.precoder);
      }
      detail::Sink sink(g.out, out);
      scheme::save(sink.stream(), *p);
      if (sink.to_file()) {
        out << "wrote " << g.out << " L=" << p->input_len() << " L_S=" << p->key_len() << ' '
            << how << '\n';
      }
      return kExitOk;
    }

    if (*simulate) {
      std::optional<scheme::Precoder> p;
      if (!sim_scheme.empty()) {
        if (sim_t.given()) throw UsageError("give either a scheme file or -K -T -G, not both");
        p = detail::load_scheme(sim_scheme);
      } else {
        if (!sim_t.complete()) throw UsageError("simulate needs a scheme file or -K, -T and -G");
        p = scheme::build_precoder(detail::feasible_params(sim_t, g), g.seed, sim_retries);
      }
      const auto source = detail::parse_inputs(sim_inputs);
      const auto t = sim::run_round(*p, source, g.seed, sim_parallel);
      detail::Sink sink(g.out, out);
      t.write(sink.stream());
      return t.verdict ? kExitOk : kExitFailed;
    }

    if (*audit_cmd) {
      const auto p = detail::load_scheme(audit_scheme);
      const auto report = audit::audit_all(p, audit_samples, g.seed);
      detail::Sink sink(g.out, out);
      auto& os = sink.stream();
      if (detail::format_of(g, "text") == "csv") {
        os << "kind,k,T,value,bound,result\n";
        for (const auto& c : report.checks) {
          os << c.kind << ',' << (c.user ? std::to_string(*c.user + 1) : std::string("*")) << ",\""
             << scheme::format_users(c.coalition) << "\"," << to_string(c.value) << ','
             << to_string(c.bound) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
        }
      } else {
        report.write(os);
      }
      std::size_t failed = 0;
      for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
      err << (failed ? "AUDIT FAIL " : "AUDIT PASS ") << (report.checks.size() - failed) << '/'
          << report.checks.size() << " checks passed\n";
      return failed ? kExitFailed : kExitOk;
    }

    if (*orc) {
      std::optional<scheme::Precoder> p;
      if (!or_scheme.empty()) {
        p = detail::load_scheme(or_scheme);
      } else if (!or_fixture.empty()) {
        p = detail::fixture(or_fixture, or_t, g.q, q_given);
      } else {
        if (!or_t.complete()) throw UsageError("oracle needs a scheme file, --fixture or -K -T -G");
        p = scheme::build_precoder(detail::feasible_params(or_t, g), g.seed, or_retries);
      }
      const auto layout = info::SourceLayout::of(*p);
      const std::uint32_t q = p->params().field.modulus();
      // Fail fast, before any enumeration.
      oracle::detail::checked_realizations(q, layout.dimension(), or_budget);
      detail::Sink sink(g.out, out);
      auto& os = sink.stream();
      os << "source symbols N=" << layout.dimension() << " realizations=" << q << '^'
         << layout.dimension() << '\n';
      bool agree = true;
      bool zero = true;
      auto compare = [&](const std::string& label, const audit::Query& query) {
        const Rational calc = audit::evaluate(query);
        const auto brute = oracle::brute_force_mi(query.a, query.b, query.given, or_budget);
        const bool same = brute.exact && brute.value == calc;
        agree = agree && same;
        zero = zero && calc == 0;
        os << label << " rank=" << to_string(calc) << " brute=" << to_string(brute.value)
           << (same ? " agree" : " DISAGREE") << '\n';
      };
      const int K = p->params().K;
      for (int k = 0; k < K; ++k) {
        compare("recovery k=" + std::to_string(k + 1), audit::recovery_query(*p, k));
      }
      for (int k = 0; k < K; ++k) {
        for (const auto& t : audit::collusion_sets(K, k, p->params().T)) {
          compare("security k=" + std::to_string(k + 1) + " T=" + scheme::format_users(t),
                  audit::security_query(*p, k, t));
        }
      }
      if (agree && zero) {
        os << "rank-calculus MI = brute-force MI = 0\n";
        return kExitOk;
      }
      os << (agree ? "rank-calculus MI = brute-force MI, nonzero leakage or residual\n"
                   : "rank-calculus MI != brute-force MI\n");
      return kExitFailed;
    }

    if (*grid) {
      const auto cells = sim::run_grid({grid_kmin, grid_kmax}, {0, grid_kmax}, {1, grid_kmax}, g.q,
                                       g.m, g.seed, grid_retries);
      detail::Sink sink(g.out, out);
      auto& os = sink.stream();
      bool ok = true;
      const bool csv = detail::format_of(g, "csv") == "csv";
      if (csv) os << "K,T,G,feasible,built,audited,verdict,attempts,R_S,R_S*,note\n";
      for (const auto& c : cells) {
        const bool good = !c.feasible || (c.built && c.audited && c.verdict);
        ok = ok && good;
        if (csv) {
          os << c.K << ',' << c.T << ',' << c.G << ',' << c.feasible << ',' << c.built << ','
             << c.audited << ',' << c.verdict << ',' << c.attempts << ','
             << (c.built ? to_string(c.rs_achieved) : "") << ','
             << (c.feasible ? to_string(c.rs_star) : "") << ",\"" << c.note << "\"\n";
        } else {
          os << "K=" << c.K << " T=" << c.T << " G=" << c.G << ' ';
          if (!c.feasible) {
            os << c.note << '\n';
          } else {
            os << (good ? "OK" : "FAIL") << " R_S=" << (c.built ? to_string(c.rs_achieved) : "-")
               << " R_S*=" << to_string(c.rs_star) << " attempts=" << c.attempts;
            if (!c.note.empty()) os << " note=" << c.note;
            os << '\n';
          }
        }
      }
      return ok ? kExitOk : kExitFailed;
    }
  } catch (const detail::Infeasible& e) {
    out << "INFEASIBLE: " << scheme::to_string(e.reason) << '\n';
    return kExitInfeasible;
  } catch (const FileFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const ConstructionFailed& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dsa::cli

#endif  // DSA_TOOLS_CLI_APP_HPP_
