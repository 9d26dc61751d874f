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

#ifndef DSA_SIM_HPP_
#define DSA_SIM_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dsa/auditor.hpp"
#include "dsa/construction.hpp"
#include "dsa/errors.hpp"
#include "dsa/infocalc.hpp"
#include "dsa/linalg.hpp"
#include "dsa/rng.hpp"
#include "dsa/scheme.hpp"

namespace dsa::sim {

// Where the users' inputs come from. The masking argument does not need
// uniform or independent inputs, so structured sources are first-class.
class InputSource {
 public:
  enum class Kind { kSeededRandom, kAllZero, kConstant, kAllEqual, kOneHot, kUserIndex, kExplicit };

  static InputSource seeded_random() { return InputSource(Kind::kSeededRandom); }
  static InputSource all_zero() { return InputSource(Kind::kAllZero); }
  // Every symbol of every input equals c.
  static InputSource constant(std::uint32_t c) {
    InputSource s(Kind::kConstant);
    s.value_ = c;
    return s;
  }
  // One seeded random vector shared by all users.
  static InputSource all_equal() { return InputSource(Kind::kAllEqual); }
  // Zero everywhere except symbol `position` of `user`, which is 1.
  static InputSource one_hot(int user, std::size_t position) {
    InputSource s(Kind::kOneHot);
    s.user_ = user;
    s.position_ = position;
    return s;
  }
  // W_k = k * (1, ..., 1) with 1-based k.
  static InputSource user_index() { return InputSource(Kind::kUserIndex); }
  static InputSource explicit_values(std::vector<linalg::Vector> values) {
    InputSource s(Kind::kExplicit);
    s.values_ = std::move(values);
    return s;
  }

  Kind kind() const { return kind_; }

  std::string describe() const {
    switch (kind_) {
      case Kind::kSeededRandom: return "random";
      case Kind::kAllZero: return "zero";
      case Kind::kConstant: return "constant:" + std::to_string(value_);
      case Kind::kAllEqual: return "all-equal";
      case Kind::kOneHot:
        return "one-hot:" + std::to_string(user_ + 1) + "," + std::to_string(position_ + 1);
      case Kind::kUserIndex: return "user-index";
      case Kind::kExplicit: return "explicit";
    }
    return "?";
  }

  std::vector<linalg::Vector> inputs(int K, std::size_t L, const gf::Field& f,
                                     std::uint64_t seed) const {
    const std::uint32_t q = f.modulus();
    std::vector<linalg::Vector> w(K, linalg::Vector(L, 0));
    SymbolRng rng(seed);
    switch (kind_) {
      case Kind::kSeededRandom:
        for (auto& v : w) {
          for (auto& x : v) x = rng.uniform(q);
        }
        break;
      case Kind::kAllZero:
        break;
      case Kind::kConstant:
        for (auto& v : w) std::fill(v.begin(), v.end(), value_ % q);
        break;
      case Kind::kAllEqual: {
        linalg::Vector shared(L);
        for (auto& x : shared) x = rng.uniform(q);
        for (auto& v : w) v = shared;
        break;
      }
      case Kind::kOneHot:
        if (user_ < 0 || user_ >= K || position_ >= L) throw Error("one-hot position out of range");
        w[user_][position_] = 1 % q;
        break;
      case Kind::kUserIndex:
        for (int k = 0; k < K; ++k) std::fill(w[k].begin(), w[k].end(), static_cast<std::uint32_t>((k + 1) % q));
        break;
      case Kind::kExplicit:
        if (values_.size() != static_cast<std::size_t>(K)) {
          throw DimensionMismatch("need one input per user, got " + std::to_string(values_.size()));
        }
        for (int k = 0; k < K; ++k) {
          if (values_[k].size() != L) {
            throw DimensionMismatch("input of user " + std::to_string(k + 1) + " has length " +
                                    std::to_string(values_[k].size()) + ", expected " +
                                    std::to_string(L));
          }
          for (std::size_t j = 0; j < L; ++j) {
            if (values_[k][j] >= q) throw Error("input symbol out of range for F_" + std::to_string(q));
          }
        }
        w = values_;
        break;
    }
    return w;
  }

 private:
  explicit InputSource(Kind k) : kind_(k) {}

  Kind kind_;
  std::uint32_t value_ = 0;
  int user_ = 0;
  std::size_t position_ = 0;
  std::vector<linalg::Vector> values_;
};

// Reads one input per line: L whitespace-separated symbols, users in order.
// Blank lines and lines starting with '#' are skipped.
inline std::vector<linalg::Vector> read_inputs(std::istream& in) {
  std::vector<linalg::Vector> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    linalg::Vector v;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        unsigned long x = std::stoul(tok, &used);
        if (used != tok.size() || x > 0xFFFFFFFFul) throw std::invalid_argument(tok);
        v.push_back(static_cast<std::uint32_t>(x));
      } catch (const std::exception&) {
        throw FormatError(line_no, "expected a non-negative integer, got '" + tok + "'");
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

struct Transcript {
  scheme::SchemeParams params;
  std::size_t input_len = 0;
  std::size_t key_len = 0;
  std::uint64_t seed = 0;
  std::string input_source;
  std::vector<linalg::Vector> inputs;
  std::vector<linalg::Vector> messages;
  std::vector<linalg::Vector> recovered;  // each user's global-sum claim
  bool verdict = false;

  void write(std::ostream& os) const {
    os << "DSAT1 " << params.K << ' ' << params.T << ' ' << params.G << ' '
       << params.field.modulus() << ' ' << params.m << ' ' << input_len << ' ' << key_len
       << " seed=" << seed << " inputs=" << input_source << '\n';
    auto rows = [&](char tag, const std::vector<linalg::Vector>& vs) {
      for (std::size_t k = 0; k < vs.size(); ++k) {
        os << tag << ' ' << (k + 1);
        for (auto x : vs[k]) os << ' ' << x;
        os << '\n';
      }
    };
    rows('W', inputs);
    rows('X', messages);
    rows('R', recovered);
    os << "VERDICT " << (verdict ? "pass" : "fail") << '\n';
  }

  std::string str() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }
};

// Seed streams used by a round, so verifiers can reproduce the keys.
inline std::uint64_t key_seed(std::uint64_t seed) { return derive_seed(seed, 0); }
inline std::uint64_t input_seed(std::uint64_t seed) { return derive_seed(seed, 1); }

// One synchronous, error-free broadcast round: sample keys, encode every
// input, deliver each message to all other users, and let every user
// reconstruct the global sum. With parallel set, users encode concurrently;
// delivery waits for all of them.
inline Transcript run_round(const scheme::Precoder& p, const InputSource& source,
                            std::uint64_t seed, bool parallel = false) {
  const auto& params = p.params();
  const int K = params.K;
  const gf::Field& f = params.field;
  Transcript t{params, p.input_len(), p.key_len(), seed, source.describe(), {}, {}, {}, false};
  const auto keys = scheme::sample_keys(params, p.key_len(), key_seed(seed));
  t.inputs = source.inputs(K, p.input_len(), f, input_seed(seed));

  std::vector<scheme::Message> sent(K);
  if (parallel) {
    std::vector<std::future<scheme::Message>> pending;
    for (int k = 0; k < K; ++k) {
      pending.push_back(std::async(std::launch::async, [&, k] {
        return scheme::encode(p, keys, t.inputs[k], k);
      }));
    }
    for (int k = 0; k < K; ++k) sent[k] = pending[k].get();
  } else {
    for (int k = 0; k < K; ++k) sent[k] = scheme::encode(p, keys, t.inputs[k], k);
  }
  for (const auto& m : sent) t.messages.push_back(m.payload);

  linalg::Vector truth(p.input_len(), 0);
  for (const auto& w : t.inputs) {
    for (std::size_t j = 0; j < truth.size(); ++j) truth[j] = f.add(truth[j], w[j]);
  }
  t.verdict = true;
  for (int k = 0; k < K; ++k) {
    std::vector<scheme::Message> inbox;
    for (const auto& m : sent) {
      if (m.user != k) inbox.push_back(m);
    }
    auto sum = scheme::recover(p, keys, k, inbox);
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = f.add(sum[j], t.inputs[k][j]);
    if (sum != truth) t.verdict = false;
    t.recovered.push_back(std::move(sum));
  }
  return t;
}

// Cross-checks a transcript against the information calculus: each recorded
// message must equal the linear observable X_k evaluated at the realized
// source, and the zero-colluder leakage query for each user must agree with
// the auditor's rank verdict.
struct ObserverCheck {
  bool messages_match = true;
  bool verdicts_agree = true;
  std::vector<Rational> leakage;  // per user, empty collusion set
};

inline ObserverCheck observer_check(const scheme::Precoder& p, const Transcript& t) {
  ObserverCheck out;
  const auto layout = info::SourceLayout::of(p);
  const auto keys = scheme::sample_keys(p.params(), p.key_len(), key_seed(t.seed));
  linalg::Vector source;
  for (const auto& w : t.inputs) source.insert(source.end(), w.begin(), w.end());
  for (const auto& k : keys.keys) source.insert(source.end(), k.begin(), k.end());
  for (int k = 0; k < p.params().K; ++k) {
    if (info::message(layout, p, k).evaluate(source) != t.messages.at(k)) out.messages_match = false;
    auto mi = audit::security_mi(p, k, {});
    out.leakage.push_back(mi);
    if ((mi == 0) != audit::rank_condition(p, k, {}).ok) out.verdicts_agree = false;
  }
  return out;
}

struct GridCell {
  int K = 0;
  int T = 0;
  int G = 0;
  bool feasible = false;
  bool built = false;
  bool audited = false;  // full audit passed
  bool verdict = false;  // simulated round recovered the sum everywhere
  unsigned attempts = 0;
  Rational rs_achieved;
  Rational rs_star;
  std::string note;
};

struct Range {
  int lo;
  int hi;
};

// Capacity, construction, audit and one simulated round for every in-model
// triple in the ranges. Failures are recorded per cell.
inline std::vector<GridCell> run_grid(Range Ks, Range Ts, Range Gs, std::uint64_t q, int m,
                                      std::uint64_t seed, unsigned max_retries = 16) {
  std::vector<GridCell> out;
  for (int K = std::max(Ks.lo, 3); K <= Ks.hi; ++K) {
    for (int T = std::max(Ts.lo, 0); T <= std::min(Ts.hi, K - 3); ++T) {
      for (int G = std::max(Gs.lo, 1); G <= std::min(Gs.hi, K); ++G) {
        GridCell cell;
        cell.K = K;
        cell.T = T;
        cell.G = G;
        try {
          auto region = scheme::capacity(K, T, G);
          cell.feasible = region.feasible;
          if (!region.feasible) {
            cell.note = std::string("infeasible ") + scheme::to_string(*region.reason);
            out.push_back(std::move(cell));
            continue;
          }
          cell.rs_star = region.rs_star;
          auto params = scheme::SchemeParams::make(K, T, G, q, m);
          auto built = scheme::build_precoder_verbose(params, seed, max_retries);
          cell.built = true;
          cell.attempts = built.attempts;
          cell.rs_achieved = Rational(static_cast<long long>(built.precoder.key_len()),
                                      static_cast<long long>(built.precoder.input_len()));
          cell.audited = audit::audit_all(built.precoder, 2, seed).all_pass();
          cell.verdict = run_round(built.precoder, InputSource::seeded_random(), seed).verdict;
        } catch (const std::exception& e) {
          cell.note = e.what();
        }
        out.push_back(std::move(cell));
      }
    }
  }
  return out;
}

}  // namespace dsa::sim

#endif  // DSA_SIM_HPP_
