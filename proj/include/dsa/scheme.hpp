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

#ifndef DSA_SCHEME_HPP_
#define DSA_SCHEME_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/gf.hpp"
#include "dsa/linalg.hpp"
#include "dsa/rational.hpp"
#include "dsa/rng.hpp"

// Decentralized secure aggregation with symmetric groupwise keys.
//
// K users each hold an input W_k of L symbols. Every G-subset of users shares
// an independent key S_G of L_S symbols. User k broadcasts
//
//   X_k = W_k + sum over groups G containing k of H_G^k S_G,
//
// and the precoder blocks of each group sum to zero, so the key terms cancel
// in the sum of all messages. Users are 0-based throughout the library; text
// formats and reports print them 1-based.
namespace dsa::scheme {

using Group = std::vector<int>;

inline void check_model(int K, int T, int G) {
  if (K < 3) {
    throw ParamsOutOfModel("need at least 3 users, got K=" + std::to_string(K));
  }
  if (T < 0 || T > K - 3) {
    throw ParamsOutOfModel("collusion bound must satisfy 0 <= T <= K-3, got T=" +
                           std::to_string(T) + " with K=" + std::to_string(K));
  }
  if (G < 1 || G > K) {
    throw ParamsOutOfModel("group size must satisfy 1 <= G <= K, got G=" +
                           std::to_string(G));
  }
}

inline bool feasible(int K, int T, int G) { return G >= 2 && G <= K - T - 1; }

struct SchemeParams {
  int K;
  int T;
  int G;
  gf::Field field;
  int m = 1;

  static SchemeParams make(int K, int T, int G, std::uint64_t q, int m = 1) {
    check_model(K, T, G);
    if (m < 1) throw ParamsOutOfModel("block scale m must be positive");
    return SchemeParams{K, T, G, gf::Field(q), m};
  }

  bool is_feasible() const { return feasible(K, T, G); }

  // L = m * C(K-T-1, G).
  std::size_t input_len() const {
    return static_cast<std::size_t>(m) *
           binomial(K - T - 1, G).convert_to<std::size_t>();
  }
  // L_S = m * (K-T-2).
  std::size_t key_len() const { return static_cast<std::size_t>(m) * (K - T - 2); }

  std::size_t group_count() const { return binomial(K, G).convert_to<std::size_t>(); }

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

enum class Infeasibility { kGroupSizeOne, kGroupTooLarge };

inline const char* to_string(Infeasibility r) {
  return r == Infeasibility::kGroupSizeOne ? "G=1" : "G>=K-T";
}

struct RateRegion {
  bool feasible = false;
  Rational rx_star;
  Rational rs_star;
  Rational rz_star;
  Rational rz_sigma_star;
  std::optional<Infeasibility> reason;
};

// Optimal region: R_X >= 1 and R_S >= (K-T-2)/C(K-T-1,G) when 2 <= G < K-T,
// empty otherwise. Individual and source key rates follow from R_S through
// R_Z = C(K-1,G-1) R_S and R_ZSigma = C(K,G) R_S.
inline RateRegion capacity(int K, int T, int G) {
  check_model(K, T, G);
  RateRegion r;
  if (G == 1) {
    r.reason = Infeasibility::kGroupSizeOne;
    return r;
  }
  if (G >= K - T) {
    r.reason = Infeasibility::kGroupTooLarge;
    return r;
  }
  r.feasible = true;
  r.rx_star = 1;
  r.rs_star = Rational(BigInt(K - T - 2), binomial(K - T - 1, G));
  r.rz_star = Rational(binomial(K - 1, G - 1)) * r.rs_star;
  r.rz_sigma_star = Rational(binomial(K, G)) * r.rs_star;
  return r;
}

struct GroupSizeChoice {
  // floor((K-T-1)/2), reported as-is even when it falls below 2.
  int formula = 0;
  // Smallest minimizer of R_S* over the feasible range [2, K-T-1].
  int feasible_argmin = 0;
  // Every feasible G attaining the minimum.
  std::vector<int> ties;
  Rational min_rate;
};

inline GroupSizeChoice optimal_group_size(int K, int T) {
  check_model(K, T, 2);
  GroupSizeChoice c;
  c.formula = (K - T - 1) / 2;
  for (int G = 2; G <= K - T - 1; ++G) {
    Rational rate = capacity(K, T, G).rs_star;
    if (c.ties.empty() || rate < c.min_rate) {
      c.min_rate = rate;
      c.ties = {G};
    } else if (rate == c.min_rate) {
      c.ties.push_back(G);
    }
  }
  c.feasible_argmin = c.ties.front();
  return c;
}

// All G-subsets of the K users in lexicographic order; the position of a
// group in this list is its index everywhere else (keys, blocks, layouts).
inline std::vector<Group> all_groups(int K, int G) { return subsets(K, G); }

inline std::size_t group_index(const std::vector<Group>& groups, const Group& g) {
  auto it = std::lower_bound(groups.begin(), groups.end(), g);
  if (it == groups.end() || *it != g) throw Error("unknown group");
  return static_cast<std::size_t>(it - groups.begin());
}

inline bool contains(const Group& g, int user) {
  return std::binary_search(g.begin(), g.end(), user);
}

inline std::string format_users(const std::vector<int>& users) {
  std::string s = "{";
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(users[i] + 1);
  }
  return s + "}";
}

// The full set of precoding blocks H_G^k. blocks()[g][j] belongs to the j-th
// (ascending) member of group g; blocks for non-members are implicitly zero.
class Precoder {
 public:
  Precoder(SchemeParams params, std::size_t input_len, std::size_t key_len,
           std::vector<std::vector<linalg::Matrix>> blocks)
      : params_(std::move(params)),
        input_len_(input_len),
        key_len_(key_len),
        groups_(all_groups(params_.K, params_.G)),
        blocks_(std::move(blocks)) {
    if (blocks_.size() != groups_.size()) {
      throw DimensionMismatch("expected " + std::to_string(groups_.size()) +
                              " groups of blocks, got " + std::to_string(blocks_.size()));
    }
    for (const auto& members : blocks_) {
      if (members.size() != static_cast<std::size_t>(params_.G)) {
        throw DimensionMismatch("every group needs G blocks");
      }
      for (const auto& b : members) {
        if (b.rows() != input_len_ || b.cols() != key_len_) {
          throw DimensionMismatch("block of shape " + b.shape() + ", expected " +
                                  std::to_string(input_len_) + "x" + std::to_string(key_len_));
        }
        if (b.field() != params_.field) throw FieldMismatch("block over wrong field");
      }
    }
  }

  const SchemeParams& params() const { return params_; }
  std::size_t input_len() const { return input_len_; }
  std::size_t key_len() const { return key_len_; }
  const std::vector<Group>& groups() const { return groups_; }
  const std::vector<std::vector<linalg::Matrix>>& blocks() const { return blocks_; }

  const linalg::Matrix& block(std::size_t group, std::size_t member) const {
    return blocks_.at(group).at(member);
  }

  // H_G^k, zero when k is not in G.
  linalg::Matrix coefficient(int user, std::size_t group) const {
    const Group& g = groups_.at(group);
    auto it = std::find(g.begin(), g.end(), user);
    if (it == g.end()) return linalg::Matrix(params_.field, input_len_, key_len_);
    return blocks_[group][static_cast<std::size_t>(it - g.begin())];
  }

  // Indices of the groups containing a user, ascending.
  std::vector<std::size_t> groups_of(int user) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < groups_.size(); ++i) {
      if (contains(groups_[i], user)) out.push_back(i);
    }
    return out;
  }

  // Copy with one block replaced; used to build mutated schemes.
  Precoder with_block(std::size_t group, std::size_t member, linalg::Matrix b) const {
    auto blocks = blocks_;
    blocks.at(group).at(member) = std::move(b);
    return Precoder(params_, input_len_, key_len_, std::move(blocks));
  }

  linalg::Matrix group_sum(std::size_t group) const {
    linalg::Matrix s(params_.field, input_len_, key_len_);
    for (const auto& b : blocks_[group]) s += b;
    return s;
  }

  bool zero_sum() const {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      if (!group_sum(g).is_zero()) return false;
    }
    return true;
  }

  // The stacked K*L x C(K,G)*L_S coefficient matrix of all messages.
  linalg::Matrix full_matrix() const {
    std::vector<std::vector<linalg::Matrix>> grid;
    for (int k = 0; k < params_.K; ++k) {
      std::vector<linalg::Matrix> band;
      for (std::size_t g = 0; g < groups_.size(); ++g) band.push_back(coefficient(k, g));
      grid.push_back(std::move(band));
    }
    return linalg::block(grid);
  }

  friend bool operator==(const Precoder& a, const Precoder& b) {
    return a.params_ == b.params_ && a.input_len_ == b.input_len_ &&
           a.key_len_ == b.key_len_ && a.blocks_ == b.blocks_;
  }

 private:
  SchemeParams params_;
  std::size_t input_len_;
  std::size_t key_len_;
  std::vector<Group> groups_;
  std::vector<std::vector<linalg::Matrix>> blocks_;
};

// Draws the G-1 lowest-indexed members' blocks uniformly and gives the
// highest-indexed member the negated sum. No rank verification.
inline Precoder random_zero_sum_precoder(const SchemeParams& params,
                                         std::size_t input_len,
                                         std::size_t key_len, std::uint64_t seed) {
  SymbolRng rng(seed);
  std::vector<std::vector<linalg::Matrix>> blocks;
  for (std::size_t g = 0; g < params.group_count(); ++g) {
    std::vector<linalg::Matrix> members;
    linalg::Matrix sum(params.field, input_len, key_len);
    for (int j = 0; j + 1 < params.G; ++j) {
      members.push_back(linalg::random_matrix(input_len, key_len, params.field, rng));
      sum += members.back();
    }
    members.push_back(-sum);
    blocks.push_back(std::move(members));
  }
  return Precoder(params, input_len, key_len, std::move(blocks));
}

// Example with K=3, T=0, G=2 over F_2 and scalar keys A=S_12, B=S_13,
// C=S_23: X_1 = W_1+A+B, X_2 = W_2-A+C, X_3 = W_3-B-C.
inline Precoder fixture_example1() {
  auto params = SchemeParams::make(3, 0, 2, 2, 1);
  const gf::Field& f = params.field;
  auto plus = linalg::Matrix::from_rows(f, {{1}});
  auto minus = linalg::Matrix::from_rows(f, {{-1}});
  return Precoder(params, 1, 1, {{plus, minus}, {plus, minus}, {plus, minus}});
}

// Example with K=5, T=1, G=2 over F_5, L=3, L_S=2. The lower-indexed member
// of each pair carries +H_G and the higher-indexed one -H_G.
inline Precoder fixture_example2() {
  auto params = SchemeParams::make(5, 1, 2, 5, 1);
  const gf::Field& f = params.field;
  // Groups in lexicographic order: 12 13 14 15 23 24 25 34 35 45.
  const std::vector<std::vector<std::vector<long long>>> h = {
      {{2, 3}, {4, 0}, {2, 1}},  // H_{1,2}
      {{3, 2}, {3, 2}, {3, 0}},  // H_{1,3}
      {{3, 3}, {1, 0}, {3, 2}},  // H_{1,4}
      {{3, 4}, {4, 4}, {3, 0}},  // H_{1,5}
      {{2, 1}, {0, 1}, {3, 1}},  // H_{2,3}
      {{0, 0}, {0, 4}, {4, 2}},  // H_{2,4}
      {{1, 0}, {0, 1}, {4, 0}},  // H_{2,5}
      {{4, 2}, {3, 3}, {2, 0}},  // H_{3,4}
      {{0, 0}, {0, 1}, {1, 3}},  // H_{3,5}
      {{0, 3}, {1, 1}, {2, 0}},  // H_{4,5}
  };
  std::vector<std::vector<linalg::Matrix>> blocks;
  for (const auto& rows : h) {
    auto m = linalg::Matrix::from_rows(f, rows);
    blocks.push_back({m, -m});
  }
  return Precoder(params, 3, 2, std::move(blocks));
}

struct GroupKeySet {
  std::vector<Group> groups;
  std::vector<linalg::Vector> keys;  // keys[g] has L_S symbols

  const linalg::Vector& key(std::size_t group) const { return keys.at(group); }
};

inline GroupKeySet sample_keys(const SchemeParams& params, std::size_t key_len,
                               std::uint64_t seed) {
  SymbolRng rng(seed);
  GroupKeySet set{all_groups(params.K, params.G), {}};
  set.keys.reserve(set.groups.size());
  for (std::size_t g = 0; g < set.groups.size(); ++g) {
    linalg::Vector k(key_len);
    for (auto& s : k) s = rng.uniform(params.field.modulus());
    set.keys.push_back(std::move(k));
  }
  return set;
}

inline GroupKeySet sample_keys(const SchemeParams& params, std::uint64_t seed) {
  return sample_keys(params, params.key_len(), seed);
}

struct Message {
  int user;
  linalg::Vector payload;
};

inline void check_keys(const Precoder& p, const GroupKeySet& keys) {
  if (keys.keys.size() != p.groups().size()) {
    throw DimensionMismatch("key set has " + std::to_string(keys.keys.size()) +
                            " keys, precoder expects " + std::to_string(p.groups().size()));
  }
  for (const auto& k : keys.keys) {
    if (k.size() != p.key_len()) throw DimensionMismatch("key of wrong length");
  }
}

// X_k = W_k + sum_{G containing k} H_G^k S_G.
inline Message encode(const Precoder& p, const GroupKeySet& keys,
                      const linalg::Vector& input, int user) {
  if (input.size() != p.input_len()) {
    throw DimensionMismatch("input of length " + std::to_string(input.size()) +
                            ", expected " + std::to_string(p.input_len()));
  }
  if (user < 0 || user >= p.params().K) throw Error("user index out of range");
  check_keys(p, keys);
  const gf::Field& f = p.params().field;
  Message msg{user, input};
  for (auto& s : msg.payload) s %= f.modulus();
  for (std::size_t g : p.groups_of(user)) {
    auto masked = linalg::matvec(p.coefficient(user, g), keys.key(g));
    for (std::size_t i = 0; i < masked.size(); ++i) msg.payload[i] = f.add(msg.payload[i], masked[i]);
  }
  return msg;
}

// Sum of the other users' inputs as seen by `user`: the received messages
// plus the user's own key contributions H_G^k S_G. Callers add W_k for the
// global sum.
inline linalg::Vector recover(const Precoder& p, const GroupKeySet& keys, int user,
                              const std::vector<Message>& received) {
  const int K = p.params().K;
  if (received.size() != static_cast<std::size_t>(K - 1)) {
    throw MissingMessage("expected " + std::to_string(K - 1) + " messages, got " +
                         std::to_string(received.size()));
  }
  std::vector<bool> seen(K, false);
  for (const auto& m : received) {
    if (m.user < 0 || m.user >= K || m.user == user || seen[m.user]) {
      throw MissingMessage("message set must hold one message from every other user");
    }
    if (m.payload.size() != p.input_len()) throw DimensionMismatch("message of wrong length");
    seen[m.user] = true;
  }
  check_keys(p, keys);
  const gf::Field& f = p.params().field;
  linalg::Vector sum(p.input_len(), 0);
  for (const auto& m : received) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f.add(sum[i], m.payload[i]);
  }
  for (std::size_t g : p.groups_of(user)) {
    auto own = linalg::matvec(p.coefficient(user, g), keys.key(g));
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = f.add(sum[i], own[i]);
  }
  return sum;
}

}  // namespace dsa::scheme

#endif  // DSA_SCHEME_HPP_
