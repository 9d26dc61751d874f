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

#ifndef DSA_AUDITOR_HPP_
#define DSA_AUDITOR_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/infocalc.hpp"
#include "dsa/rank_condition.hpp"
#include "dsa/rational.hpp"
#include "dsa/rng.hpp"
#include "dsa/scheme.hpp"

namespace dsa::audit {

enum class Relation { kEq, kGe, kLe };

// One verified statement "value <relation> bound". user is 0-based; a missing
// user marks a scheme-wide check.
struct Check {
  std::string kind;
  std::optional<int> user;
  Coalition coalition;
  Rational value;
  Rational bound;
  Relation relation = Relation::kEq;
  bool pass = false;

  bool tight() const { return value == bound; }
};

inline bool holds(const Rational& value, Relation rel, const Rational& bound) {
  switch (rel) {
    case Relation::kEq: return value == bound;
    case Relation::kGe: return value >= bound;
    case Relation::kLe: return value <= bound;
  }
  return false;
}

inline Check make_check(std::string kind, std::optional<int> user, Coalition coalition,
                        Rational value, Relation rel, Rational bound) {
  Check c{std::move(kind), user, std::move(coalition), std::move(value), std::move(bound), rel, false};
  c.pass = holds(c.value, rel, c.bound);
  return c;
}

// CHECK <kind> k=<k> T={...} value=<rational> bound=<rational> <PASS|FAIL>
inline std::string format(const Check& c) {
  std::ostringstream os;
  os << "CHECK " << c.kind << " k=" << (c.user ? std::to_string(*c.user + 1) : "*")
     << " T=" << scheme::format_users(c.coalition) << " value=" << to_string(c.value)
     << " bound=" << to_string(c.bound) << (c.pass ? " PASS" : " FAIL");
  return os.str();
}

struct SecurityEntry {
  int user;
  Coalition coalition;
  Rational mi;
  RankCheck rank;
  bool ok;  // mi == 0
};

struct RecoveryEntry {
  int user;
  Rational residual;  // H(sum W | X_{-k}, W_k, Z_k)
  std::size_t samples = 0;
  std::size_t sample_failures = 0;
  bool ok = false;
};

struct AuditReport {
  std::vector<RecoveryEntry> recovery;
  std::vector<SecurityEntry> security;
  // Every check in emission order, including those behind the typed entries.
  std::vector<Check> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  std::vector<Check> of_kind(const std::string& kind) const {
    std::vector<Check> out;
    for (const auto& c : checks) {
      if (c.kind == kind) out.push_back(c);
    }
    return out;
  }

  void append(const AuditReport& o) {
    recovery.insert(recovery.end(), o.recovery.begin(), o.recovery.end());
    security.insert(security.end(), o.security.begin(), o.security.end());
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }

  void write(std::ostream& os) const {
    for (const auto& c : checks) os << format(c) << '\n';
  }
};

namespace detail {

inline std::vector<int> others(int K, int user) {
  std::vector<int> out;
  for (int i = 0; i < K; ++i) {
    if (i != user) out.push_back(i);
  }
  return out;
}

inline info::Observables messages_of(const info::SourceLayout& layout,
                                     const scheme::Precoder& p, const std::vector<int>& users) {
  info::Observables out;
  for (int u : users) out.push_back(info::message(layout, p, u));
  return out;
}

inline info::Observables inputs_of(const info::SourceLayout& layout, const std::vector<int>& users) {
  info::Observables out;
  for (int u : users) out.push_back(info::input(layout, u));
  return out;
}

inline info::Observables keys_of(const info::SourceLayout& layout, const std::vector<int>& users) {
  info::Observables out;
  for (int u : users) out.push_back(info::individual_key(layout, u));
  return out;
}

inline info::Observables concat(info::Observables a, const info::Observables& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

// An information query I(a; b | given) over one source layout.
struct Query {
  info::Observables a;
  info::Observables b;
  info::Observables given;
};

// I({X_i}_{i != k}; {W_i}_{i != k} | sum W, W_k, Z_k, {W_i, Z_i}_{i in T}).
inline Query security_query(const scheme::Precoder& p, int user, const Coalition& coalition) {
  check_coalition(p, user, coalition);
  const auto layout = info::SourceLayout::of(p);
  const auto rest = detail::others(p.params().K, user);
  auto given = info::user_view(layout, user, coalition);
  given.push_back(info::global_sum(layout));
  return {detail::messages_of(layout, p, rest), detail::inputs_of(layout, rest), std::move(given)};
}

// H(sum W | {X_i}_{i != k}, W_k, Z_k), written as I(sum W; sum W | ...).
inline Query recovery_query(const scheme::Precoder& p, int user) {
  if (user < 0 || user >= p.params().K) throw Error("user index out of range");
  const auto layout = info::SourceLayout::of(p);
  auto given = detail::messages_of(layout, p, detail::others(p.params().K, user));
  given.push_back(info::input(layout, user));
  given.push_back(info::individual_key(layout, user));
  return {{info::global_sum(layout)}, {info::global_sum(layout)}, std::move(given)};
}

inline Rational evaluate(const Query& q) { return info::mutual_information(q.a, q.b, q.given); }

inline Rational security_mi(const scheme::Precoder& p, int user, const Coalition& coalition) {
  return evaluate(security_query(p, user, coalition));
}

inline Rational recovery_residual(const scheme::Precoder& p, int user) {
  return evaluate(recovery_query(p, user));
}

inline AuditReport audit_security(const scheme::Precoder& p) {
  AuditReport report;
  const int K = p.params().K;
  for (int k = 0; k < K; ++k) {
    for (const auto& t : collusion_sets(K, k, p.params().T)) {
      SecurityEntry e{k, t, security_mi(p, k, t), rank_condition(p, k, t), false};
      e.ok = e.mi == 0;
      report.checks.push_back(make_check("security", k, t, e.mi, Relation::kEq, 0));
      report.checks.push_back(make_check("rank", k, t, Rational(e.rank.achieved), Relation::kGe,
                                         Rational(e.rank.required)));
      // Zero leakage and the rank condition must agree.
      report.checks.push_back(make_check("equivalence", k, t, Rational(e.ok ? 1 : 0),
                                         Relation::kEq, Rational(e.rank.ok ? 1 : 0)));
      report.security.push_back(std::move(e));
    }
  }
  return report;
}

// Zero-sum per group, the recovery entropy per user, and a realization-level
// spot check of scheme::recover on seeded inputs and keys.
inline AuditReport audit_recovery(const scheme::Precoder& p, std::size_t samples = 4,
                                  std::uint64_t seed = 0) {
  AuditReport report;
  const auto& params = p.params();
  const gf::Field& f = params.field;
  for (std::size_t g = 0; g < p.groups().size(); ++g) {
    auto sum = p.group_sum(g);
    long long nonzero = 0;
    for (auto v : sum.data()) nonzero += v != 0;
    report.checks.push_back(make_check("zero_sum", std::nullopt, p.groups()[g],
                                       Rational(nonzero), Relation::kEq, 0));
  }

  std::vector<std::size_t> failures(params.K, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    auto keys = scheme::sample_keys(params, p.key_len(), derive_seed(seed, 2 * s));
    SymbolRng rng(derive_seed(seed, 2 * s + 1));
    std::vector<linalg::Vector> inputs(params.K, linalg::Vector(p.input_len()));
    for (auto& w : inputs) {
      for (auto& x : w) x = rng.uniform(f.modulus());
    }
    std::vector<scheme::Message> msgs;
    for (int k = 0; k < params.K; ++k) msgs.push_back(scheme::encode(p, keys, inputs[k], k));
    for (int k = 0; k < params.K; ++k) {
      std::vector<scheme::Message> received;
      for (const auto& m : msgs) {
        if (m.user != k) received.push_back(m);
      }
      auto got = scheme::recover(p, keys, k, received);
      linalg::Vector want(p.input_len(), 0);
      for (int i = 0; i < params.K; ++i) {
        if (i == k) continue;
        for (std::size_t j = 0; j < want.size(); ++j) want[j] = f.add(want[j], inputs[i][j]);
      }
      if (got != want) ++failures[k];
    }
  }

  for (int k = 0; k < params.K; ++k) {
    RecoveryEntry e{k, recovery_residual(p, k), samples, failures[k], false};
    e.ok = e.residual == 0 && e.sample_failures == 0;
    report.checks.push_back(make_check("recovery", k, {}, e.residual, Relation::kEq, 0));
    report.checks.push_back(make_check("recovery_sample", k, {},
                                       Rational(static_cast<long long>(e.sample_failures)),
                                       Relation::kEq, 0));
    report.recovery.push_back(std::move(e));
  }
  return report;
}

// Evaluates the converse lemmas on this scheme. They bound every secure
// scheme, so a failure here means the scheme violates recovery or security.
inline AuditReport audit_converse(const scheme::Precoder& p) {
  AuditReport report;
  const auto& params = p.params();
  const int K = params.K;
  const auto layout = info::SourceLayout::of(p);
  const Rational L(static_cast<long long>(p.input_len()));
  const Rational LS(static_cast<long long>(p.key_len()));
  using detail::concat;
  using detail::inputs_of;
  using detail::keys_of;
  using detail::messages_of;

  // Each message carries at least L symbols beyond the others' data:
  // H(X_u | {W_k, Z_k}_{k != u}) >= L.
  for (int u = 0; u < K; ++u) {
    auto rest = detail::others(K, u);
    auto v = info::conditional_entropy(messages_of(layout, p, {u}),
                                       concat(inputs_of(layout, rest), keys_of(layout, rest)));
    report.checks.push_back(make_check("lemma1", u, {}, v, Relation::kGe, L));
  }

  // One other user's data reveals nothing about W_k through X_k:
  // I(X_k; W_k | W_u, Z_u) = 0 for u != k.
  for (int k = 0; k < K; ++k) {
    for (int u : detail::others(K, k)) {
      auto v = info::mutual_information(messages_of(layout, p, {k}), inputs_of(layout, {k}),
                                        {info::input(layout, u), info::individual_key(layout, u)});
      report.checks.push_back(make_check("lemma2", k, {u}, v, Relation::kEq, 0));
    }
  }

  for (int k = 0; k < K; ++k) {
    for (const auto& t : collusion_sets(K, k, params.T)) {
      const auto rest = survivors(K, k, t);
      const Rational n_rest(static_cast<long long>(rest.size()));
      const auto view = info::user_view(layout, k, t);
      const auto x_rest = messages_of(layout, p, rest);
      const auto w_rest = inputs_of(layout, rest);

      // H(X_rest | view) >= |rest| L.
      report.checks.push_back(make_check("corollary1", k, t,
                                         info::conditional_entropy(x_rest, view), Relation::kGe,
                                         n_rest * L));
      // I(X_rest; W_rest | view) <= L.
      report.checks.push_back(make_check("lemma3", k, t,
                                         info::mutual_information(x_rest, w_rest, view),
                                         Relation::kLe, L));

      // Key entropy bound and its inner step. The key entropy is conditioned
      // on keys only; the mix entropy is the rank of the surviving key mixes.
      info::Observables known_keys{info::individual_key(layout, k)};
      for (int i : t) known_keys.push_back(info::individual_key(layout, i));
      const Rational key_entropy = info::conditional_entropy(keys_of(layout, rest), known_keys);
      report.checks.push_back(make_check("lemma4", k, t, key_entropy, Relation::kGe,
                                         Rational(K - params.T - 2) * L));
      std::vector<int> everyone(K);
      for (int i = 0; i < K; ++i) everyone[i] = i;
      const Rational mix = info::conditional_entropy(
          x_rest, concat(inputs_of(layout, everyone), known_keys));
      report.checks.push_back(make_check("lemma4_mix", k, t, mix, Relation::kGe,
                                         Rational(K - static_cast<long long>(t.size()) - 2) * L));

      if (static_cast<int>(t.size()) == params.T) {
        // Key-rate chain: H(Z_rest | Z_T, Z_k) = C(|rest|, G) L_S >= (K-T-2) L.
        report.checks.push_back(make_check(
            "key_count", k, t, key_entropy, Relation::kEq,
            Rational(binomial(static_cast<long long>(rest.size()), params.G)) * LS));
        report.checks.push_back(make_check("key_rate", k, t, key_entropy, Relation::kGe,
                                           Rational(K - params.T - 2) * L));
      }
    }
  }
  return report;
}

// Achieved rates against the optimum: R_X = L_X / L with L_X = L, and
// R_S = L_S / L.
inline AuditReport audit_rates(const scheme::Precoder& p) {
  AuditReport report;
  const auto& params = p.params();
  auto region = scheme::capacity(params.K, params.T, params.G);
  if (!region.feasible) {
    report.checks.push_back(make_check("feasible", std::nullopt, {}, 0, Relation::kEq, 1));
    return report;
  }
  const Rational L(static_cast<long long>(p.input_len()));
  report.checks.push_back(make_check("rate_x", std::nullopt, {}, L / L, Relation::kGe,
                                     region.rx_star));
  report.checks.push_back(make_check("rate_s", std::nullopt, {},
                                     Rational(static_cast<long long>(p.key_len())) / L,
                                     Relation::kGe, region.rs_star));
  return report;
}

inline AuditReport audit_all(const scheme::Precoder& p, std::size_t samples = 4,
                             std::uint64_t seed = 0) {
  AuditReport report = audit_recovery(p, samples, seed);
  report.append(audit_security(p));
  report.append(audit_converse(p));
  report.append(audit_rates(p));
  return report;
}

// True when masked message vectors for two input profiles are identically
// distributed from the point of view of (user, coalition). The profiles must
// agree on the sum and on the inputs known to the observer. The difference of
// the surviving users' inputs must then lie in the column space of the
// surviving key mixes, so one key realization maps onto another.
inline bool masking_equivalent(const scheme::Precoder& p, int user, const Coalition& coalition,
                               const std::vector<linalg::Vector>& a,
                               const std::vector<linalg::Vector>& b) {
  const auto rest = survivors(p.params().K, user, coalition);
  const gf::Field& f = p.params().field;
  linalg::Vector diff;
  for (int i : rest) {
    for (std::size_t j = 0; j < p.input_len(); ++j) diff.push_back(f.sub(a.at(i).at(j), b.at(i).at(j)));
  }
  return linalg::in_column_space(submatrix_hhat(p, user, coalition), diff);
}

struct InfeasibilityReport {
  scheme::Infeasibility regime;
  std::string explanation;
  bool confirmed = false;

  // G = 1: users 1 and 2 with an empty collusion set. The chain
  //   0 = I(Z_1; Z_U | Z_2) >= L - recovery_term - security_term
  // holds for any linear scheme, so the two terms cannot both vanish.
  Rational key_mi;
  Rational recovery_term;  // H(W_1 | X_1, W_2, Z_2, {W_k, X_k}_U)
  Rational security_term;  // I(W_1; X_1 | sum W, W_2, Z_2)
  Rational input_len;
  Rational worst_recovery;  // max_k H(sum W | view of k)
  Rational worst_security;  // max_k leakage with no colluders

  // G >= K - T: every (T+1)-coalition touches every group.
  std::size_t coalitions_checked = 0;
  std::size_t max_uncovered = 0;
  std::size_t rank_failures = 0;  // rank condition failures on a candidate
};

inline InfeasibilityReport audit_infeasibility(int K, int T, int G,
                                               const std::optional<scheme::Precoder>& candidate = {}) {
  scheme::check_model(K, T, G);
  if (scheme::feasible(K, T, G)) {
    throw NotInfeasibleRegime("(K=" + std::to_string(K) + ", T=" + std::to_string(T) +
                              ", G=" + std::to_string(G) + ") is feasible");
  }
  InfeasibilityReport r;
  if (G == 1) {
    r.regime = scheme::Infeasibility::kGroupSizeOne;
    // With singleton groups the zero-sum rule forces every block to zero;
    // that precoder is the default candidate.
    auto params = scheme::SchemeParams::make(K, T, 1, candidate ? candidate->params().field.modulus() : 2);
    scheme::Precoder p = candidate ? *candidate
                                   : scheme::random_zero_sum_precoder(params, 1, 1, 0);
    if (p.params().G != 1 || p.params().K != K) throw Error("candidate does not match (K, G)");
    const auto layout = info::SourceLayout::of(p);
    std::vector<int> rest;
    for (int i = 2; i < K; ++i) rest.push_back(i);
    info::Observables z_rest = detail::keys_of(layout, rest);
    r.key_mi = info::mutual_information({info::individual_key(layout, 0)}, z_rest,
                                        {info::individual_key(layout, 1)});
    info::Observables given{info::message(layout, p, 0), info::input(layout, 1),
                            info::individual_key(layout, 1)};
    for (int i : rest) {
      given.push_back(info::input(layout, i));
      given.push_back(info::message(layout, p, i));
    }
    r.recovery_term = info::conditional_entropy({info::input(layout, 0)}, given);
    r.security_term = info::mutual_information(
        {info::input(layout, 0)}, {info::message(layout, p, 0)},
        {info::global_sum(layout), info::input(layout, 1), info::individual_key(layout, 1)});
    r.input_len = Rational(static_cast<long long>(p.input_len()));
    for (int k = 0; k < K; ++k) {
      r.worst_recovery = std::max(r.worst_recovery, recovery_residual(p, k));
      r.worst_security = std::max(r.worst_security, security_mi(p, k, {}));
    }
    r.confirmed = r.key_mi == 0 && r.recovery_term + r.security_term >= r.input_len &&
                  (r.worst_recovery > 0 || r.worst_security > 0);
    r.explanation =
        "G=1: keys are mutually independent, so I(Z_1; Z_U | Z_2) = " + to_string(r.key_mi) +
        ", yet recovery and security together would force it to be at least L - " +
        to_string(r.recovery_term) + " - " + to_string(r.security_term) + " = " +
        to_string(r.input_len - r.recovery_term - r.security_term) +
        "; worst recovery residual " + to_string(r.worst_recovery) +
        ", worst leakage " + to_string(r.worst_security);
    return r;
  }

  r.regime = scheme::Infeasibility::kGroupTooLarge;
  const auto groups = scheme::all_groups(K, G);
  for (const auto& coalition : subsets(K, T + 1)) {
    std::size_t uncovered = 0;
    for (const auto& g : groups) {
      bool touches = std::any_of(g.begin(), g.end(), [&](int u) {
        return std::binary_search(coalition.begin(), coalition.end(), u);
      });
      if (!touches) ++uncovered;
    }
    r.max_uncovered = std::max(r.max_uncovered, uncovered);
    ++r.coalitions_checked;
  }
  if (candidate) {
    const auto& p = *candidate;
    for (int k = 0; k < K; ++k) {
      for (const auto& t : collusion_sets(K, k, T)) {
        if (static_cast<int>(t.size()) == T && !rank_condition(p, k, t).ok) ++r.rank_failures;
      }
    }
  }
  r.confirmed = r.max_uncovered == 0;
  r.explanation = "G>=K-T: " + std::to_string(r.coalitions_checked) + " coalitions of T+1=" +
                  std::to_string(T + 1) + " users each meet all " +
                  std::to_string(groups.size()) + " groups (K-G+1=" +
                  std::to_string(K - G + 1) + " <= T+1), leaving " +
                  std::to_string(r.max_uncovered) + " keys unknown to the worst coalition";
  return r;
}

}  // namespace dsa::audit

#endif  // DSA_AUDITOR_HPP_
