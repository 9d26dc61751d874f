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

#ifndef DSA_ORACLE_HPP_
#define DSA_ORACLE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/infocalc.hpp"
#include "dsa/linalg.hpp"
#include "dsa/rational.hpp"

// Brute-force information oracle. Enumerates every realization of the source,
// tabulates the empirical joint distribution of the queried observables and
// evaluates Shannon quantities from the counts. It uses no elimination, so it
// can validate the rank calculus in infocalc.hpp.
namespace dsa::oracle {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

// Entropy of one marginal in q-ary units. exact is set when the marginal is
// uniform on its support and the support size is a power of q; value is then
// log_q(support). Otherwise value holds the floating Shannon entropy rounded
// to a rational with denominator 10^9 and exact is false.
struct EntropyValue {
  Rational value;
  bool exact = true;
  double approx = 0.0;
};

struct MiValue {
  Rational value;
  bool exact = true;
  double approx = 0.0;
  std::uint64_t realizations = 0;
};

namespace detail {

// Tuple keys are packed into 64 bits when they fit; otherwise they are kept
// as byte strings.
class Tally {
 public:
  Tally(std::size_t rows, std::uint32_t q) : rows_(rows) {
    bits_ = 1;
    while ((std::uint64_t{1} << bits_) < q) ++bits_;
    packed_ = rows_ * bits_ <= 64;
  }

  void add(const std::uint32_t* values, const std::vector<std::size_t>& idx) {
    if (packed_) {
      std::uint64_t key = 0;
      for (std::size_t i : idx) key = (key << bits_) | values[i];
      ++packed_counts_[key];
    } else {
      std::string key(idx.size() * sizeof(std::uint32_t), '\0');
      char* out = key.data();
      for (std::size_t i : idx) {
        std::memcpy(out, &values[i], sizeof(std::uint32_t));
        out += sizeof(std::uint32_t);
      }
      ++string_counts_[key];
    }
  }

  EntropyValue entropy(std::uint64_t total, std::uint32_t q) const {
    std::vector<std::uint64_t> counts;
    if (packed_) {
      for (const auto& [k, c] : packed_counts_) counts.push_back(c);
    } else {
      for (const auto& [k, c] : string_counts_) counts.push_back(c);
    }
    EntropyValue ev;
    double h = 0.0;
    bool uniform = true;
    for (auto c : counts) {
      double p = static_cast<double>(c) / static_cast<double>(total);
      h -= p * std::log(p) / std::log(static_cast<double>(q));
      if (c != counts.front()) uniform = false;
    }
    ev.approx = h;
    std::uint64_t support = counts.size();
    long long exponent = 0;
    std::uint64_t power = 1;
    while (power < support) {
      power *= q;
      ++exponent;
    }
    if (uniform && power == support) {
      ev.value = Rational(exponent);
      ev.exact = true;
    } else {
      ev.exact = false;
      ev.value = Rational(static_cast<long long>(std::llround(h * 1e9)), 1000000000LL);
    }
    return ev;
  }

 private:
  std::size_t rows_;
  unsigned bits_;
  bool packed_;
  std::unordered_map<std::uint64_t, std::uint64_t> packed_counts_;
  std::unordered_map<std::string, std::uint64_t> string_counts_;
};

inline std::uint64_t checked_realizations(std::uint32_t q, std::size_t n,
                                          std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / q) {
      throw BudgetExceeded("q^N = " + std::to_string(q) + "^" + std::to_string(n) +
                           " exceeds the enumeration budget of " + std::to_string(budget));
    }
    total *= q;
  }
  return total;
}

inline linalg::Matrix gather(const info::Observables& obs, std::size_t columns,
                             const gf::Field& field) {
  return info::stack(obs, columns, field);
}

}  // namespace detail

// Enumerates F_q^N once and returns the exact entropy of each requested
// subset of rows of `rows`. Each subset is a list of row indices.
inline std::vector<EntropyValue> enumerate_entropies(
    const linalg::Matrix& rows, const std::vector<std::vector<std::size_t>>& subsets,
    std::uint64_t budget = kDefaultBudget) {
  const std::uint32_t q = rows.field().modulus();
  const std::size_t n = rows.cols();
  const std::size_t r = rows.rows();
  const std::uint64_t total = detail::checked_realizations(q, n, budget);

  std::vector<detail::Tally> tallies;
  for (const auto& s : subsets) tallies.emplace_back(s.size(), q);

  // Odometer over the source digits. Bumping digit j by one (mod q) adds
  // column j to every observed value, including on wrap-around since q*col = 0.
  std::vector<std::uint32_t> digits(n, 0);
  std::vector<std::uint32_t> observed(r, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    for (std::size_t t = 0; t < tallies.size(); ++t) tallies[t].add(observed.data(), subsets[t]);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < r; ++i) {
        std::uint32_t v = observed[i] + rows.at(i, j);
        observed[i] = v >= q ? v - q : v;
      }
      if (++digits[j] < q) break;
      digits[j] = 0;
    }
  }

  std::vector<EntropyValue> out;
  for (const auto& t : tallies) out.push_back(t.entropy(total, q));
  return out;
}

inline EntropyValue brute_force_entropy(const info::Observables& obs,
                                        std::uint64_t budget = kDefaultBudget) {
  if (obs.empty()) return EntropyValue{};
  const auto& f = obs.front().coeffs.field();
  const std::size_t n = obs.front().coeffs.cols();
  auto rows = detail::gather(obs, n, f);
  std::vector<std::size_t> all(rows.rows());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return enumerate_entropies(rows, {all}, budget).front();
}

// I(A; B | C) by enumeration: H(A,C) + H(B,C) - H(A,B,C) - H(C).
inline MiValue brute_force_mi(const info::Observables& a, const info::Observables& b,
                              const info::Observables& given = {},
                              std::uint64_t budget = kDefaultBudget) {
  const info::Observables* first = !a.empty() ? &a : !b.empty() ? &b : &given;
  if (first->empty()) return MiValue{};
  const auto& f = first->front().coeffs.field();
  const std::size_t n = first->front().coeffs.cols();
  auto ra = detail::gather(a, n, f);
  auto rb = detail::gather(b, n, f);
  auto rc = detail::gather(given, n, f);
  auto rows = linalg::vstack({ra, rb, rc});

  std::vector<std::size_t> ia, ib, ic;
  std::size_t at = 0;
  for (std::size_t i = 0; i < ra.rows(); ++i) ia.push_back(at++);
  for (std::size_t i = 0; i < rb.rows(); ++i) ib.push_back(at++);
  for (std::size_t i = 0; i < rc.rows(); ++i) ic.push_back(at++);
  auto cat = [](std::vector<std::size_t> x, const std::vector<std::size_t>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  auto h = enumerate_entropies(rows, {cat(ia, ic), cat(ib, ic), cat(cat(ia, ib), ic), ic},
                               budget);
  MiValue mi;
  mi.value = h[0].value + h[1].value - h[2].value - h[3].value;
  mi.exact = h[0].exact && h[1].exact && h[2].exact && h[3].exact;
  mi.approx = h[0].approx + h[1].approx - h[2].approx - h[3].approx;
  mi.realizations = detail::checked_realizations(f.modulus(), n, budget);
  return mi;
}

}  // namespace dsa::oracle

#endif  // DSA_ORACLE_HPP_
