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

#ifndef DSA_INFOCALC_HPP_
#define DSA_INFOCALC_HPP_

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/linalg.hpp"
#include "dsa/rational.hpp"
#include "dsa/scheme.hpp"

// Exact information quantities for linear functions of a uniform source.
//
// The source U stacks every input W_k and every group key S_G, all i.i.d.
// uniform over F_q. For any matrix A the vector A U is uniform over the column
// space of A (a linear image of a uniform vector is uniform on the image), so
// H(A U) = rank(A) in q-ary units. Conditional entropies and mutual
// informations are differences of such ranks. Every quantity below is exact.
namespace dsa::info {

struct Segment {
  std::string name;
  std::size_t offset;
  std::size_t length;
};

// Column layout of the source: W_1..W_K (L symbols each) followed by the
// group keys in lexicographic group order (L_S symbols each).
class SourceLayout {
 public:
  SourceLayout(const gf::Field& field, int users, std::vector<scheme::Group> groups,
               std::size_t input_len, std::size_t key_len)
      : field_(field), users_(users), groups_(std::move(groups)),
        input_len_(input_len), key_len_(key_len) {
    std::size_t offset = 0;
    for (int k = 0; k < users_; ++k) {
      segments_.push_back({"W" + std::to_string(k + 1), offset, input_len_});
      offset += input_len_;
    }
    for (const auto& g : groups_) {
      std::string name = "S";
      for (int u : g) name += (name.size() > 1 ? "," : "") + std::to_string(u + 1);
      segments_.push_back({name, offset, key_len_});
      offset += key_len_;
    }
    dimension_ = offset;
  }

  static SourceLayout of(const scheme::Precoder& p) {
    return SourceLayout(p.params().field, p.params().K, p.groups(), p.input_len(),
                        p.key_len());
  }

  const gf::Field& field() const { return field_; }
  int users() const { return users_; }
  const std::vector<scheme::Group>& groups() const { return groups_; }
  std::size_t input_len() const { return input_len_; }
  std::size_t key_len() const { return key_len_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<Segment>& segments() const { return segments_; }

  const Segment& input_segment(int user) const { return segments_.at(user); }
  const Segment& key_segment(std::size_t group) const {
    return segments_.at(static_cast<std::size_t>(users_) + group);
  }

 private:
  gf::Field field_;
  int users_;
  std::vector<scheme::Group> groups_;
  std::size_t input_len_;
  std::size_t key_len_;
  std::size_t dimension_ = 0;
  std::vector<Segment> segments_;
};

// A linear function of the source: coeffs has one column per source symbol.
struct LinearObservable {
  linalg::Matrix coeffs;
  std::string label;

  linalg::Vector evaluate(const linalg::Vector& source) const {
    return linalg::matvec(coeffs, source);
  }
};

using Observables = std::vector<LinearObservable>;

namespace detail {

inline LinearObservable segment_rows(const SourceLayout& layout, const Segment& s) {
  linalg::Matrix m(layout.field(), s.length, layout.dimension());
  for (std::size_t i = 0; i < s.length; ++i) m.set(i, s.offset + i, 1);
  return {std::move(m), s.name};
}

inline std::string join_labels(const Observables& obs) {
  std::string s;
  for (const auto& o : obs) s += (s.empty() ? "" : ",") + o.label;
  return s;
}

}  // namespace detail

inline LinearObservable input(const SourceLayout& layout, int user) {
  return detail::segment_rows(layout, layout.input_segment(user));
}

inline LinearObservable key(const SourceLayout& layout, std::size_t group) {
  return detail::segment_rows(layout, layout.key_segment(group));
}

// Z_k: identity rows of every key segment whose group contains k.
inline LinearObservable individual_key(const SourceLayout& layout, int user) {
  std::vector<linalg::Matrix> parts;
  for (std::size_t g = 0; g < layout.groups().size(); ++g) {
    if (scheme::contains(layout.groups()[g], user)) parts.push_back(key(layout, g).coeffs);
  }
  if (parts.empty()) {
    return {linalg::Matrix(layout.field(), 0, layout.dimension()), "Z" + std::to_string(user + 1)};
  }
  return {linalg::vstack(parts), "Z" + std::to_string(user + 1)};
}

// Sum of the inputs of the given users (L rows).
inline LinearObservable input_sum(const SourceLayout& layout, const std::vector<int>& users) {
  linalg::Matrix m(layout.field(), layout.input_len(), layout.dimension());
  std::string label = "sum W";
  for (int u : users) {
    const auto& s = layout.input_segment(u);
    for (std::size_t i = 0; i < s.length; ++i) m.set(i, s.offset + i, 1);
  }
  return {std::move(m), label + scheme::format_users(users)};
}

inline LinearObservable global_sum(const SourceLayout& layout) {
  std::vector<int> all(layout.users());
  for (int k = 0; k < layout.users(); ++k) all[k] = k;
  auto obs = input_sum(layout, all);
  obs.label = "sum W";
  return obs;
}

// X_k as a function of the source: identity on W_k, H_G^k on each S_G.
inline LinearObservable message(const SourceLayout& layout, const scheme::Precoder& p,
                                int user) {
  if (layout.dimension() != SourceLayout::of(p).dimension()) {
    throw LayoutMismatch("layout does not match precoder");
  }
  linalg::Matrix m(layout.field(), layout.input_len(), layout.dimension());
  const auto& w = layout.input_segment(user);
  for (std::size_t i = 0; i < w.length; ++i) m.set(i, w.offset + i, 1);
  for (std::size_t g : p.groups_of(user)) {
    const auto& s = layout.key_segment(g);
    linalg::Matrix h = p.coefficient(user, g);
    for (std::size_t r = 0; r < h.rows(); ++r) {
      for (std::size_t c = 0; c < h.cols(); ++c) m.set(r, s.offset + c, h.at(r, c));
    }
  }
  return {std::move(m), "X" + std::to_string(user + 1)};
}

// Stacks observables into one matrix; all must share field and column count.
inline linalg::Matrix stack(const Observables& obs, std::size_t columns, const gf::Field& field) {
  std::vector<linalg::Matrix> parts;
  parts.reserve(obs.size() + 1);
  parts.emplace_back(field, 0, columns);
  for (const auto& o : obs) {
    if (o.coeffs.cols() != columns || o.coeffs.field() != field) {
      throw LayoutMismatch("observable '" + o.label + "' does not match the source layout");
    }
    parts.push_back(o.coeffs);
  }
  return linalg::vstack(parts);
}

namespace detail {

struct Frame {
  std::size_t columns;
  gf::Field field;
};

inline Frame frame_of(std::initializer_list<const Observables*> lists) {
  for (const auto* l : lists) {
    if (!l->empty()) return {l->front().coeffs.cols(), l->front().coeffs.field()};
  }
  return {0, gf::Field(2)};
}

inline std::size_t joint_rank(const Frame& fr, std::initializer_list<const Observables*> lists) {
  Observables all;
  for (const auto* l : lists) all.insert(all.end(), l->begin(), l->end());
  return linalg::rank(stack(all, fr.columns, fr.field));
}

}  // namespace detail

inline Rational entropy(const Observables& obs) {
  auto fr = detail::frame_of({&obs});
  return Rational(detail::joint_rank(fr, {&obs}));
}

// H(A | B) = H(A, B) - H(B).
inline Rational conditional_entropy(const Observables& a, const Observables& given) {
  auto fr = detail::frame_of({&a, &given});
  return Rational(detail::joint_rank(fr, {&a, &given})) -
         Rational(detail::joint_rank(fr, {&given}));
}

// I(A; B | C) = H(A,C) + H(B,C) - H(A,B,C) - H(C).
inline Rational mutual_information(const Observables& a, const Observables& b,
                                   const Observables& given = {}) {
  auto fr = detail::frame_of({&a, &b, &given});
  long long v = static_cast<long long>(detail::joint_rank(fr, {&a, &given})) +
                static_cast<long long>(detail::joint_rank(fr, {&b, &given})) -
                static_cast<long long>(detail::joint_rank(fr, {&a, &b, &given})) -
                static_cast<long long>(detail::joint_rank(fr, {&given}));
  return Rational(v);
}

// Convenience: the view of user k colluding with a set of users, i.e.
// W_k, Z_k and (W_i, Z_i) for every colluder i.
inline Observables user_view(const SourceLayout& layout, int user,
                             const std::vector<int>& colluders) {
  Observables v{input(layout, user), individual_key(layout, user)};
  for (int i : colluders) {
    v.push_back(input(layout, i));
    v.push_back(individual_key(layout, i));
  }
  return v;
}

inline std::string describe(const Observables& obs) { return detail::join_labels(obs); }

}  // namespace dsa::info

#endif  // DSA_INFOCALC_HPP_
