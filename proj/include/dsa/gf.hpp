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

#ifndef DSA_GF_HPP_
#define DSA_GF_HPP_

#include <cstdint>
#include <ostream>
#include <string>

#include "dsa/errors.hpp"

namespace dsa::gf {

// Largest supported modulus. Products of two residues must fit in 64 bits.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// The prime field F_q for a modulus chosen at runtime.
class Field {
 public:
  explicit Field(std::uint64_t q) : q_(static_cast<std::uint32_t>(q)) {
    if (q > kMaxModulus || !is_prime(q)) {
      throw Error("field modulus must be a prime <= 2^31, got " +
                  std::to_string(q));
    }
  }

  std::uint32_t modulus() const { return q_; }

  // Raw residue arithmetic. Inputs must already lie in [0, q).
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= q_ ? s - q_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + q_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
  }
  std::uint32_t pow(std::uint32_t base, std::uint64_t e) const {
    std::uint32_t result = 1 % q_;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  // Fermat inversion: a^(q-2).
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(q_));
    return pow(a, q_ - 2);
  }

  // Canonical residue of an arbitrary signed integer.
  std::uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(q_);
    if (r < 0) r += q_;
    return static_cast<std::uint32_t>(r);
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t q_;
};

// A residue tagged with its modulus. Mixing elements of different fields is a
// contract violation and throws FieldMismatch.
class Element {
 public:
  Element(const Field& field, long long value)
      : q_(field.modulus()), value_(field.reduce(value)) {}

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return q_; }

  friend bool operator==(const Element&, const Element&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Element& e) {
    return os << e.value_;
  }

 private:
  friend Element add(const Element&, const Element&);
  friend Element mul(const Element&, const Element&);
  friend Element neg(const Element&);
  friend Element inv(const Element&);

  Element(std::uint32_t q, std::uint32_t v, int) : q_(q), value_(v) {}

  static void check_same(const Element& a, const Element& b) {
    if (a.q_ != b.q_) {
      throw FieldMismatch("operands from F_" + std::to_string(a.q_) +
                          " and F_" + std::to_string(b.q_));
    }
  }

  std::uint32_t q_;
  std::uint32_t value_;
};

inline Element add(const Element& a, const Element& b) {
  Element::check_same(a, b);
  std::uint64_t s = std::uint64_t{a.value_} + b.value_;
  return Element(a.q_, static_cast<std::uint32_t>(s % a.q_), 0);
}

inline Element mul(const Element& a, const Element& b) {
  Element::check_same(a, b);
  std::uint64_t p = std::uint64_t{a.value_} * b.value_;
  return Element(a.q_, static_cast<std::uint32_t>(p % a.q_), 0);
}

inline Element neg(const Element& a) {
  return Element(a.q_, a.value_ == 0 ? 0 : a.q_ - a.value_, 0);
}

inline Element inv(const Element& a) {
  if (a.value_ == 0) {
    throw DivisionByZero("inverse of zero in F_" + std::to_string(a.q_));
  }
  // Fermat: a^(q-2).
  std::uint64_t result = 1, base = a.value_, e = a.q_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % a.q_;
    base = base * base % a.q_;
    e >>= 1;
  }
  return Element(a.q_, static_cast<std::uint32_t>(result), 0);
}

inline Element operator+(const Element& a, const Element& b) { return add(a, b); }
inline Element operator*(const Element& a, const Element& b) { return mul(a, b); }
inline Element operator-(const Element& a) { return neg(a); }

}  // namespace dsa::gf

#endif  // DSA_GF_HPP_
