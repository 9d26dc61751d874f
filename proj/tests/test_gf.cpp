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
#include <vector>

#include <gtest/gtest.h>

#include "dsa/errors.hpp"
#include "dsa/gf.hpp"

namespace {

using dsa::gf::Element;
using dsa::gf::Field;

// Trial division, written independently of gf::is_prime.
bool slow_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d < n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

TEST(Field, AcceptsPrimesRejectsComposites) {
  for (std::uint64_t n = 0; n < 300; ++n) {
    EXPECT_EQ(dsa::gf::is_prime(n), slow_prime(n)) << n;
    if (slow_prime(n)) {
      EXPECT_NO_THROW(Field{n});
    } else {
      EXPECT_THROW(Field{n}, dsa::Error) << n;
    }
  }
}

TEST(Field, RejectsModulusAboveLimit) {
  // 2^31 + 11 is prime but too large for the 32-bit symbol representation.
  EXPECT_THROW(Field{(std::uint64_t{1} << 31) + 11}, dsa::Error);
  EXPECT_NO_THROW(Field{2147483647u});  // 2^31 - 1
}

TEST(Element, SmallArithmetic) {
  Field f5(5);
  EXPECT_EQ((Element(f5, 3) + Element(f5, 4)).value(), 2u);
  EXPECT_EQ((Element(f5, 3) * Element(f5, 4)).value(), 2u);
  EXPECT_EQ((-Element(f5, 2)).value(), 3u);
  EXPECT_EQ(inv(Element(f5, 2)).value(), 3u);
  EXPECT_EQ(Element(f5, -1).value(), 4u);
  EXPECT_EQ(Element(f5, 12).value(), 2u);
}

TEST(Element, InverseOfZeroThrows) {
  Field f7(7);
  EXPECT_THROW(inv(Element(f7, 0)), dsa::DivisionByZero);
  EXPECT_THROW(f7.inv(0), dsa::DivisionByZero);
}

TEST(Element, MixingFieldsThrows) {
  Field f5(5), f7(7);
  EXPECT_THROW(Element(f5, 1) + Element(f7, 1), dsa::FieldMismatch);
  EXPECT_THROW(Element(f5, 1) * Element(f7, 1), dsa::FieldMismatch);
}

// Exhaustive: a * inv(a) = 1 for every nonzero a, and the inverse agrees
// with a linear search.
TEST(Element, InverseExhaustiveSmallPrimes) {
  for (std::uint64_t q = 2; q <= 97; ++q) {
    if (!slow_prime(q)) continue;
    Field f(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      std::uint32_t expected = 0;
      for (std::uint32_t b = 1; b < q; ++b) {
        if ((static_cast<std::uint64_t>(a) * b) % q == 1) expected = b;
      }
      EXPECT_EQ(f.inv(a), expected) << "q=" << q << " a=" << a;
      EXPECT_EQ((Element(f, a) * inv(Element(f, a))).value(), 1u);
    }
  }
}

// Field axioms over all triples for small q.
TEST(Element, AxiomsExhaustive) {
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u}) {
    Field f(q);
    const Element zero(f, 0), one(f, 1);
    for (std::uint32_t x = 0; x < q; ++x) {
      const Element a(f, x);
      EXPECT_EQ(a + zero, a);
      EXPECT_EQ(a * one, a);
      EXPECT_EQ(a + (-a), zero);
      for (std::uint32_t y = 0; y < q; ++y) {
        const Element b(f, y);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        for (std::uint32_t z = 0; z < q; ++z) {
          const Element c(f, z);
          EXPECT_EQ((a + b) + c, a + (b + c));
          EXPECT_EQ((a * b) * c, a * (b * c));
          EXPECT_EQ(a * (b + c), a * b + a * c);
        }
      }
    }
  }
}

// Large modulus: products of two symbols must be reduced correctly.
TEST(Element, LargeModulusAgainstWideArithmetic) {
  const std::uint64_t q = 2147483647u;
  Field f(q);
  const std::vector<std::uint64_t> xs = {0, 1, 2, q - 1, q - 2, 1234567891, 987654321, q / 2};
  for (auto a : xs) {
    for (auto b : xs) {
      const std::uint64_t prod = a * b;  // both below 2^31
      EXPECT_EQ(f.mul(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)),
                static_cast<std::uint32_t>(prod % q));
      EXPECT_EQ(f.add(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)),
                static_cast<std::uint32_t>((a + b) % q));
    }
    if (a != 0) {
      EXPECT_EQ(f.mul(static_cast<std::uint32_t>(a), f.inv(static_cast<std::uint32_t>(a))), 1u);
    }
  }
}

TEST(Field, PowMatchesRepeatedMultiplication) {
  Field f(13);
  for (std::uint32_t b = 0; b < 13; ++b) {
    std::uint32_t acc = 1;
    for (std::uint64_t e = 0; e < 30; ++e) {
      EXPECT_EQ(f.pow(b, e), acc) << b << "^" << e;
      acc = static_cast<std::uint32_t>((static_cast<std::uint64_t>(acc) * b) % 13);
    }
  }
}

}  // namespace
