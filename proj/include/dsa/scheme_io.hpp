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

#ifndef DSA_SCHEME_IO_HPP_
#define DSA_SCHEME_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/linalg.hpp"
#include "dsa/scheme.hpp"

namespace dsa::scheme {

inline constexpr const char* kSchemeMagic = "DSA1";

// Header "DSA1 K T G q m", then one block per (group, member) with groups in
// lexicographic order and members ascending, each as "rows cols" + rows.
inline void save(std::ostream& os, const Precoder& p) {
  const auto& params = p.params();
  os << kSchemeMagic << ' ' << params.K << ' ' << params.T << ' ' << params.G << ' '
     << params.field.modulus() << ' ' << params.m << '\n';
  for (const auto& members : p.blocks()) {
    for (const auto& b : members) linalg::write(os, b);
  }
}

inline std::string to_text(const Precoder& p) {
  std::ostringstream os;
  save(os, p);
  return os.str();
}

namespace detail {

// Whitespace tokenizer that remembers the line each token came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (!(line_stream_ >> tok)) {
      std::string line;
      if (!std::getline(in_, line)) return false;
      ++line_;
      line_stream_.clear();
      line_stream_.str(line);
    }
    return true;
  }

  std::size_t line() const { return line_; }

  long long integer(const char* what, long long lo, long long hi) {
    std::string tok;
    if (!next(tok)) throw FormatError(line_, std::string("unexpected end of file, expected ") + what);
    long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw FormatError(line_, std::string("expected ") + what + ", got '" + tok + "'");
    }
    if (v < lo || v > hi) {
      throw FormatError(line_, std::string(what) + " " + tok + " out of range");
    }
    return v;
  }

 private:
  std::istream& in_;
  std::istringstream line_stream_;
  std::size_t line_ = 0;
};

}  // namespace detail

// Block dimensions are taken from the file; every block must share them.
inline Precoder load(std::istream& in) {
  detail::TokenReader rd(in);
  std::string tok;
  if (!rd.next(tok)) throw FormatError(0, "empty scheme file");
  if (tok != kSchemeMagic) throw FormatError(rd.line(), "bad magic '" + tok + "', expected DSA1");
  const int K = static_cast<int>(rd.integer("K", 0, 1 << 16));
  const int T = static_cast<int>(rd.integer("T", 0, 1 << 16));
  const int G = static_cast<int>(rd.integer("G", 0, 1 << 16));
  const auto q = static_cast<std::uint64_t>(rd.integer("q", 0, gf::kMaxModulus));
  const int m = static_cast<int>(rd.integer("m", 1, 1 << 16));
  const std::size_t header_line = rd.line();
  std::optional<SchemeParams> params;
  try {
    params = SchemeParams::make(K, T, G, q, m);
  } catch (const Error& e) {
    throw FormatError(header_line, e.what());
  }
  const std::size_t groups = params->group_count();
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<linalg::Matrix>> blocks(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    for (int j = 0; j < G; ++j) {
      const auto r = static_cast<std::size_t>(rd.integer("block rows", 1, 1 << 20));
      const auto c = static_cast<std::size_t>(rd.integer("block cols", 1, 1 << 20));
      if (g == 0 && j == 0) {
        rows = r;
        cols = c;
      } else if (r != rows || c != cols) {
        throw FormatError(rd.line(), "block shape " + std::to_string(r) + "x" + std::to_string(c) +
                                         " differs from first block " + std::to_string(rows) +
                                         "x" + std::to_string(cols));
      }
      linalg::Matrix b(params->field, r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < c; ++k) {
          b.set(i, k, static_cast<std::uint32_t>(
                          rd.integer("matrix entry", 0, static_cast<long long>(q) - 1)));
        }
      }
      blocks[g].push_back(std::move(b));
    }
  }
  if (rd.next(tok)) throw FormatError(rd.line(), "trailing data '" + tok + "'");
  return Precoder(*params, rows, cols, std::move(blocks));
}

inline Precoder from_text(const std::string& text) {
  std::istringstream in(text);
  return load(in);
}

inline void save_file(const std::string& path, const Precoder& p) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  save(out, p);
  if (!out) throw Error("write to " + path + " failed");
}

inline Precoder load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load(in);
}

}  // namespace dsa::scheme

#endif  // DSA_SCHEME_IO_HPP_
