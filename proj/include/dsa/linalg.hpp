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

#ifndef DSA_LINALG_HPP_
#define DSA_LINALG_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsa/errors.hpp"
#include "dsa/gf.hpp"
#include "dsa/rng.hpp"

namespace dsa::linalg {

using Vector = std::vector<std::uint32_t>;

// Dense row-major matrix over a prime field.
class Matrix {
 public:
  Matrix(const gf::Field& field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  // Entries are reduced mod q, so signed literals such as -1 are accepted.
  static Matrix from_rows(const gf::Field& field,
                          const std::vector<std::vector<long long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) {
        throw DimensionMismatch("ragged row " + std::to_string(r));
      }
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, field.reduce(rows[r][c]));
    }
    return m;
  }

  static Matrix identity(const gf::Field& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1 % field.modulus());
    return m;
  }

  const gf::Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  gf::Element element(std::size_t r, std::size_t c) const {
    return gf::Element(field_, at(r, c));
  }
  void set(std::size_t r, std::size_t c, std::uint32_t v) {
    data_[r * cols_ + c] = v % field_.modulus();
  }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const std::uint32_t> data() const { return data_; }

  bool is_zero() const {
    for (auto v : data_) {
      if (v != 0) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
    }
    return t;
  }

  Matrix operator-() const {
    Matrix n = *this;
    for (auto& v : n.data_) v = field_.neg(v);
    return n;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.add(data_[i], o.data_[i]);
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = field_.sub(data_[i], o.data_[i]);
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.field_ != b.field_) throw FieldMismatch("matrix product across fields");
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("product " + a.shape() + " * " + b.shape());
    }
    const std::uint64_t q = a.field_.modulus();
    Matrix p(a.field_, a.rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t x = a.at(r, k);
        if (x == 0) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) acc[c] = (acc[c] + x * b.at(k, c)) % q;
      }
      for (std::size_t c = 0; c < b.cols_; ++c) p.data_[r * b.cols_ + c] = static_cast<std::uint32_t>(acc[c]);
    }
    return p;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_same_shape(const Matrix& o, const char* op) const {
    if (field_ != o.field_) throw FieldMismatch(std::string("matrix ") + op + " across fields");
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionMismatch(shape() + " " + op + " " + o.shape());
    }
  }

  gf::Field field_;
  std::size_t rows_;
  std::size_t cols_;
  Vector data_;
};

inline Vector matvec(const Matrix& m, std::span<const std::uint32_t> v) {
  if (m.cols() != v.size()) {
    throw DimensionMismatch("matvec " + m.shape() + " * vector of length " +
                            std::to_string(v.size()));
  }
  const std::uint64_t q = m.field().modulus();
  Vector out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t acc = 0;
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc = (acc + std::uint64_t{row[c]} * v[c]) % q;
    out[r] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

inline std::vector<gf::Element> matvec(const Matrix& m,
                                       const std::vector<gf::Element>& v) {
  Vector raw;
  raw.reserve(v.size());
  for (const auto& e : v) {
    if (e.modulus() != m.field().modulus()) throw FieldMismatch("matvec across fields");
    raw.push_back(e.value());
  }
  std::vector<gf::Element> out;
  for (auto x : matvec(m, raw)) out.emplace_back(m.field(), x);
  return out;
}

// Reduced row-echelon form together with the pivot column of each nonzero row.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination taking the first nonzero entry in each column as
// pivot. Exact arithmetic needs no pivoting strategy.
inline Echelon rref(Matrix m) {
  const gf::Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint32_t> a(m.data().begin(), m.data().end());
  auto at = [&](std::size_t r, std::size_t c) -> std::uint32_t& { return a[r * cols + c]; };
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != lead) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(lead, j));
    }
    const std::uint32_t inv = f.inv(at(lead, c));
    for (std::size_t j = c; j < cols; ++j) at(lead, j) = f.mul(at(lead, j), inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || at(r, c) == 0) continue;
      const std::uint32_t factor = at(r, c);
      for (std::size_t j = c; j < cols; ++j) {
        at(r, j) = f.sub(at(r, j), f.mul(factor, at(lead, j)));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  Matrix out(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.set(r, c, at(r, c));
  }
  return {std::move(out), std::move(pivots)};
}

// Forward elimination only; cheaper than rref when just the rank is needed.
inline std::size_t rank(const Matrix& m) {
  const gf::Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::uint64_t q = f.modulus();
  std::vector<std::uint32_t> a(m.data().begin(), m.data().end());
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    }
    const std::uint64_t inv = f.inv(a[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint32_t x = a[i * cols + c];
      if (x == 0) continue;
      const std::uint64_t factor = (q - (x * inv) % q) % q;
      for (std::size_t j = c; j < cols; ++j) {
        a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + factor * a[r * cols + j]) % q);
      }
    }
    ++r;
  }
  return r;
}

// Columns form a basis of {x : m x = 0}.
inline Matrix kernel_basis(const Matrix& m) {
  const gf::Field& f = m.field();
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  Matrix basis(f, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const std::size_t fc = free_cols[j];
    basis.set(fc, j, 1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      basis.set(e.pivots[i], j, f.neg(e.reduced.at(i, fc)));
    }
  }
  return basis;
}

inline Matrix vstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw DimensionMismatch("vstack of nothing");
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DimensionMismatch("vstack: column counts differ");
    if (p.field() != parts.front().field()) throw FieldMismatch("vstack across fields");
    rows += p.rows();
  }
  Matrix out(parts.front().field(), rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) out.set(r0 + r, c, p.at(r, c));
    }
    r0 += p.rows();
  }
  return out;
}

inline Matrix hstack(const std::vector<Matrix>& parts) {
  if (parts.empty()) throw DimensionMismatch("hstack of nothing");
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DimensionMismatch("hstack: row counts differ");
    if (p.field() != parts.front().field()) throw FieldMismatch("hstack across fields");
    cols += p.cols();
  }
  Matrix out(parts.front().field(), rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < p.cols(); ++c) out.set(r, c0 + c, p.at(r, c));
    }
    c0 += p.cols();
  }
  return out;
}

// Assembles a grid of blocks; every block in a grid row shares its row count
// and every block in a grid column shares its column count.
inline Matrix block(const std::vector<std::vector<Matrix>>& grid) {
  std::vector<Matrix> bands;
  bands.reserve(grid.size());
  for (const auto& band : grid) bands.push_back(hstack(band));
  return vstack(bands);
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix top_right(a.field(), a.rows(), b.cols());
  Matrix bottom_left(a.field(), b.rows(), a.cols());
  return block({{a, top_right}, {bottom_left, b}});
}

inline bool in_column_space(const Matrix& m, std::span<const std::uint32_t> v) {
  if (v.size() != m.rows()) throw DimensionMismatch("column-space test: length mismatch");
  Matrix col(m.field(), v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) col.set(i, 0, v[i]);
  return rank(hstack({m, col})) == rank(m);
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols,
                            const gf::Field& field, SymbolRng& rng) {
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng.uniform(field.modulus()));
  }
  return m;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols,
                            const gf::Field& field, std::uint64_t seed) {
  SymbolRng rng(seed);
  return random_matrix(rows, cols, field, rng);
}

// Text form: "rows cols" on one line, then one line of entries per row.
inline void write(std::ostream& os, const Matrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m.at(r, c);
    }
    os << '\n';
  }
}

}  // namespace dsa::linalg

#endif  // DSA_LINALG_HPP_
