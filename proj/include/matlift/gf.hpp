// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "matlift/errors.hpp"
#include "matlift/matroid.hpp"

namespace matlift {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

/// Arithmetic mod a prime p <= 251.
class PrimeField {
 public:
  explicit PrimeField(int p) : p_(p) {
    if (p > 251 || !is_prime(p)) throw PreconditionError("field order must be a prime <= 251, got " + std::to_string(p));
  }

  int order() const { return p_; }
  int reduce(long long v) const { return static_cast<int>(((v % p_) + p_) % p_); }
  int add(int a, int b) const { return (a + b) % p_; }
  int sub(int a, int b) const { return (a - b + p_) % p_; }
  int mul(int a, int b) const { return a * b % p_; }

  int inverse(int a) const {
    if (a == 0) throw PreconditionError("zero has no inverse");
    int result = 1;
    for (int e = p_ - 2, base = a; e > 0; e >>= 1, base = mul(base, base)) {
      if (e & 1) result = mul(result, base);
    }
    return result;
  }

  bool operator==(const PrimeField&) const = default;

 private:
  int p_;
};

using GfVector = std::vector<int>;

class GfMatrix {
 public:
  GfMatrix(int p, int rows, int cols) : field_(p), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw PreconditionError("negative matrix dimension");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
  }

  GfMatrix(int p, const std::vector<std::vector<long long>>& rows) : GfMatrix(p, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size())) {
    for (int i = 0; i < rows_; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != cols_) throw PreconditionError("ragged matrix rows");
      for (int j = 0; j < cols_; ++j) set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }

  const PrimeField& field() const { return field_; }
  int prime() const { return field_.order(); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int at(int i, int j) const { return data_[index(i, j)]; }
  void set(int i, int j, long long v) { data_[index(i, j)] = field_.reduce(v); }

  GfMatrix select_columns(const std::vector<int>& cols) const {
    GfMatrix out(prime(), rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols.size(); ++k) out.set(i, static_cast<int>(k), at(i, cols[k]));
    }
    return out;
  }

  GfMatrix select_rows(const std::vector<int>& rows) const {
    GfMatrix out(prime(), static_cast<int>(rows.size()), cols_);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (int j = 0; j < cols_; ++j) out.set(static_cast<int>(k), j, at(rows[k], j));
    }
    return out;
  }

  GfVector multiply(const GfVector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw PreconditionError("vector length does not match column count");
    GfVector out(static_cast<std::size_t>(rows_), 0);
    for (int i = 0; i < rows_; ++i) {
      int acc = 0;
      for (int j = 0; j < cols_; ++j) acc = field_.add(acc, field_.mul(at(i, j), x[static_cast<std::size_t>(j)]));
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  }

  bool operator==(const GfMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw PreconditionError("matrix index out of range");
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  PrimeField field_;
  int rows_;
  int cols_;
  std::vector<int> data_;
};

struct Rref {
  GfMatrix reduced;
  std::vector<int> pivots;
};

inline Rref rref(GfMatrix a) {
  const PrimeField& f = a.field();
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int found = -1;
    for (int i = row; i < a.rows(); ++i) {
      if (a.at(i, col) != 0) {
        found = i;
        break;
      }
    }
    if (found < 0) continue;
    if (found != row) {
      for (int j = 0; j < a.cols(); ++j) {
        const int t = a.at(row, j);
        a.set(row, j, a.at(found, j));
        a.set(found, j, t);
      }
    }
    const int inv = f.inverse(a.at(row, col));
    for (int j = 0; j < a.cols(); ++j) a.set(row, j, f.mul(a.at(row, j), inv));
    for (int i = 0; i < a.rows(); ++i) {
      const int factor = a.at(i, col);
      if (i == row || factor == 0) continue;
      for (int j = 0; j < a.cols(); ++j) a.set(i, j, f.sub(a.at(i, j), f.mul(factor, a.at(row, j))));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

inline int matrix_rank(const GfMatrix& a) { return static_cast<int>(rref(a).pivots.size()); }

/// Basis of the right kernel, one vector per free column.
inline std::vector<GfVector> kernel_basis(const GfMatrix& a) {
  const auto [r, pivots] = rref(a);
  const PrimeField& f = a.field();
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<GfVector> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    GfVector v(static_cast<std::size_t>(a.cols()), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = f.sub(0, r.at(static_cast<int>(i), free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

inline int column_rank(const GfMatrix& a, Mask cols) {
  if (cols == 0 || a.rows() == 0) return 0;
  return matrix_rank(a.select_columns(elements_of(cols)));
}

/// The matroid on the columns of a; a zero-row matrix gives the all-loops matroid.
inline Matroid column_matroid(const GfMatrix& a) {
  if (a.cols() > kMaxElements) throw PreconditionError("more than 64 columns");
  return Matroid::from_rank(a.cols(), [&](Mask x) { return column_rank(a, x); });
}

/// The kernel vector of a supported on the circuit c, scaled so that its first
/// nonzero entry is 1.
inline GfVector circuit_vector(const GfMatrix& a, Mask c) {
  const std::vector<int> cols = elements_of(c);
  if (cols.empty() || highest_element(c) >= a.cols()) throw PreconditionError("column set out of range");
  const std::vector<GfVector> kernel = kernel_basis(a.select_columns(cols));
  if (kernel.size() != 1) {
    throw PreconditionError(format_set(c) + " is not a circuit: its kernel has dimension " + std::to_string(kernel.size()));
  }
  const GfVector& k = kernel[0];
  int lead = 0;
  for (int v : k) {
    if (v == 0) throw PreconditionError(format_set(c) + " is not a circuit: kernel vector misses part of it");
    if (lead == 0) lead = v;
  }
  const PrimeField& f = a.field();
  const int inv = f.inverse(lead);
  GfVector out(static_cast<std::size_t>(a.cols()), 0);
  for (std::size_t i = 0; i < cols.size(); ++i) out[static_cast<std::size_t>(cols[i])] = f.mul(k[i], inv);
  return out;
}

}  // namespace matlift
