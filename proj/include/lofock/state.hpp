// Copyright 2026 The lofock Authors
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

// Sparse Fock-basis state containers.
//
//   BasicPureState     "vec"    rows of (coeff, ket)
//   BasicDensityState  "matcol" rows of (coeff, ket, bra)
//   BasicDenseMatrix   "mat"    labeled dense matrix
//
// Every container carries its own header (K modes, d levels per mode). Rows
// never hold a zero coefficient and never repeat a ket (or ket/bra pair):
// duplicates are summed on construction, keeping first-appearance order.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lofock/error.hpp"
#include "lofock/scalar.hpp"

namespace lofock {

using ModeList = std::vector<unsigned>;

struct StateHeader {
  unsigned K = 1;
  unsigned d = 1;
  friend bool operator==(const StateHeader&, const StateHeader&) = default;
};

/// Order induced by the little-endian basis index 1 + sum n_i d^(i-1): compare
/// from the last mode backwards. Independent of d for in-range lists.
inline bool mode_order_less(const ModeList& a, const ModeList& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

inline unsigned max_occupation(const ModeList& m) {
  return m.empty() ? 0 : *std::max_element(m.begin(), m.end());
}

namespace detail {

inline void check_modes(const ModeList& m, const StateHeader& h, std::size_t row,
                        const char* what) {
  if (m.size() != h.K) {
    throw Error(ErrorCode::InvariantViolation,
                "row " + std::to_string(row + 1) + ": " + what + " has " +
                    std::to_string(m.size()) + " modes, header says K=" + std::to_string(h.K));
  }
  for (unsigned n : m) {
    if (n >= h.d) {
      throw Error(ErrorCode::InvariantViolation,
                  "row " + std::to_string(row + 1) + ": occupation " + std::to_string(n) +
                      " exceeds d-1=" + std::to_string(h.d - 1));
    }
  }
}

inline void check_header(const StateHeader& h) {
  if (h.K < 1 || h.d < 1) {
    throw Error(ErrorCode::InvariantViolation, "header requires K >= 1 and d >= 1");
  }
}

}  // namespace detail

template <Scalar S>
struct KetRow {
  S coeff;
  ModeList ket;
};

template <Scalar S>
struct KetBraRow {
  S coeff;
  ModeList ket;
  ModeList bra;
};

template <Scalar S>
class BasicPureState {
 public:
  using scalar_type = S;
  using row_type = KetRow<S>;

  BasicPureState() = default;
  BasicPureState(StateHeader header, std::vector<row_type> rows) : header_(header) {
    detail::check_header(header_);
    std::map<ModeList, std::size_t> index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail::check_modes(rows[i].ket, header_, i, "ket");
      auto [it, fresh] = index.emplace(rows[i].ket, rows_.size());
      if (fresh) {
        rows_.push_back(std::move(rows[i]));
      } else {
        rows_[it->second].coeff = rows_[it->second].coeff + rows[i].coeff;
      }
    }
    std::erase_if(rows_, [](const row_type& r) { return scalar_is_zero(r.coeff); });
  }

  /// Builds a state on K modes whose d is the smallest value that fits every
  /// row (but at least min_d).
  static BasicPureState fitted(unsigned K, std::vector<row_type> rows, unsigned min_d = 1) {
    unsigned d = std::max(1U, min_d);
    for (const auto& r : rows) {
      if (!scalar_is_zero(r.coeff)) d = std::max(d, max_occupation(r.ket) + 1);
    }
    return BasicPureState(StateHeader{K, d}, std::move(rows));
  }

  const StateHeader& header() const { return header_; }
  unsigned K() const { return header_.K; }
  unsigned d() const { return header_.d; }
  const std::vector<row_type>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }

 private:
  StateHeader header_{};
  std::vector<row_type> rows_;
};

template <Scalar S>
class BasicDensityState {
 public:
  using scalar_type = S;
  using row_type = KetBraRow<S>;

  BasicDensityState() = default;
  BasicDensityState(StateHeader header, std::vector<row_type> rows) : header_(header) {
    detail::check_header(header_);
    std::map<std::pair<ModeList, ModeList>, std::size_t> index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail::check_modes(rows[i].ket, header_, i, "ket");
      detail::check_modes(rows[i].bra, header_, i, "bra");
      auto [it, fresh] = index.emplace(std::make_pair(rows[i].ket, rows[i].bra), rows_.size());
      if (fresh) {
        rows_.push_back(std::move(rows[i]));
      } else {
        rows_[it->second].coeff = rows_[it->second].coeff + rows[i].coeff;
      }
    }
    std::erase_if(rows_, [](const row_type& r) { return scalar_is_zero(r.coeff); });
  }

  static BasicDensityState fitted(unsigned K, std::vector<row_type> rows, unsigned min_d = 1) {
    unsigned d = std::max(1U, min_d);
    for (const auto& r : rows) {
      if (!scalar_is_zero(r.coeff)) {
        d = std::max({d, max_occupation(r.ket) + 1, max_occupation(r.bra) + 1});
      }
    }
    return BasicDensityState(StateHeader{K, d}, std::move(rows));
  }

  const StateHeader& header() const { return header_; }
  unsigned K() const { return header_.K; }
  unsigned d() const { return header_.d; }
  const std::vector<row_type>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }

 private:
  StateHeader header_{};
  std::vector<row_type> rows_;
};

/// Dense matrix, optionally labeled by mode lists on rows and columns.
template <Scalar S>
class BasicDenseMatrix {
 public:
  using scalar_type = S;

  BasicDenseMatrix() = default;
  BasicDenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, ScalarTraits<S>::zero()) {}
  BasicDenseMatrix(std::vector<ModeList> row_labels, std::vector<ModeList> col_labels,
                   std::vector<S> entries)
      : rows_(row_labels.size()),
        cols_(col_labels.size()),
        row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw Error(ErrorCode::ShapeMismatch, "entry count does not match label counts");
    }
    std::size_t K = 0;
    bool first = true;
    for (const auto* labels : {&row_labels_, &col_labels_}) {
      for (const auto& l : *labels) {
        if (first) {
          K = l.size();
          first = false;
        } else if (l.size() != K) {
          throw Error(ErrorCode::InvariantViolation, "labels have inconsistent mode counts");
        }
      }
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool labeled() const { return !row_labels_.empty() || !col_labels_.empty(); }
  const std::vector<ModeList>& row_labels() const { return row_labels_; }
  const std::vector<ModeList>& col_labels() const { return col_labels_; }
  const std::vector<S>& entries() const { return entries_; }

  const S& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  S& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  /// Header implied by the labels (K = label length, d = 1 + max occupation).
  StateHeader header() const {
    StateHeader h;
    if (!row_labels_.empty()) h.K = static_cast<unsigned>(row_labels_.front().size());
    else if (!col_labels_.empty()) h.K = static_cast<unsigned>(col_labels_.front().size());
    for (const auto* labels : {&row_labels_, &col_labels_}) {
      for (const auto& l : *labels) h.d = std::max(h.d, max_occupation(l) + 1);
    }
    return h;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ModeList> row_labels_;
  std::vector<ModeList> col_labels_;
  std::vector<S> entries_;
};

using PureState = BasicPureState<Coeff>;
using DensityState = BasicDensityState<Coeff>;
using DenseMatrix = BasicDenseMatrix<Coeff>;
using NumPureState = BasicPureState<Complex>;
using NumDensityState = BasicDensityState<Complex>;
using NumDenseMatrix = BasicDenseMatrix<Complex>;

}  // namespace lofock
