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

// Declaration, conversion, sorting, indexing and elementary algebra on the
// sparse state containers.

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lofock/state.hpp"

namespace lofock {

// ------------------------------------------------------------ declarations

template <Scalar S = Coeff>
BasicPureState<S> vac(unsigned K) {
  if (K < 1) throw Error(ErrorCode::BadModeCount, "vacuum needs at least one mode");
  return BasicPureState<S>(StateHeader{K, 1}, {{ScalarTraits<S>::one(), ModeList(K, 0)}});
}

/// sum_{n<d} lam^n |n>^{(x)m}, unnormalized. Only m = 1, 2 are defined.
template <Scalar S>
BasicPureState<S> squeezed_vac(unsigned m, unsigned d, const S& lam) {
  if (m != 1 && m != 2) {
    throw Error(ErrorCode::BadModeCount, "squeezed vacuum is defined for 1 or 2 modes");
  }
  if (d < 1) throw Error(ErrorCode::InvariantViolation, "d must be positive");
  std::vector<KetRow<S>> rows;
  for (unsigned n = 0; n < d; ++n) {
    rows.push_back({ScalarTraits<S>::pow(lam, n), ModeList(m, n)});
  }
  return BasicPureState<S>(StateHeader{m, d}, std::move(rows));
}

/// sum_{n<d} alpha^n / sqrt(n!) |n>^{(x)m}, unnormalized.
template <Scalar S>
BasicPureState<S> coherent_state(unsigned m, unsigned d, const S& alpha) {
  if (m < 1) throw Error(ErrorCode::BadModeCount, "coherent state needs at least one mode");
  if (d < 1) throw Error(ErrorCode::InvariantViolation, "d must be positive");
  std::vector<KetRow<S>> rows;
  for (unsigned n = 0; n < d; ++n) {
    unsigned den[] = {n};
    S norm = ScalarTraits<S>::from_radical(Radical::sqrt_factorial_ratio({}, den));
    rows.push_back({norm * ScalarTraits<S>::pow(alpha, n), ModeList(m, n)});
  }
  return BasicPureState<S>(StateHeader{m, d}, std::move(rows));
}

/// Every mode list in {0..d-1}^K, in basis-index order.
std::vector<ModeList> all_mode_lists(unsigned K, unsigned d);

template <Scalar S = Coeff>
BasicDensityState<S> identity_state(unsigned nphot, unsigned K) {
  if (K < 1) throw Error(ErrorCode::BadModeCount, "identity needs at least one mode");
  std::vector<KetBraRow<S>> rows;
  for (auto& v : all_mode_lists(K, nphot + 1)) {
    rows.push_back({ScalarTraits<S>::one(), v, v});
  }
  // Rows are listed in lexicographic order of the mode lists.
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.ket < b.ket; });
  return BasicDensityState<S>(StateHeader{K, nphot + 1}, std::move(rows));
}

// ------------------------------------------------------- mode bookkeeping

/// 1 + sum_i n_i d^(i-1).
std::uint64_t to_index(const ModeList& modes, unsigned d);
ModeList to_modes(std::uint64_t index, unsigned d, unsigned K);

template <Scalar S>
struct IndexedRow {
  S coeff;
  std::uint64_t ket;
};

template <Scalar S>
struct IndexedKetBraRow {
  S coeff;
  std::uint64_t ket;
  std::uint64_t bra;
};

template <Scalar S>
std::vector<IndexedRow<S>> index_columns(const BasicPureState<S>& s) {
  std::vector<IndexedRow<S>> out;
  for (const auto& r : s) out.push_back({r.coeff, to_index(r.ket, s.d())});
  return out;
}

template <Scalar S>
std::vector<IndexedKetBraRow<S>> index_columns(const BasicDensityState<S>& s) {
  std::vector<IndexedKetBraRow<S>> out;
  for (const auto& r : s) {
    out.push_back({r.coeff, to_index(r.ket, s.d()), to_index(r.bra, s.d())});
  }
  return out;
}

template <Scalar S>
BasicPureState<S> modes_columns(const std::vector<IndexedRow<S>>& rows, StateHeader h) {
  std::vector<KetRow<S>> out;
  for (const auto& r : rows) out.push_back({r.coeff, to_modes(r.ket, h.d, h.K)});
  return BasicPureState<S>(h, std::move(out));
}

template <Scalar S>
BasicDensityState<S> modes_columns(const std::vector<IndexedKetBraRow<S>>& rows, StateHeader h) {
  std::vector<KetBraRow<S>> out;
  for (const auto& r : rows) {
    out.push_back({r.coeff, to_modes(r.ket, h.d, h.K), to_modes(r.bra, h.d, h.K)});
  }
  return BasicDensityState<S>(h, std::move(out));
}

// ---------------------------------------------------------------- headers

template <Scalar S>
StateHeader find_knd(const BasicPureState<S>& s) {
  if (s.empty()) throw Error(ErrorCode::EmptyState, "cannot infer K and d from an empty state");
  StateHeader h{static_cast<unsigned>(s.rows().front().ket.size()), 1};
  for (const auto& r : s) h.d = std::max(h.d, max_occupation(r.ket) + 1);
  return h;
}

template <Scalar S>
StateHeader find_knd(const BasicDensityState<S>& s) {
  if (s.empty()) throw Error(ErrorCode::EmptyState, "cannot infer K and d from an empty state");
  StateHeader h{static_cast<unsigned>(s.rows().front().ket.size()), 1};
  for (const auto& r : s) {
    h.d = std::max({h.d, max_occupation(r.ket) + 1, max_occupation(r.bra) + 1});
  }
  return h;
}

template <Scalar S>
StateHeader find_knd(const BasicDenseMatrix<S>& m) {
  if (!m.labeled()) throw Error(ErrorCode::EmptyState, "unlabeled matrix has no mode lists");
  return m.header();
}

/// Same rows, header rewritten from find_knd (empty states keep theirs).
template <class State>
State refit(const State& s) {
  if (s.empty()) return s;
  return State(find_knd(s), s.rows());
}

// ---------------------------------------------------------------- sorting

template <Scalar S>
BasicPureState<S> state_sort(const BasicPureState<S>& s) {
  auto rows = s.rows();
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return mode_order_less(a.ket, b.ket); });
  return BasicPureState<S>(s.header(), std::move(rows));
}

template <Scalar S>
BasicDensityState<S> state_sort(const BasicDensityState<S>& s) {
  auto rows = s.rows();
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.ket != b.ket) return mode_order_less(a.ket, b.ket);
    return mode_order_less(a.bra, b.bra);
  });
  return BasicDensityState<S>(s.header(), std::move(rows));
}

/// Equal header and equal rows once both sides are sorted.
template <class State>
bool equivalent(const State& a, const State& b) {
  if (!(a.header() == b.header()) || a.size() != b.size()) return false;
  auto sa = state_sort(a);
  auto sb = state_sort(b);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const auto& x = sa.rows()[i];
    const auto& y = sb.rows()[i];
    if (!(x.coeff == y.coeff) || x.ket != y.ket) return false;
    if constexpr (requires { x.bra; }) {
      if (x.bra != y.bra) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- tensoring

template <Scalar S>
BasicPureState<S> tensor_vac(const BasicPureState<S>& s, unsigned m) {
  std::vector<KetRow<S>> rows;
  for (const auto& r : s) {
    ModeList k = r.ket;
    k.resize(k.size() + m, 0);
    rows.push_back({r.coeff, std::move(k)});
  }
  return BasicPureState<S>(StateHeader{s.K() + m, s.d()}, std::move(rows));
}

template <Scalar S>
BasicDensityState<S> tensor_vac(const BasicDensityState<S>& s, unsigned m) {
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : s) {
    ModeList k = r.ket, b = r.bra;
    k.resize(k.size() + m, 0);
    b.resize(b.size() + m, 0);
    rows.push_back({r.coeff, std::move(k), std::move(b)});
  }
  return BasicDensityState<S>(StateHeader{s.K() + m, s.d()}, std::move(rows));
}

template <Scalar S>
BasicDenseMatrix<S> tensor_vac(const BasicDenseMatrix<S>& mat, unsigned m) {
  if (!mat.labeled()) throw Error(ErrorCode::ShapeMismatch, "tensor_vac needs a labeled matrix");
  auto extend = [m](std::vector<ModeList> labels) {
    for (auto& l : labels) l.resize(l.size() + m, 0);
    return labels;
  };
  return BasicDenseMatrix<S>(extend(mat.row_labels()), extend(mat.col_labels()), mat.entries());
}

namespace detail {

/// Validates the placement lists and returns 0-based output positions.
std::pair<std::vector<unsigned>, std::vector<unsigned>> tensor_placement(
    unsigned KA, const std::vector<unsigned>& listA, unsigned KB,
    const std::vector<unsigned>& listB);

inline ModeList place(const ModeList& a, const std::vector<unsigned>& pa, const ModeList& b,
                      const std::vector<unsigned>& pb) {
  ModeList out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[pa[i]] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[pb[i]] = b[i];
  return out;
}

}  // namespace detail

/// Output mode listA[i] carries A's mode i+1, listB[i] carries B's mode i+1.
template <Scalar S>
BasicPureState<S> tensor_product(const BasicPureState<S>& A, const std::vector<unsigned>& listA,
                                 const BasicPureState<S>& B, const std::vector<unsigned>& listB) {
  auto [pa, pb] = detail::tensor_placement(A.K(), listA, B.K(), listB);
  std::vector<KetRow<S>> rows;
  for (const auto& a : A) {
    for (const auto& b : B) {
      rows.push_back({a.coeff * b.coeff, detail::place(a.ket, pa, b.ket, pb)});
    }
  }
  return BasicPureState<S>(StateHeader{A.K() + B.K(), std::max(A.d(), B.d())}, std::move(rows));
}

template <Scalar S>
BasicDensityState<S> tensor_product(const BasicDensityState<S>& A,
                                    const std::vector<unsigned>& listA,
                                    const BasicDensityState<S>& B,
                                    const std::vector<unsigned>& listB) {
  auto [pa, pb] = detail::tensor_placement(A.K(), listA, B.K(), listB);
  std::vector<KetBraRow<S>> rows;
  for (const auto& a : A) {
    for (const auto& b : B) {
      rows.push_back({a.coeff * b.coeff, detail::place(a.ket, pa, b.ket, pb),
                      detail::place(a.bra, pa, b.bra, pb)});
    }
  }
  return BasicDensityState<S>(StateHeader{A.K() + B.K(), std::max(A.d(), B.d())},
                              std::move(rows));
}

// ---------------------------------------------------------------- trimming

/// Sparse form of a dense amplitude vector of length d^K; entry i (0-based)
/// is the ket with basis index i+1.
template <Scalar S>
BasicPureState<S> trim(std::span<const S> dense, StateHeader h) {
  std::uint64_t dim = 1;
  for (unsigned k = 0; k < h.K; ++k) dim *= h.d;
  if (dense.size() != dim) {
    throw Error(ErrorCode::ShapeMismatch, "dense vector length is not d^K");
  }
  std::vector<KetRow<S>> rows;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (!scalar_is_zero(dense[i])) rows.push_back({dense[i], to_modes(i + 1, h.d, h.K)});
  }
  return BasicPureState<S>(h, std::move(rows));
}

template <Scalar S>
BasicPureState<S> trim(const BasicPureState<S>& s) {
  return BasicPureState<S>(s.header(), s.rows());
}

template <Scalar S>
BasicDensityState<S> trim(const BasicDensityState<S>& s) {
  return BasicDensityState<S>(s.header(), s.rows());
}

// ------------------------------------------------------------- conversions

/// sum a_n |n>  ->  sum a_n conj(a_m) |n><m|
template <Scalar S>
BasicDensityState<S> vec2matcol(const BasicPureState<S>& v) {
  std::vector<KetBraRow<S>> rows;
  rows.reserve(v.size() * v.size());
  for (const auto& a : v) {
    for (const auto& b : v) {
      rows.push_back({a.coeff * scalar_conj(b.coeff), a.ket, b.ket});
    }
  }
  return BasicDensityState<S>(v.header(), std::move(rows));
}

template <Scalar S>
BasicDensityState<S> to_density(const BasicPureState<S>& v) {
  return vec2matcol(v);
}

template <Scalar S>
const BasicDensityState<S>& to_density(const BasicDensityState<S>& s) {
  return s;
}

/// Square matrix over the sorted union of every ket and bra that occurs.
template <Scalar S>
BasicDenseMatrix<S> matcol2mat(const BasicDensityState<S>& s) {
  std::vector<ModeList> labels;
  {
    std::set<ModeList> seen;
    for (const auto& r : s) {
      if (seen.insert(r.ket).second) labels.push_back(r.ket);
      if (seen.insert(r.bra).second) labels.push_back(r.bra);
    }
  }
  std::sort(labels.begin(), labels.end(), mode_order_less);
  std::map<ModeList, std::size_t> pos;
  for (std::size_t i = 0; i < labels.size(); ++i) pos[labels[i]] = i;
  std::vector<S> entries(labels.size() * labels.size(), ScalarTraits<S>::zero());
  for (const auto& r : s) {
    entries[pos[r.ket] * labels.size() + pos[r.bra]] = r.coeff;
  }
  return BasicDenseMatrix<S>(labels, labels, std::move(entries));
}

template <Scalar S>
BasicDenseMatrix<S> vec2mat(const BasicPureState<S>& v) {
  return matcol2mat(vec2matcol(v));
}

template <Scalar S>
BasicDensityState<S> mat2matcol(const BasicDenseMatrix<S>& m) {
  if (!m.labeled()) throw Error(ErrorCode::UnsupportedConversion, "matrix has no mode labels");
  std::vector<KetBraRow<S>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!scalar_is_zero(m.at(r, c))) {
        rows.push_back({m.at(r, c), m.row_labels()[r], m.col_labels()[c]});
      }
    }
  }
  StateHeader h = m.header();
  return BasicDensityState<S>(h, std::move(rows));
}

// ------------------------------------------------------------------ algebra

template <Scalar S>
BasicPureState<S> state_multiply(const S& k, const BasicPureState<S>& v) {
  std::vector<KetRow<S>> rows;
  for (const auto& r : v) rows.push_back({k * r.coeff, r.ket});
  return BasicPureState<S>(v.header(), std::move(rows));
}

template <Scalar S>
BasicDensityState<S> state_multiply(const S& k, const BasicDensityState<S>& m) {
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : m) rows.push_back({k * r.coeff, r.ket, r.bra});
  return BasicDensityState<S>(m.header(), std::move(rows));
}

namespace detail {
inline void check_same_k(unsigned a, unsigned b) {
  if (a != b) {
    throw Error(ErrorCode::ShapeMismatch,
                "mode counts differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}
}  // namespace detail

/// (M N)(k, b) = sum_j M(k, j) N(j, b)
template <Scalar S>
BasicDensityState<S> state_multiply(const BasicDensityState<S>& M, const BasicDensityState<S>& N) {
  detail::check_same_k(M.K(), N.K());
  std::map<ModeList, std::vector<const KetBraRow<S>*>> by_ket;
  for (const auto& r : N) by_ket[r.ket].push_back(&r);
  std::vector<KetBraRow<S>> rows;
  for (const auto& m : M) {
    auto it = by_ket.find(m.bra);
    if (it == by_ket.end()) continue;
    for (const auto* n : it->second) rows.push_back({m.coeff * n->coeff, m.ket, n->bra});
  }
  return BasicDensityState<S>(StateHeader{M.K(), std::max(M.d(), N.d())}, std::move(rows));
}

/// (M v)(k) = sum_j M(k, j) v(j)
template <Scalar S>
BasicPureState<S> state_multiply(const BasicDensityState<S>& M, const BasicPureState<S>& v) {
  detail::check_same_k(M.K(), v.K());
  std::map<ModeList, const S*> amp;
  for (const auto& r : v) amp[r.ket] = &r.coeff;
  std::vector<KetRow<S>> rows;
  for (const auto& m : M) {
    auto it = amp.find(m.bra);
    if (it != amp.end()) rows.push_back({m.coeff * *it->second, m.ket});
  }
  return BasicPureState<S>(StateHeader{M.K(), std::max(M.d(), v.d())}, std::move(rows));
}

template <Scalar S>
BasicPureState<S> state_complex_conjugate(const BasicPureState<S>& v) {
  std::vector<KetRow<S>> rows;
  for (const auto& r : v) rows.push_back({scalar_conj(r.coeff), r.ket});
  return BasicPureState<S>(v.header(), std::move(rows));
}

template <Scalar S>
BasicDensityState<S> state_complex_conjugate(const BasicDensityState<S>& m) {
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : m) rows.push_back({scalar_conj(r.coeff), r.ket, r.bra});
  return BasicDensityState<S>(m.header(), std::move(rows));
}

template <Scalar S>
BasicDenseMatrix<S> state_complex_conjugate(const BasicDenseMatrix<S>& m) {
  BasicDenseMatrix<S> out = m;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = scalar_conj(m.at(r, c));
  }
  return out;
}

/// Kronecker product. Labels, when both sides carry them, are concatenated.
template <Scalar S>
BasicDenseMatrix<S> kronecker_dense(const BasicDenseMatrix<S>& A, const BasicDenseMatrix<S>& B) {
  std::size_t rows = A.rows() * B.rows();
  std::size_t cols = A.cols() * B.cols();
  std::vector<S> entries(rows * cols, ScalarTraits<S>::zero());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t k = 0; k < B.rows(); ++k)
        for (std::size_t l = 0; l < B.cols(); ++l)
          entries[(i * B.rows() + k) * cols + j * B.cols() + l] = A.at(i, j) * B.at(k, l);
  if (A.labeled() && B.labeled()) {
    auto join = [](const std::vector<ModeList>& x, const std::vector<ModeList>& y) {
      std::vector<ModeList> out;
      for (const auto& a : x) {
        for (const auto& b : y) {
          ModeList m = a;
          m.insert(m.end(), b.begin(), b.end());
          out.push_back(std::move(m));
        }
      }
      return out;
    };
    return BasicDenseMatrix<S>(join(A.row_labels(), B.row_labels()),
                               join(A.col_labels(), B.col_labels()), std::move(entries));
  }
  BasicDenseMatrix<S> out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out.at(r, c) = entries[r * cols + c];
  return out;
}

using DeltaArg = std::variant<long, std::string>;

/// Kronecker delta. Unequal symbols yield a deferred marker variable that
/// resolves once both symbols are bound.
Coeff delta_k(const DeltaArg& i, const DeltaArg& j);

// ------------------------------------------------------------- evaluation

NumPureState eval_state(const PureState& s, const Binding& env);
NumDensityState eval_state(const DensityState& s, const Binding& env);
NumDenseMatrix eval_state(const DenseMatrix& m, const Binding& env);

// ---------------------------------------------------------------- display

std::string render_ket(const ModeList& m);
std::string render_bra(const ModeList& m);
std::string render_braket(const ModeList& ket, const ModeList& bra);

std::string format_number(double x);
std::string format_scalar(const Complex& c);
inline std::string format_scalar(const Coeff& c) { return to_string(c); }

template <Scalar S>
std::string render_state(const BasicPureState<S>& s) {
  std::string out;
  for (const auto& r : s) out += format_scalar(r.coeff) + "  " + render_ket(r.ket) + "\n";
  return out;
}

template <Scalar S>
std::string render_state(const BasicDensityState<S>& s) {
  std::string out;
  for (const auto& r : s) {
    out += format_scalar(r.coeff) + "  " + render_braket(r.ket, r.bra) + "\n";
  }
  return out;
}

/// Matrix layout: first line holds the bra labels, each further line a ket
/// label followed by the row entries; cells are tab separated.
template <Scalar S>
std::string render_state(const BasicDenseMatrix<S>& m) {
  std::string out = "0";
  for (const auto& c : m.col_labels()) out += "\t" + render_bra(c);
  out += "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += m.labeled() ? render_ket(m.row_labels()[r]) : std::to_string(r + 1);
    for (std::size_t c = 0; c < m.cols(); ++c) out += "\t" + format_scalar(m.at(r, c));
    out += "\n";
  }
  return out;
}

// -------------------------------------------------------------------- poly

/// Normal-ordered operator polynomial text over a_1..a_K (kets, creation) and
/// b_1..b_K (bras). Commutation relations are not modeled.
std::string vec2poly(const PureState& v);
std::string matcol2poly(const DensityState& m);
std::string mat2poly(const DenseMatrix& m);
/// K = 0 means infer the mode count from the highest mode index.
PureState poly2vec(std::string_view text, const std::set<std::string>& reals = {},
                   unsigned K = 0);
DensityState poly2matcol(std::string_view text, const std::set<std::string>& reals = {},
                         unsigned K = 0);

}  // namespace lofock
