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

// Scalar diagnostics and entanglement measures. Spectral quantities
// (negativity, entropy) are numeric: symbolic states are evaluated against a
// binding first and the Hermitian eigenproblem is solved in double precision.

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "lofock/state_ops.hpp"

namespace lofock {

// ------------------------------------------------------------ norm / trace

template <Scalar S>
S state_norm(const BasicPureState<S>& v) {
  S acc = ScalarTraits<S>::zero();
  for (const auto& r : v) acc = acc + r.coeff * scalar_conj(r.coeff);
  return acc;
}

template <Scalar S>
S state_trace(const BasicDensityState<S>& s) {
  S acc = ScalarTraits<S>::zero();
  for (const auto& r : s) {
    if (r.ket == r.bra) acc = acc + r.coeff;
  }
  return acc;
}

template <Scalar S>
S state_trace(const BasicDenseMatrix<S>& m) {
  S acc = ScalarTraits<S>::zero();
  for (std::size_t k = 0; k < std::min(m.rows(), m.cols()); ++k) acc = acc + m.at(k, k);
  return acc;
}

/// <psi|psi> for vec, Tr for matcol and mat.
template <Scalar S>
S norm_or_trace(const BasicPureState<S>& v) {
  return state_norm(v);
}
template <Scalar S>
S norm_or_trace(const BasicDensityState<S>& s) {
  return state_trace(s);
}
template <Scalar S>
S norm_or_trace(const BasicDenseMatrix<S>& m) {
  return state_trace(m);
}

// ---------------------------------------------------------- normalization

/// Exact 1/sqrt(n) for a positive constant n with a rational square.
Coeff inverse_sqrt_constant(const Coeff& n);
Complex inverse_sqrt_constant(const Complex& n);

template <Scalar S>
BasicPureState<S> state_normalize(const BasicPureState<S>& v) {
  S n = state_norm(v);
  if (scalar_is_zero(n)) throw Error(ErrorCode::ZeroNorm, "state has zero norm");
  S k = inverse_sqrt_constant(n);
  return state_multiply(k, v);
}

template <Scalar S>
BasicDensityState<S> state_normalize(const BasicDensityState<S>& s) {
  S tr = state_trace(s);
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : s) {
    rows.push_back({divide_by_constant(r.coeff, tr, ErrorCode::ZeroNorm), r.ket, r.bra});
  }
  if (s.empty()) throw Error(ErrorCode::ZeroNorm, "state has zero trace");
  return BasicDensityState<S>(s.header(), std::move(rows));
}

template <Scalar S>
BasicDenseMatrix<S> state_normalize(const BasicDenseMatrix<S>& m) {
  S tr = state_trace(m);
  BasicDenseMatrix<S> out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.at(r, c) = divide_by_constant(m.at(r, c), tr, ErrorCode::ZeroNorm);
  if (scalar_is_zero(tr)) throw Error(ErrorCode::ZeroNorm, "state has zero trace");
  return out;
}

template <Scalar S>
struct NormCheck {
  bool normalized = false;
  S magnitude;
};

/// Exact test for symbolic states; |magnitude - 1| <= 1e-12 for numeric ones.
template <class State, class S = typename State::scalar_type>
NormCheck<S> is_normalized(const State& s) {
  S m = norm_or_trace(s);
  bool ok = false;
  if constexpr (std::is_same_v<S, Coeff>) {
    ok = m == Coeff(1);
  } else {
    ok = std::abs(m - Complex(1.0)) <= 1e-12;
  }
  return {ok, m};
}

// ------------------------------------------------------------ hermiticity

namespace detail {
inline bool scalar_near(const Coeff& a, const Coeff& b, double) { return a == b; }
inline bool scalar_near(const Complex& a, const Complex& b, double tol) {
  return std::abs(a - b) <= tol;
}
}  // namespace detail

/// True iff every row (c, k, b) has a partner (conj(c), b, k). Exact for
/// symbolic states; numeric states use `tol`.
template <Scalar S>
bool is_hermitian(const BasicDensityState<S>& s, double tol = 1e-10) {
  std::map<std::pair<ModeList, ModeList>, const S*> rows;
  for (const auto& r : s) rows[{r.ket, r.bra}] = &r.coeff;
  for (const auto& r : s) {
    auto it = rows.find({r.bra, r.ket});
    S partner = it == rows.end() ? ScalarTraits<S>::zero() : *it->second;
    if (!detail::scalar_near(scalar_conj(r.coeff), partner, tol)) return false;
  }
  return true;
}

template <Scalar S>
bool is_hermitian(const BasicDenseMatrix<S>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  if (m.labeled() && m.row_labels() != m.col_labels()) return is_hermitian(mat2matcol(m), tol);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (!detail::scalar_near(m.at(r, c), scalar_conj(m.at(c, r)), tol)) return false;
  return true;
}

// -------------------------------------------------------- partial transpose

template <Scalar S>
BasicDensityState<S> partial_transpose(const BasicDensityState<S>& s, unsigned which) {
  if (s.K() != 2) {
    throw Error(ErrorCode::NotBipartite,
                "partial transpose needs exactly 2 modes, got K=" + std::to_string(s.K()) +
                    "; trace out the other modes first");
  }
  if (which != 1 && which != 2) {
    throw Error(ErrorCode::ModeOutOfRange, "partial transpose acts on mode 1 or 2");
  }
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : s) {
    ModeList k = r.ket, b = r.bra;
    std::swap(k[which - 1], b[which - 1]);
    rows.push_back({r.coeff, std::move(k), std::move(b)});
  }
  return BasicDensityState<S>(s.header(), std::move(rows));
}

template <Scalar S>
BasicDenseMatrix<S> partial_transpose(const BasicDenseMatrix<S>& m, unsigned which) {
  return matcol2mat(partial_transpose(mat2matcol(m), which));
}

// ---------------------------------------------------- spectral quantities

/// Real eigenvalues (ascending) of a Hermitian numeric matrix. Raises
/// NonHermitianInput when |A - A^dagger| exceeds 1e-10 anywhere.
std::vector<double> hermitian_spectrum(const NumDenseMatrix& m);

struct NegativityResult {
  double negativity = 0;
  double log_negativity = 0;
};

/// Sum_i (|l_i| - l_i) / 2 / Tr rho over the spectrum of the partial
/// transpose; log-negativity is log2(2 N + 1).
NegativityResult negativity(const NumDensityState& s);
NegativityResult negativity(const NumPureState& s);
NegativityResult negativity(const NumDenseMatrix& m);
NegativityResult negativity(const PureState& s, const Binding& env);
NegativityResult negativity(const DensityState& s, const Binding& env);
NegativityResult negativity(const DenseMatrix& m, const Binding& env);

/// -Sum_i l_i log2 l_i over the spectrum of rho / Tr rho, skipping l_i < 1e-12.
/// Eigenvalues below -1e-8 raise NegativeEigenvalueBeyondTolerance.
double entropy(const NumDensityState& s);
double entropy(const NumPureState& s);
double entropy(const PureState& s, const Binding& env);
double entropy(const DensityState& s, const Binding& env);

/// Mean energy in units of hbar*nu: Tr{(N_1 + ... + N_K + K/2) rho}. Not
/// divided by Tr rho.
template <Scalar S>
S energy(const BasicDensityState<S>& s) {
  S acc = ScalarTraits<S>::zero();
  S tr = ScalarTraits<S>::zero();
  for (const auto& r : s) {
    if (r.ket != r.bra) continue;
    long photons = 0;
    for (unsigned n : r.ket) photons += n;
    acc = acc + r.coeff * ScalarTraits<S>::from_int(photons);
    tr = tr + r.coeff;
  }
  S half_k = ScalarTraits<S>::from_radical(Radical{Rational(s.K(), 2), 1});
  return acc + half_k * tr;
}

template <Scalar S>
S energy(const BasicPureState<S>& v) {
  return energy(vec2matcol(v));
}

// --------------------------------------------------------- approximation

/// Symbolic mode (vars non-empty): drop coefficient terms of total degree in
/// `vars` above n. Numeric mode (vars empty): drop rows with |coeff| < 10^-n.
PureState state_approx(const PureState& s, const std::vector<std::string>& vars, unsigned n);
DensityState state_approx(const DensityState& s, const std::vector<std::string>& vars,
                          unsigned n);
NumPureState state_approx(const NumPureState& s, const std::vector<std::string>& vars,
                          unsigned n);
NumDensityState state_approx(const NumDensityState& s, const std::vector<std::string>& vars,
                             unsigned n);

}  // namespace lofock
