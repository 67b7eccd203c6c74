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

// Passive linear-optical evolution. Creation operators transform as
//   a_i^dagger -> sum_j U(i, j) a_j^dagger,
// so a two-mode beam splitter with block [[t, r], [-r, t]] on (i, j) maps
// a_i^dagger -> t a_i^dagger + r a_j^dagger and a_j^dagger -> -r a_i^dagger + t a_j^dagger.
// Bras transform with conjugated entries.

#include <map>
#include <variant>
#include <vector>

#include "lofock/state_ops.hpp"

namespace lofock {

/// K x K mode transformation; an unlabeled dense matrix.
template <Scalar S>
using BasicModeUnitary = BasicDenseMatrix<S>;
using ModeUnitary = BasicModeUnitary<Coeff>;
using NumModeUnitary = BasicModeUnitary<Complex>;

template <Scalar S>
struct BeamSplitter {
  unsigned i = 1;
  unsigned j = 2;
  S t;
  S r;
};

/// Beam splitter whose reflectivity is derived as sqrt(1 - t^2).
template <Scalar S>
struct BeamSplitter3 {
  unsigned i = 1;
  unsigned j = 2;
  S t;
};

/// Phase shifter; `u` is the unit-modulus factor exp(i phi).
template <Scalar S>
struct PhaseShifter {
  unsigned i = 1;
  S u;
};

template <Scalar S>
using CircuitElement = std::variant<BeamSplitter<S>, BeamSplitter3<S>, PhaseShifter<S>>;

/// Opaque phase factor for a named angle; evaluates to exp(i * phi).
inline Coeff phase_factor(const std::string& phi) { return Coeff::variable("u_" + phi); }
inline Complex phase_factor(double phi) { return std::exp(Complex(0.0, phi)); }

/// sqrt(1 - t^2). Symbolic t must be a single variable (giving the derived
/// variable rc_<t>) or a rational constant in [-1, 1].
Coeff complementary_reflectivity(const Coeff& t);
inline Complex complementary_reflectivity(const Complex& t) {
  return std::sqrt(Complex(1.0, 0.0) - t * t);
}

namespace detail {

inline void check_mode(unsigned i, unsigned K) {
  if (i < 1 || i > K) {
    throw Error(ErrorCode::ModeOutOfRange,
                "mode " + std::to_string(i) + " outside 1.." + std::to_string(K));
  }
}

inline void check_pair(unsigned i, unsigned j, unsigned K) {
  check_mode(i, K);
  check_mode(j, K);
  if (i == j) throw Error(ErrorCode::SameMode, "beam splitter needs two distinct modes");
}

inline long binomial(unsigned n, unsigned k) {
  long b = 1;
  for (unsigned x = 1; x <= k; ++x) b = b * static_cast<long>(n - k + x) / static_cast<long>(x);
  return b;
}

/// Rows U|ket> for an arbitrary K x K unitary, via multinomial expansion of
/// prod_i (sum_j U(i,j) a_j^dagger)^{n_i} / sqrt(n_i!).
template <Scalar S>
std::vector<KetRow<S>> expand_ket(const BasicModeUnitary<S>& U, const ModeList& n) {
  const std::size_t K = n.size();
  std::map<ModeList, S> poly{{ModeList(K, 0), ScalarTraits<S>::one()}};
  for (std::size_t i = 0; i < K; ++i) {
    for (unsigned rep = 0; rep < n[i]; ++rep) {
      std::map<ModeList, S> next;
      for (const auto& [mono, c] : poly) {
        for (std::size_t j = 0; j < K; ++j) {
          if (scalar_is_zero(U.at(i, j))) continue;
          ModeList m = mono;
          ++m[j];
          auto [it, fresh] = next.try_emplace(std::move(m), ScalarTraits<S>::zero());
          it->second = it->second + c * U.at(i, j);
        }
      }
      poly = std::move(next);
    }
  }
  std::vector<KetRow<S>> out;
  for (auto& [m, c] : poly) {
    if (scalar_is_zero(c)) continue;
    S norm = ScalarTraits<S>::from_radical(Radical::sqrt_factorial_ratio(m, n));
    out.push_back({c * norm, m});
  }
  return out;
}

/// Two-mode expansion of |..n..m..> under the block [[t, r], [-r, t]] on (i, j).
template <Scalar S>
std::vector<KetRow<S>> expand_bs(const ModeList& ket, unsigned i, unsigned j, const S& t,
                                 const S& r) {
  const unsigned n = ket[i], m = ket[j];
  const S minus_r = -r;
  std::map<unsigned, S> amp;  // keyed by output occupation p of mode i
  for (unsigned k = 0; k <= n; ++k) {
    for (unsigned l = 0; l <= m; ++l) {
      S term = ScalarTraits<S>::from_int(binomial(n, k) * binomial(m, l)) *
               ScalarTraits<S>::pow(t, k) * ScalarTraits<S>::pow(r, n - k) *
               ScalarTraits<S>::pow(minus_r, l) * ScalarTraits<S>::pow(t, m - l);
      auto [it, fresh] = amp.try_emplace(k + l, ScalarTraits<S>::zero());
      it->second = it->second + term;
    }
  }
  std::vector<KetRow<S>> out;
  for (auto& [p, a] : amp) {
    if (scalar_is_zero(a)) continue;
    const unsigned q = n + m - p;
    unsigned num[] = {p, q};
    unsigned den[] = {n, m};
    ModeList out_ket = ket;
    out_ket[i] = p;
    out_ket[j] = q;
    out.push_back({a * ScalarTraits<S>::from_radical(Radical::sqrt_factorial_ratio(num, den)),
                   std::move(out_ket)});
  }
  return out;
}

/// Applies a per-ket expansion to every ket (and conjugated to every bra).
template <Scalar S, class Expand>
BasicPureState<S> evolve(const BasicPureState<S>& s, Expand&& expand) {
  std::vector<KetRow<S>> rows;
  for (const auto& r : s) {
    for (auto& e : expand(r.ket)) rows.push_back({r.coeff * e.coeff, std::move(e.ket)});
  }
  return BasicPureState<S>::fitted(s.K(), std::move(rows));
}

template <Scalar S, class Expand>
BasicDensityState<S> evolve(const BasicDensityState<S>& s, Expand&& expand) {
  std::map<ModeList, std::vector<KetRow<S>>> cache;
  auto get = [&](const ModeList& m) -> const std::vector<KetRow<S>>& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, expand(m)).first;
    return it->second;
  };
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : s) {
    const auto& kets = get(r.ket);
    const auto& bras = get(r.bra);
    for (const auto& k : kets) {
      for (const auto& b : bras) {
        rows.push_back({r.coeff * k.coeff * scalar_conj(b.coeff), k.ket, b.ket});
      }
    }
  }
  return BasicDensityState<S>::fitted(s.K(), std::move(rows));
}

}  // namespace detail

template <class State, class S = typename State::scalar_type>
State beam_splitter(const State& s, unsigned i, unsigned j, const S& t, const S& r) {
  detail::check_pair(i, j, s.K());
  return detail::evolve(
      s, [&](const ModeList& ket) { return detail::expand_bs(ket, i - 1, j - 1, t, r); });
}

template <class State, class S = typename State::scalar_type>
State phase_shifter(const State& s, unsigned i, const S& u) {
  detail::check_mode(i, s.K());
  return detail::evolve(s, [&](const ModeList& ket) {
    return std::vector<KetRow<S>>{{ScalarTraits<S>::pow(u, ket[i - 1]), ket}};
  });
}

/// U = E_1 E_2 ... E_n: applying the product equals applying the elements in
/// list order.
template <Scalar S>
BasicModeUnitary<S> build_unitary(const std::vector<CircuitElement<S>>& elements, unsigned K) {
  if (K < 1) throw Error(ErrorCode::BadModeCount, "unitary needs at least one mode");
  BasicModeUnitary<S> U(K, K);
  for (unsigned k = 0; k < K; ++k) U.at(k, k) = ScalarTraits<S>::one();
  for (const auto& element : elements) {
    BasicModeUnitary<S> E(K, K);
    for (unsigned k = 0; k < K; ++k) E.at(k, k) = ScalarTraits<S>::one();
    std::visit(
        [&](const auto& el) {
          using El = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<El, PhaseShifter<S>>) {
            detail::check_mode(el.i, K);
            E.at(el.i - 1, el.i - 1) = el.u;
          } else {
            detail::check_pair(el.i, el.j, K);
            S t = el.t;
            S r;
            if constexpr (std::is_same_v<El, BeamSplitter<S>>) {
              r = el.r;
            } else {
              r = complementary_reflectivity(el.t);
            }
            E.at(el.i - 1, el.i - 1) = t;
            E.at(el.i - 1, el.j - 1) = r;
            E.at(el.j - 1, el.i - 1) = -r;
            E.at(el.j - 1, el.j - 1) = t;
          }
        },
        element);
    BasicModeUnitary<S> P(K, K);
    for (unsigned a = 0; a < K; ++a)
      for (unsigned b = 0; b < K; ++b) {
        S acc = ScalarTraits<S>::zero();
        for (unsigned c = 0; c < K; ++c) acc = acc + U.at(a, c) * E.at(c, b);
        P.at(a, b) = acc;
      }
    U = std::move(P);
  }
  return U;
}

template <class State, class S = typename State::scalar_type>
State unitary_evolution(const BasicModeUnitary<S>& U, const State& s) {
  if (U.rows() != s.K() || U.cols() != s.K()) {
    throw Error(ErrorCode::DimensionMismatch,
                "unitary is " + std::to_string(U.rows()) + "x" + std::to_string(U.cols()) +
                    " but the state has K=" + std::to_string(s.K()));
  }
  return detail::evolve(s, [&](const ModeList& ket) { return detail::expand_ket(U, ket); });
}

NumModeUnitary eval_unitary(const ModeUnitary& U, const Binding& env);

}  // namespace lofock
