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

// Measurements on a subset of modes. An operator on k modes acts as
// (M on the listed modes) (x) (identity on the rest): a ket component
// matches an operator row only through its listed positions.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "lofock/state_ops.hpp"

namespace lofock {

namespace detail {

/// Validates a measured-mode list against an operator on k modes and a
/// state on K modes; returns 0-based positions.
std::vector<unsigned> measured_positions(const std::vector<unsigned>& modes, unsigned k,
                                         unsigned K);

inline ModeList restrict_modes(const ModeList& m, const std::vector<unsigned>& pos) {
  ModeList out;
  out.reserve(pos.size());
  for (unsigned p : pos) out.push_back(m[p]);
  return out;
}

/// (M (x) I)|ket>, memoized per ket.
template <Scalar S>
class SubsystemOperator {
 public:
  SubsystemOperator(BasicDensityState<S> M, std::vector<unsigned> pos)
      : M_(std::move(M)), pos_(std::move(pos)) {
    for (const auto& r : M_) by_bra_[r.bra].push_back(&r);
  }
  SubsystemOperator(const SubsystemOperator&) = delete;
  SubsystemOperator& operator=(const SubsystemOperator&) = delete;

  const std::vector<KetRow<S>>& apply(const ModeList& ket) {
    auto cached = cache_.find(ket);
    if (cached != cache_.end()) return cached->second;
    std::vector<KetRow<S>> out;
    auto it = by_bra_.find(restrict_modes(ket, pos_));
    if (it != by_bra_.end()) {
      for (const auto* row : it->second) {
        ModeList m = ket;
        for (std::size_t k = 0; k < pos_.size(); ++k) m[pos_[k]] = row->ket[k];
        out.push_back({row->coeff, std::move(m)});
      }
    }
    return cache_.emplace(ket, std::move(out)).first->second;
  }

 private:
  BasicDensityState<S> M_;
  std::vector<unsigned> pos_;
  std::map<ModeList, std::vector<const KetBraRow<S>*>> by_bra_;
  std::map<ModeList, std::vector<KetRow<S>>> cache_;
};

/// M rho M^dagger.
template <Scalar S>
BasicDensityState<S> sandwich(const BasicDensityState<S>& M, const std::vector<unsigned>& pos,
                              const BasicDensityState<S>& rho) {
  SubsystemOperator<S> op(M, pos);
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : rho) {
    // std::map nodes are stable, so both references stay valid.
    const auto& kets = op.apply(r.ket);
    const auto& bras = op.apply(r.bra);
    for (const auto& k : kets) {
      for (const auto& b : bras) {
        rows.push_back({k.coeff * r.coeff * scalar_conj(b.coeff), k.ket, b.ket});
      }
    }
  }
  return BasicDensityState<S>::fitted(rho.K(), std::move(rows), rho.d());
}

/// Tr{(E (x) I) rho}.
template <Scalar S>
S trace_applied(const BasicDensityState<S>& E, const std::vector<unsigned>& pos,
                const BasicDensityState<S>& rho) {
  SubsystemOperator<S> op(E, pos);
  S acc = ScalarTraits<S>::zero();
  for (const auto& r : rho) {
    for (const auto& k : op.apply(r.ket)) {
      if (k.ket == r.bra) acc = acc + k.coeff * r.coeff;
    }
  }
  return acc;
}

template <Scalar S>
S squared_norm(const BasicPureState<S>& v) {
  S acc = ScalarTraits<S>::zero();
  for (const auto& r : v) acc = acc + r.coeff * scalar_conj(r.coeff);
  return acc;
}

/// Emits a warning when |psi><psi| is detectably not idempotent (<psi|psi> != 1).
template <Scalar S>
void check_projector(const BasicPureState<S>& psi, std::vector<std::string>* warnings) {
  if (warnings == nullptr) return;
  S n = squared_norm(psi);
  double value = 0;
  if constexpr (std::is_same_v<S, Coeff>) {
    if (!n.is_constant()) return;
    value = n.to_double_constant();
  } else {
    value = n.real();
  }
  if (std::abs(value - 1.0) > 1e-12) {
    warnings->push_back("projector |psi><psi| is not idempotent (<psi|psi> = " +
                        format_number(value) + "); probabilities may be unphysical");
  }
}

}  // namespace detail

template <Scalar S>
BasicDensityState<S> traceout(const BasicDensityState<S>& s, unsigned i) {
  if (i < 1 || i > s.K()) {
    throw Error(ErrorCode::ModeOutOfRange,
                "mode " + std::to_string(i) + " outside 1.." + std::to_string(s.K()));
  }
  if (s.K() == 1) throw Error(ErrorCode::BadModeCount, "cannot trace out the only mode");
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : s) {
    if (r.ket[i - 1] != r.bra[i - 1]) continue;
    ModeList k = r.ket, b = r.bra;
    k.erase(k.begin() + (i - 1));
    b.erase(b.begin() + (i - 1));
    rows.push_back({r.coeff, std::move(k), std::move(b)});
  }
  return BasicDensityState<S>(StateHeader{s.K() - 1, s.d()}, std::move(rows));
}

template <Scalar S>
BasicDensityState<S> traceout(const BasicPureState<S>& s, unsigned i) {
  return traceout(vec2matcol(s), i);
}

template <Scalar S>
BasicDenseMatrix<S> traceout(const BasicDenseMatrix<S>& m, unsigned i) {
  return matcol2mat(traceout(mat2matcol(m), i));
}

/// Traces out several modes, highest index first.
template <Scalar S>
BasicDensityState<S> traceout_modes(BasicDensityState<S> s, std::vector<unsigned> modes) {
  std::sort(modes.begin(), modes.end(), std::greater<>());
  for (unsigned m : modes) s = traceout(s, m);
  return s;
}

/// (|psi1><psi1| (x) I)|psi2>.
template <Scalar S>
BasicPureState<S> project(const BasicPureState<S>& op, const std::vector<unsigned>& modes,
                          const BasicPureState<S>& s,
                          std::vector<std::string>* warnings = nullptr) {
  auto pos = detail::measured_positions(modes, op.K(), s.K());
  detail::check_projector(op, warnings);
  detail::SubsystemOperator<S> P(vec2matcol(op), pos);
  std::vector<KetRow<S>> rows;
  for (const auto& r : s) {
    for (const auto& k : P.apply(r.ket)) rows.push_back({k.coeff * r.coeff, k.ket});
  }
  return BasicPureState<S>::fitted(s.K(), std::move(rows), s.d());
}

/// (M (x) I) |psi2><psi2| (M (x) I)^dagger.
template <Scalar S>
BasicDensityState<S> project(const BasicDensityState<S>& M, const std::vector<unsigned>& modes,
                             const BasicPureState<S>& s,
                             std::vector<std::string>* /*warnings*/ = nullptr) {
  auto pos = detail::measured_positions(modes, M.K(), s.K());
  // M|psi2> first, then lift: cheaper than sandwiching the lifted state.
  detail::SubsystemOperator<S> op(M, pos);
  std::vector<KetRow<S>> rows;
  for (const auto& r : s) {
    for (const auto& k : op.apply(r.ket)) rows.push_back({k.coeff * r.coeff, k.ket});
  }
  return vec2matcol(BasicPureState<S>::fitted(s.K(), std::move(rows), s.d()));
}

/// P rho P with P = |psi1><psi1| (x) I.
template <Scalar S>
BasicDensityState<S> project(const BasicPureState<S>& op, const std::vector<unsigned>& modes,
                             const BasicDensityState<S>& rho,
                             std::vector<std::string>* warnings = nullptr) {
  auto pos = detail::measured_positions(modes, op.K(), rho.K());
  detail::check_projector(op, warnings);
  return detail::sandwich(vec2matcol(op), pos, rho);
}

/// (M (x) I) rho (M (x) I)^dagger.
template <Scalar S>
BasicDensityState<S> project(const BasicDensityState<S>& M, const std::vector<unsigned>& modes,
                             const BasicDensityState<S>& rho,
                             std::vector<std::string>* /*warnings*/ = nullptr) {
  auto pos = detail::measured_positions(modes, M.K(), rho.K());
  return detail::sandwich(M, pos, rho);
}

/// A probability kept as numerator / denominator so that symbolic traces
/// survive; value() divides when the denominator is a constant.
template <Scalar S>
struct Quotient {
  S numerator;
  S denominator;

  S value() const {
    return divide_by_constant(numerator, denominator, ErrorCode::DivisionByZeroTrace);
  }
};

inline Complex eval_quotient(const Quotient<Coeff>& q, const Binding& env) {
  return divide_by_constant(q.numerator.eval(env), q.denominator.eval(env),
                            ErrorCode::DivisionByZeroTrace);
}

/// Tr{(E (x) I) rho} / Tr{rho}; vec arguments are lifted to |psi><psi|.
template <class Op, class State>
auto probability(const Op& op, const std::vector<unsigned>& modes, const State& s,
                 std::vector<std::string>* warnings = nullptr) {
  using S = typename State::scalar_type;
  const auto& rho = to_density(s);
  auto pos = detail::measured_positions(modes, op.K(), rho.K());
  if constexpr (std::is_same_v<Op, BasicPureState<S>>) detail::check_projector(op, warnings);
  const auto& E = to_density(op);
  S trace = ScalarTraits<S>::zero();
  for (const auto& r : rho) {
    if (r.ket == r.bra) trace = trace + r.coeff;
  }
  if (scalar_is_zero(trace)) {
    throw Error(ErrorCode::DivisionByZeroTrace, "state has zero trace");
  }
  return Quotient<S>{detail::trace_applied(E, pos, rho), trace};
}

/// Tr_modes{(E (x) I) rho}, without dividing by Tr rho.
template <class State, class S = typename State::scalar_type>
BasicDensityState<S> povm_result_unnormalized(const BasicDensityState<S>& E,
                                              const std::vector<unsigned>& modes,
                                              const State& s) {
  const auto& rho = to_density(s);
  auto pos = detail::measured_positions(modes, E.K(), rho.K());
  if (modes.size() == rho.K()) {
    throw Error(ErrorCode::BadModeCount, "a POVM result needs at least one unmeasured mode");
  }
  detail::SubsystemOperator<S> op(E, pos);
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : rho) {
    for (const auto& k : op.apply(r.ket)) rows.push_back({k.coeff * r.coeff, k.ket, r.bra});
  }
  return traceout_modes(BasicDensityState<S>(StateHeader{rho.K(), rho.d()}, std::move(rows)),
                        modes);
}

/// Tr_modes{(E (x) I) rho} / Tr rho. Tr rho must be a nonzero constant.
template <class State, class S = typename State::scalar_type>
BasicDensityState<S> povm_result(const BasicDensityState<S>& E,
                                 const std::vector<unsigned>& modes, const State& s) {
  const auto& rho = to_density(s);
  S trace = ScalarTraits<S>::zero();
  for (const auto& r : rho) {
    if (r.ket == r.bra) trace = trace + r.coeff;
  }
  if (scalar_is_zero(trace)) {
    throw Error(ErrorCode::DivisionByZeroTrace, "state has zero trace");
  }
  auto out = povm_result_unnormalized(E, modes, rho);
  std::vector<KetBraRow<S>> rows;
  for (const auto& r : out) {
    rows.push_back(
        {divide_by_constant(r.coeff, trace, ErrorCode::DivisionByZeroTrace), r.ket, r.bra});
  }
  return BasicDensityState<S>(out.header(), std::move(rows));
}

/// Lossy avalanche photodiode: pi_0 = sum_n r^{2n} |n><n|,
/// pi_1 = sum_{n>=1} (1 - r^{2n}) |n><n|.
template <Scalar S>
BasicDensityState<S> apd_povm(unsigned click, const S& r, unsigned N) {
  if (click > 1) throw Error(ErrorCode::OutOfRange, "APD outcome must be 0 or 1");
  if (N < 1) throw Error(ErrorCode::OutOfRange, "APD photon cutoff must be positive");
  std::vector<KetBraRow<S>> rows;
  for (unsigned n = click; n <= N; ++n) {
    S p = ScalarTraits<S>::pow(r, 2 * n);
    rows.push_back({click == 0 ? p : ScalarTraits<S>::one() - p, {n}, {n}});
  }
  return BasicDensityState<S>(StateHeader{1, N + 1}, std::move(rows));
}

}  // namespace lofock
