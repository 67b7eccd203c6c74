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

#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "lofock/linear_optics.hpp"
#include "lofock/measurement.hpp"

using namespace lofock;

namespace {

Coeff var(const std::string& name, bool real = false) { return Coeff::variable(name, real); }

template <class Fn>
ErrorCode error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

PureState xv2() {
  Coeff x = var("x");
  return PureState(StateHeader{4, 3},
                   {{Coeff(1), {0, 0, 0, 0}}, {x, {1, 1, 0, 0}}, {x * x, {2, 2, 0, 0}}});
}

NumDensityState random_density(std::mt19937& rng, unsigned K, unsigned d) {
  // A random mixture of two pure states, normalized to unit trace.
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<KetBraRow<Complex>> rows;
  double trace = 0;
  for (int mix = 0; mix < 2; ++mix) {
    std::vector<KetRow<Complex>> amps;
    for (auto& m : all_mode_lists(K, d)) amps.push_back({{u(rng), u(rng)}, m});
    for (const auto& a : amps) {
      trace += std::norm(a.coeff);
      for (const auto& b : amps) rows.push_back({a.coeff * std::conj(b.coeff), a.ket, b.ket});
    }
  }
  for (auto& r : rows) r.coeff /= trace;
  return NumDensityState(StateHeader{K, d}, rows);
}

bool numerically_hermitian(const NumDensityState& s, double tol) {
  std::map<std::pair<ModeList, ModeList>, Complex> m;
  for (const auto& r : s) m[{r.ket, r.bra}] = r.coeff;
  for (const auto& [kb, c] : m) {
    auto it = m.find({kb.second, kb.first});
    Complex other = it == m.end() ? Complex(0) : it->second;
    if (std::abs(c - std::conj(other)) > tol) return false;
  }
  return true;
}

template <class S>
S trace_of(const BasicDensityState<S>& s) {
  S acc = ScalarTraits<S>::zero();
  for (const auto& r : s)
    if (r.ket == r.bra) acc = acc + r.coeff;
  return acc;
}

double max_diff(const NumDensityState& a, const NumDensityState& b) {
  std::map<std::pair<ModeList, ModeList>, Complex> m;
  for (const auto& r : a) m[{r.ket, r.bra}] += r.coeff;
  for (const auto& r : b) m[{r.ket, r.bra}] -= r.coeff;
  double worst = 0;
  for (const auto& [k, v] : m) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace

TEST_CASE("projection with a vec projector onto a vec") {
  Coeff x = var("x");
  PureState psi1(StateHeader{2, 2}, {{Coeff(1), {1, 0}}});
  auto S = project(psi1, {2, 3}, xv2());
  REQUIRE(S.size() == 1);
  CHECK(S.rows()[0].coeff == x);
  CHECK(S.rows()[0].ket == ModeList{1, 1, 0, 0});
  CHECK(error_of([&] { project(psi1, {2}, xv2()); }) == ErrorCode::ModeListMismatch);
  CHECK(error_of([&] { project(psi1, {2, 2}, xv2()); }) == ErrorCode::ModeListMismatch);
  CHECK(error_of([&] { project(psi1, {2, 5}, xv2()); }) == ErrorCode::ModeOutOfRange);
}

TEST_CASE("projection with a Kraus matcol onto a vec") {
  Coeff x = var("x");
  DensityState M(StateHeader{2, 2}, {{Coeff(1), {1, 1}, {1, 1}}, {Coeff(1), {0, 0}, {0, 0}}});
  auto S = project(M, {1, 2}, xv2());
  DensityState expected(StateHeader{4, 3}, {{Coeff(1), {0, 0, 0, 0}, {0, 0, 0, 0}},
                                            {x.conj(), {0, 0, 0, 0}, {1, 1, 0, 0}},
                                            {x, {1, 1, 0, 0}, {0, 0, 0, 0}},
                                            {x * x.conj(), {1, 1, 0, 0}, {1, 1, 0, 0}}});
  CHECK(equivalent(S, expected));
}

TEST_CASE("identity operators leave states alone") {
  auto v = xv2();
  CHECK(equivalent(project(identity_state(2, 2), {1, 2}, v), vec2matcol(v)));
  CHECK(equivalent(project(identity_state(2, 2), {1, 2}, vec2matcol(v)), vec2matcol(v)));
}

TEST_CASE("probabilities") {
  auto p = probability(PureState(StateHeader{1, 1}, {{Coeff(1), {0}}}), {1}, vac(1));
  CHECK(p.value() == Coeff(1));

  // Completeness on a normalized numeric state.
  std::mt19937 rng(2);
  auto rho = random_density(rng, 3, 3);
  auto total = probability(identity_state<Complex>(2, 2), {1, 3}, rho);
  CHECK(std::abs(total.value() - 1.0) < 1e-12);

  // Brute-force sum over the listed amplitudes with n_3 = 1.
  auto V1 = golden::v1();
  Binding env{{"lambda", 0.5}, {"t", 0.8}, {"r", 0.6}};
  auto num = eval_state(V1, env);
  double hit = 0, all = 0;
  for (const auto& r : num) {
    all += std::norm(r.coeff);
    if (r.ket[2] == 1) hit += std::norm(r.coeff);
  }
  PureState one(StateHeader{1, 2}, {{Coeff(1), {1}}});
  auto q = probability(one, {3}, V1);
  CHECK(std::abs(eval_quotient(q, env) - Complex(hit / all)) < 1e-12);
  auto qn = probability(eval_state(one, {}), {3}, num);
  CHECK(std::abs(qn.value() - Complex(hit / all)) < 1e-12);
  CHECK(error_of([&] { (void)q.value(); }) == ErrorCode::SymbolicNormUnsupported);

  std::vector<std::string> warnings;
  PureState unnormalized(StateHeader{1, 2}, {{Coeff(2), {1}}});
  (void)probability(unnormalized, {3}, V1, &warnings);
  CHECK(warnings.size() == 1);
  warnings.clear();
  (void)probability(one, {3}, V1, &warnings);
  CHECK(warnings.empty());
  CHECK(error_of([&] { probability(eval_state(one, {}), {1}, NumDensityState(StateHeader{1, 2}, {})); }) ==
        ErrorCode::DivisionByZeroTrace);
}

TEST_CASE("traceout") {
  auto V2 = golden::v2();
  auto M1 = traceout(vec2matcol(V2), 3);
  CHECK(M1.K() == 2);
  CHECK(M1.size() == 16);
  CHECK(equivalent(traceout(V2, 3), M1));
  auto rho = vec2matcol(xv2());
  auto padded = tensor_vac(traceout(rho, 4), 1);
  CHECK(equivalent(traceout(padded, 4), traceout(rho, 4)));
  CHECK(trace_of(traceout(rho, 2)) == trace_of(rho));
  CHECK(error_of([&] { traceout(rho, 5); }) == ErrorCode::ModeOutOfRange);
  auto dense = traceout(matcol2mat(rho), 4);
  CHECK(equivalent(mat2matcol(dense), traceout(rho, 4)));

  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_density(rng, 3, 2);
    // Removing mode 1 then (old) mode 3 equals removing 3 then 1.
    CHECK(max_diff(traceout(traceout(s, 1), 2), traceout(traceout(s, 3), 1)) < 1e-15);
  }
}

TEST_CASE("POVM results") {
  std::vector<KetBraRow<Coeff>> rows;
  for (unsigned i = 1; i <= 4; ++i) rows.push_back({Coeff(1), {i}, {i}});
  DensityState povm(StateHeader{1, 5}, rows);
  auto V1 = golden::v1();
  auto direct = povm_result_unnormalized(povm, {3}, V1);
  auto via_project = traceout(project(povm, {3}, V1), 3);
  CHECK(equivalent(direct, via_project));
  CHECK(error_of([&] { povm_result(povm, {3}, V1); }) == ErrorCode::SymbolicNormUnsupported);

  Binding env{{"lambda", 0.5}, {"t", 0.8}, {"r", 0.6}};
  auto num = eval_state(V1, env);
  auto numeric_povm = eval_state(povm, {});
  auto out = povm_result(numeric_povm, {3}, num);
  CHECK(out.K() == 2);
  auto p = probability(numeric_povm, {3}, num);
  CHECK(std::abs(trace_of(out) - p.value()) < 1e-12);

  std::mt19937 rng(4);
  auto rho = random_density(rng, 2, 3);
  auto product = tensor_vac(rho, 1);
  auto back = povm_result(identity_state<Complex>(2, 1), {3}, product);
  CHECK(max_diff(back, rho) < 1e-12);
  CHECK(error_of([&] { povm_result(identity_state<Complex>(2, 1), {1}, vac<Complex>(1)); }) ==
        ErrorCode::BadModeCount);
}

TEST_CASE("APD POVM") {
  Coeff r = var("r", true);
  auto pi0 = apd_povm(0, r, 4);
  REQUIRE(pi0.size() == 5);
  CHECK(pi0.rows()[0].coeff == Coeff(1));
  CHECK(pi0.rows()[3].coeff == r.pow(6));
  auto pi1 = apd_povm(1, r, 4);
  REQUIRE(pi1.size() == 4);
  CHECK(pi1.rows()[0].coeff == 1 - r.pow(2));
  CHECK(pi1.rows()[3].ket == ModeList{4});
  std::vector<KetBraRow<Coeff>> sum = pi0.rows();
  sum.insert(sum.end(), pi1.rows().begin(), pi1.rows().end());
  CHECK(equivalent(DensityState(StateHeader{1, 5}, sum), identity_state(4, 1)));
}

TEST_CASE("Kraus sandwiches preserve hermiticity") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto rho = random_density(rng, 3, 2);
    auto M = random_density(rng, 1, 2);  // Hermitian by construction
    auto out = project(M, {2}, rho);
    CHECK(numerically_hermitian(out, 1e-12));
  }
}
