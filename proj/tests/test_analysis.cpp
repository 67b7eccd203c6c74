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

#include <cmath>
#include <random>

#include "doctest.h"
#include "golden.hpp"
#include "lofock/analysis.hpp"
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

NumPureState random_pure(std::mt19937& rng, unsigned K, unsigned d) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<KetRow<Complex>> rows;
  for (auto& m : all_mode_lists(K, d)) rows.push_back({{u(rng), u(rng)}, m});
  return state_normalize(NumPureState(StateHeader{K, d}, rows));
}

/// Normalized truncated two-mode squeezed vacuum with real amplitude lam.
NumPureState tmsv(unsigned d, double lam) {
  return state_normalize(eval_state(squeezed_vac(2, d, var("lambda")), {{"lambda", lam}}));
}

}  // namespace

TEST_CASE("norm and trace") {
  Coeff lam = var("lambda");
  CHECK(norm_or_trace(vac(2)) == Coeff(1));
  CHECK(norm_or_trace(squeezed_vac(2, 3, lam)) ==
        1 + lam * lam.conj() + lam.pow(2) * lam.conj().pow(2));
  CHECK(norm_or_trace(identity_state(2, 2)) == Coeff(9));
  CHECK(state_trace(matcol2mat(identity_state(2, 2))) == Coeff(9));
}

TEST_CASE("normalization") {
  auto v = tmsv(5, 0.5);
  CHECK(std::abs(state_norm(v) - Complex(1.0)) < 1e-12);
  auto check = is_normalized(vac(3));
  CHECK(check.normalized);
  CHECK(check.magnitude == Coeff(1));
  auto n = state_normalize(PureState(StateHeader{1, 1}, {{Coeff(2), {0}}}));
  CHECK(n.rows()[0].coeff == Coeff(1));
  auto half = state_normalize(PureState(StateHeader{1, 2}, {{Coeff(1), {0}}, {Coeff(1), {1}}}));
  CHECK(half.rows()[0].coeff == Coeff(Rational(1, 2)) * Coeff::sqrt(2));
  CHECK(is_normalized(half).normalized);
  CHECK(equivalent(state_normalize(identity_state(1, 1)),
                   state_multiply(Coeff(Rational(1, 2)), identity_state(1, 1))));
  CHECK(error_of([] { state_normalize(squeezed_vac(2, 3, var("lambda"))); }) ==
        ErrorCode::SymbolicNormUnsupported);
  CHECK(error_of([] { state_normalize(NumPureState(StateHeader{1, 1}, {})); }) ==
        ErrorCode::ZeroNorm);
  CHECK_FALSE(is_normalized(squeezed_vac(2, 3, var("lambda"))).normalized);
}

TEST_CASE("hermiticity") {
  Coeff lam = var("lambda");
  CHECK(is_hermitian(vec2matcol(squeezed_vac(2, 4, lam))));
  CHECK_FALSE(is_hermitian(DensityState(StateHeader{1, 2}, {{lam, {1}, {0}}})));
  CHECK(is_hermitian(matcol2mat(vec2matcol(squeezed_vac(2, 3, lam)))));
  // The displayed 16-row table: vec2matcol of lambda^n |n,n,0>, n < 4.
  auto table = vec2matcol(tensor_vac(squeezed_vac(2, 4, lam), 1));
  CHECK(table.size() == 16);
  CHECK(is_hermitian(table));
  // A Hermitian matcol conjugates to its transpose.
  DensityState h(StateHeader{1, 2}, {{lam, {1}, {0}}, {lam.conj(), {0}, {1}}});
  std::vector<KetBraRow<Coeff>> swapped;
  for (const auto& r : h) swapped.push_back({r.coeff, r.bra, r.ket});
  CHECK(equivalent(state_complex_conjugate(h), DensityState(h.header(), swapped)));
}

TEST_CASE("partial transpose") {
  Coeff lam = var("lambda");
  auto rho = vec2matcol(squeezed_vac(2, 3, lam));
  CHECK(equivalent(partial_transpose(partial_transpose(rho, 1), 1), rho));
  auto diag = identity_state(2, 2);
  CHECK(equivalent(partial_transpose(diag, 2), diag));
  CHECK(state_trace(partial_transpose(rho, 1)) == state_trace(rho));
  CHECK(error_of([&] { partial_transpose(vec2matcol(vac(3)), 1); }) == ErrorCode::NotBipartite);
  DensityState one(StateHeader{2, 2}, {{Coeff(1), {0, 1}, {1, 0}}});
  auto pt = partial_transpose(one, 1);
  CHECK(pt.rows()[0].ket == ModeList{1, 1});
  CHECK(pt.rows()[0].bra == ModeList{0, 0});
}

TEST_CASE("negativity") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_pure(rng, 1, 3);
    auto b = random_pure(rng, 1, 3);
    auto prod = tensor_product(a, {1}, b, {2});
    auto n = negativity(prod);
    CHECK(std::abs(n.negativity) < 1e-10);
    CHECK(n.log_negativity == doctest::Approx(std::log2(2 * n.negativity + 1)).epsilon(1e-15));
  }
  // Pure-state oracle: for sum_n c_n |n,n> with real c_n >= 0 the partial
  // transpose has eigenvalues c_n^2 and +/- c_n c_m, so N = ((sum c)^2 - sum c^2) / 2.
  auto v = tmsv(3, 0.5);
  double sum = 0, sum2 = 0;
  for (const auto& r : v) {
    sum += r.coeff.real();
    sum2 += r.coeff.real() * r.coeff.real();
  }
  CHECK(std::abs(negativity(v).negativity - (sum * sum - sum2) / 2) < 1e-12);
  CHECK(error_of([] { negativity(vac<Complex>(3)); }) == ErrorCode::NotBipartite);
  NumDensityState skew(StateHeader{2, 2}, {{Complex(0, 1), {0, 0}, {1, 1}}, {1.0, {0, 0}, {0, 0}}});
  CHECK(error_of([&] { negativity(skew); }) == ErrorCode::NonHermitianInput);
}

TEST_CASE("negativity of the post-selected state matches the closed form") {
  // One-photon detection on the reflected mode, then trace it out.
  auto V1 = golden::v1();
  PureState one(StateHeader{1, 2}, {{Coeff(1), {1}}});
  auto M1 = traceout(project(one, {3}, V1), 3);
  for (auto [lam, t] : {std::pair{0.3, 0.9}, {0.5, 0.8}, {0.7, 0.6}}) {
    double r = std::sqrt(1 - t * t);
    double x = lam * t;
    double closed = x *
                    (2 * x * x + std::sqrt(2.0) + std::sqrt(3.0) * x +
                     std::sqrt(3.0) * x * x * std::sqrt(2.0) + 2 * x * x * x * std::sqrt(2.0) +
                     2 * std::pow(x, 4) * std::sqrt(3.0)) /
                    (4 * std::pow(x, 6) + 3 * std::pow(x, 4) + 2 * x * x + 1);
    auto n = negativity(M1, {{"lambda", lam}, {"t", t}, {"r", r}});
    CHECK(std::abs(n.negativity - closed) < 1e-9);
  }
}

TEST_CASE("entropy") {
  std::mt19937 rng(8);
  CHECK(std::abs(entropy(random_pure(rng, 2, 3))) < 1e-10);
  auto mixed = state_normalize(identity_state<Complex>(1, 1));
  CHECK(std::abs(entropy(mixed) - 1.0) < 1e-12);

  // Reduced single mode of the squeezed vacuum: p_n proportional to lam^(2n).
  const double lam = 0.5;
  auto reduced = traceout(vec2matcol(tmsv(5, lam)), 2);
  double Z = 0;
  for (int n = 0; n < 5; ++n) Z += std::pow(lam, 2 * n);
  double oracle = 0;
  for (int n = 0; n < 5; ++n) {
    double p = std::pow(lam, 2 * n) / Z;
    oracle -= p * std::log2(p);
  }
  CHECK(std::abs(entropy(reduced) - oracle) < 1e-10);

  // Invariance under a passive mode unitary.
  for (int trial = 0; trial < 5; ++trial) {
    auto rho = traceout(vec2matcol(random_pure(rng, 3, 2)), 3);
    double th = 0.3 + trial;
    auto U = build_unitary(std::vector<CircuitElement<Complex>>{BeamSplitter<Complex>{
                               1, 2, std::cos(th), std::sin(th)}},
                           2);
    CHECK(std::abs(entropy(unitary_evolution(U, rho)) - entropy(rho)) < 1e-9);
  }
  NumDensityState bad(StateHeader{1, 2}, {{2.0, {0}, {0}}, {-1.0, {1}, {1}}});
  CHECK(error_of([&] { entropy(bad); }) == ErrorCode::NegativeEigenvalueBeyondTolerance);
  CHECK(error_of([] { entropy(squeezed_vac(2, 2, var("lambda")), {}); }) ==
        ErrorCode::UnboundVariable);
}

TEST_CASE("spectrum sums to the trace") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto rho = traceout(vec2matcol(random_pure(rng, 3, 2)), 1);
    double sum = 0;
    for (double l : hermitian_spectrum(matcol2mat(rho))) {
      CHECK(l > -1e-8);
      sum += l;
    }
    CHECK(std::abs(sum - state_trace(rho).real()) < 1e-10);
  }
}

TEST_CASE("energy") {
  for (unsigned K = 1; K <= 5; ++K) CHECK(energy(vac(K)) == Coeff(Rational(K, 2)));
  auto half = state_normalize(PureState(StateHeader{1, 2}, {{Coeff(1), {0}}, {Coeff(1), {1}}}));
  CHECK(energy(half) == Coeff(1));
  auto v = tmsv(3, 0.5);
  double oracle = 1.0;
  for (const auto& r : v) oracle += std::norm(r.coeff) * 2 * r.ket[0];
  CHECK(std::abs(energy(v) - Complex(oracle)) < 1e-12);
  Coeff lam = var("lambda");
  CHECK(energy(squeezed_vac(1, 2, lam)) ==
        Coeff(Rational(1, 2)) + lam * lam.conj() * Coeff(Rational(3, 2)));
}

TEST_CASE("state approximation") {
  const std::set<std::string> reals{"x", "y"};
  auto M = poly2vec("(1 + y^4*x^2 + y*x^4) + (y^7*x + x^3 + x^5)*a_1*a_2 + "
                    "(x^2 + x^4 + x^6 + y^5)*a_1^2*a_2^2",
                    reals, 4);
  auto five = state_approx(M, {"y", "x"}, 5);
  auto expected = poly2vec("(1 + y*x^4) + (x^3 + x^5)*a_1*a_2 + (x^2 + x^4 + y^5)*a_1^2*a_2^2",
                           reals, 4);
  CHECK(equivalent(five, expected));
  auto one = state_approx(M, {"y", "x"}, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.rows()[0].coeff == Coeff(1));
  CHECK(one.rows()[0].ket == ModeList{0, 0, 0, 0});
  // Monotone in the cutoff.
  for (unsigned n = 0; n < 9; ++n) {
    auto lo = state_approx(M, {"y", "x"}, n);
    auto hi = state_approx(M, {"y", "x"}, n + 1);
    for (const auto& r : lo) {
      bool present = false;
      for (const auto& h : hi) present |= h.ket == r.ket;
      CHECK(present);
    }
  }
  // Numeric mode.
  NumPureState num(StateHeader{1, 3}, {{1.0, {0}}, {1e-4, {1}}, {0.02, {2}}});
  CHECK(state_approx(num, {}, 3).size() == 2);
  CHECK(state_approx(PureState(StateHeader{1, 2}, {{Coeff(1), {0}}, {Coeff(Rational(1, 1000)), {1}}}),
                     {}, 2)
            .size() == 1);
  CHECK(error_of([&] { state_approx(num, {"x"}, 3); }) == ErrorCode::MixedMode);
  CHECK(error_of([&] { state_approx(M, {}, 3); }) == ErrorCode::MixedMode);
}

TEST_CASE("post-selection pipeline truncated at order 7") {
  auto V1 = golden::v1(golden::reals());
  std::vector<KetBraRow<Coeff>> rows;
  for (unsigned i = 1; i <= 4; ++i) rows.push_back({Coeff(1), {i}, {i}});
  DensityState povm(StateHeader{1, 5}, rows);
  auto M3 = traceout(project(povm, {3}, V1), 3);
  CHECK(M3.size() == 30);
  auto M5 = state_approx(M3, {"lambda", "r"}, 7);
  CHECK(M5.size() == 10);
}
