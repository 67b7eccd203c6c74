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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and time limits are fixed here and are not tunable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "golden.hpp"
#include "lofock/analysis.hpp"
#include "lofock/linear_optics.hpp"
#include "lofock/measurement.hpp"
#include "properties.hpp"

using namespace lofock;

namespace {

constexpr double kNegativityTol = 1e-9;
constexpr double kOracleTol = 1e-12;
constexpr double kUnitarityTol = 1e-12;
constexpr double kEntropyTol = 1e-10;
constexpr double kProbabilityTol = 1e-12;
constexpr double kTableSeconds = 1.0;
constexpr double kApdSeconds = 1.0;
constexpr double kNegativitySeconds = 5.0;
constexpr double kSuiteSeconds = 120.0;
constexpr int kPropertyInstances = 100;

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Coeff var(const std::string& name, bool real = false) { return Coeff::variable(name, real); }

double factorial(unsigned n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double max_diff(const NumPureState& a, const NumPureState& b) {
  std::map<ModeList, Complex> m;
  for (const auto& r : a) m[r.ket] += r.coeff;
  for (const auto& r : b) m[r.ket] -= r.coeff;
  double worst = 0;
  for (const auto& [k, v] : m) worst = std::max(worst, std::abs(v));
  return worst;
}

double norm2(const NumPureState& s) {
  double n = 0;
  for (const auto& r : s) n += std::norm(r.coeff);
  return n;
}

// ------------------------------------------------------------------ criteria

Verdict beam_splitter_table() {
  auto start = Clock::now();
  auto V = tensor_vac(squeezed_vac(2, 5, var("lambda", true)), 1);
  auto V1 = beam_splitter(V, 1, 3, var("t", true), var("r", true));
  double elapsed = seconds_since(start);
  bool same = V1.size() == 15 && equivalent(state_sort(V1), state_sort(golden::v1(golden::reals())));
  return {same && elapsed < kTableSeconds,
          std::to_string(V1.size()) + " rows, " + fmt("%.4f s", elapsed)};
}

Verdict golden_projection() {
  Coeff x = var("x");
  PureState psi(StateHeader{4, 3},
                {{Coeff(1), {0, 0, 0, 0}}, {x, {1, 1, 0, 0}}, {x * x, {2, 2, 0, 0}}});
  PureState ten(StateHeader{2, 2}, {{Coeff(1), {1, 0}}});
  auto S = project(ten, {2, 3}, psi);
  bool vec_ok = S.size() == 1 && S.rows()[0].coeff == x && S.rows()[0].ket == ModeList{1, 1, 0, 0};
  DensityState M(StateHeader{2, 2}, {{Coeff(1), {1, 1}, {1, 1}}, {Coeff(1), {0, 0}, {0, 0}}});
  DensityState expected(StateHeader{4, 3}, {{Coeff(1), {0, 0, 0, 0}, {0, 0, 0, 0}},
                                            {x.conj(), {0, 0, 0, 0}, {1, 1, 0, 0}},
                                            {x, {1, 1, 0, 0}, {0, 0, 0, 0}},
                                            {x * x.conj(), {1, 1, 0, 0}, {1, 1, 0, 0}}});
  auto K = project(M, {1, 2}, psi);
  bool kraus_ok = K.size() == 4 && equivalent(K, expected);
  return {vec_ok && kraus_ok, std::string("vec ") + (vec_ok ? "ok" : "wrong") + ", Kraus " +
                                  (kraus_ok ? "ok" : "wrong") + " (" + std::to_string(K.size()) +
                                  " rows)"};
}

Verdict apd_completeness() {
  auto start = Clock::now();
  Coeff r = var("r", true);
  bool ok = true;
  for (unsigned N = 1; N <= 6; ++N) {
    auto p0 = apd_povm(0, r, N);
    auto p1 = apd_povm(1, r, N);
    std::vector<KetBraRow<Coeff>> rows(p0.rows().begin(), p0.rows().end());
    rows.insert(rows.end(), p1.rows().begin(), p1.rows().end());
    ok = ok && equivalent(DensityState(p0.header(), rows), identity_state<Coeff>(N, 1));
  }
  double elapsed = seconds_since(start);
  return {ok && elapsed < kApdSeconds, "N=1..6, " + fmt("%.4f s", elapsed)};
}

Verdict negativity_cross_check() {
  auto start = Clock::now();
  PureState one(StateHeader{1, 2}, {{Coeff(1), {1}}});
  auto M1 = traceout(project(one, {3}, golden::v1(golden::reals())), 3);
  double worst = 0;
  for (auto [lam, t] : {std::pair{0.3, 0.9}, {0.5, 0.8}, {0.7, 0.6}}) {
    double r = std::sqrt(1 - t * t);
    double x = lam * t;
    double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    double closed = x *
                    (2 * x * x + s2 + s3 * x + s3 * x * x * s2 + 2 * x * x * x * s2 +
                     2 * std::pow(x, 4) * s3) /
                    (4 * std::pow(x, 6) + 3 * std::pow(x, 4) + 2 * x * x + 1);
    auto n = negativity(M1, {{"lambda", lam}, {"t", t}, {"r", r}});
    worst = std::max(worst, std::abs(n.negativity - closed));
  }
  double elapsed = seconds_since(start);
  return {worst < kNegativityTol && elapsed < kNegativitySeconds,
          "max |diff| " + fmt("%.3g", worst) + ", " + fmt("%.4f s", elapsed)};
}

Verdict beam_splitter_oracle() {
  // Expand (t x + r y)^n (-r x + t y)^m densely, then apply the factorial
  // normalization sqrt(p! q! / (n! m!)).
  const double t = 0.6, r = 0.8;
  double worst = 0;
  int inputs = 0;
  for (unsigned d = 1; d <= 4; ++d) {
    for (unsigned n = 0; n < d; ++n) {
      for (unsigned m = 0; m < d; ++m) {
        const unsigned N = n + m;
        std::vector<std::vector<double>> poly(N + 1, std::vector<double>(N + 1, 0.0));
        poly[0][0] = 1;
        auto multiply = [&](double cx, double cy) {
          std::vector<std::vector<double>> next(N + 1, std::vector<double>(N + 1, 0.0));
          for (unsigned a = 0; a <= N; ++a)
            for (unsigned b = 0; b <= N; ++b) {
              if (poly[a][b] == 0) continue;
              if (a + 1 <= N) next[a + 1][b] += poly[a][b] * cx;
              if (b + 1 <= N) next[a][b + 1] += poly[a][b] * cy;
            }
          poly = next;
        };
        for (unsigned k = 0; k < n; ++k) multiply(t, r);
        for (unsigned k = 0; k < m; ++k) multiply(-r, t);
        auto out = beam_splitter(NumPureState(StateHeader{2, d}, {{1.0, {n, m}}}), 1, 2,
                                 Complex(t), Complex(r));
        std::vector<KetRow<Complex>> expected;
        for (unsigned p = 0; p <= N; ++p) {
          double amp = poly[p][N - p] * std::sqrt(factorial(p) * factorial(N - p) /
                                                  (factorial(n) * factorial(m)));
          expected.push_back({amp, {p, N - p}});
        }
        worst = std::max(worst, max_diff(out, NumPureState::fitted(2, expected)));
        ++inputs;
      }
    }
  }
  return {worst < kOracleTol,
          std::to_string(inputs) + " inputs, max |diff| " + fmt("%.3g", worst)};
}

Verdict unitarity() {
  std::mt19937 rng(20261014);
  std::uniform_real_distribution<double> angle(0, 6.283185307179586);
  std::uniform_int_distribution<unsigned> modes(2, 5), count(3, 8), kind(0, 2);
  double worst_u = 0, worst_norm = 0;
  for (int circuit = 0; circuit < 10; ++circuit) {
    const unsigned K = modes(rng);
    std::uniform_int_distribution<unsigned> mode(1, K);
    std::vector<CircuitElement<Coeff>> elements;
    Binding env;
    for (unsigned e = count(rng); e > 0; --e) {
      std::string tag = std::to_string(elements.size());
      unsigned i = mode(rng), j = mode(rng);
      while (j == i) j = mode(rng);
      double th = angle(rng);
      switch (kind(rng)) {
        case 0:
          elements.push_back(BeamSplitter<Coeff>{i, j, var("t" + tag, true), var("r" + tag, true)});
          env["t" + tag] = std::cos(th);
          env["r" + tag] = std::sin(th);
          break;
        case 1:
          elements.push_back(BeamSplitter3<Coeff>{i, j, var("t" + tag, true)});
          env["t" + tag] = std::cos(th);
          break;
        default:
          elements.push_back(PhaseShifter<Coeff>{i, phase_factor("phi" + tag)});
          env["phi" + tag] = th;
      }
    }
    auto U = eval_unitary(build_unitary(elements, K), env);
    for (unsigned a = 0; a < K; ++a) {
      for (unsigned b = 0; b < K; ++b) {
        Complex acc = 0;
        for (unsigned c = 0; c < K; ++c) acc += U.at(a, c) * std::conj(U.at(b, c));
        worst_u = std::max(worst_u, std::abs(acc - Complex(a == b ? 1.0 : 0.0)));
      }
    }
    // A random sparse state with at most three photons per mode.
    std::uniform_real_distribution<double> u(-1, 1);
    std::bernoulli_distribution keep(K <= 3 ? 0.5 : 0.05);
    std::vector<KetRow<Complex>> rows;
    for (auto& m : all_mode_lists(K, K <= 3 ? 4 : 3)) {
      if (keep(rng)) rows.push_back({{u(rng), u(rng)}, m});
    }
    if (rows.empty()) rows.push_back({{u(rng), u(rng)}, ModeList(K, 1)});
    NumPureState s = NumPureState::fitted(K, rows);
    auto out = unitary_evolution(U, s);
    worst_norm = std::max(worst_norm, std::abs(norm2(out) - norm2(s)) / norm2(s));
  }
  return {worst_u < kUnitarityTol && worst_norm < kUnitarityTol,
          "10 circuits, max |UU^+ - I| " + fmt("%.3g", worst_u) + ", max norm drift " +
              fmt("%.3g", worst_norm)};
}

Verdict approximation_golden() {
  Coeff x = var("x"), y = var("y");
  PureState M(StateHeader{4, 3},
              {{Coeff(1) + y.pow(4) * x.pow(2) + y * x.pow(4), {0, 0, 0, 0}},
               {y.pow(7) * x + x.pow(3) + x.pow(5), {1, 1, 0, 0}},
               {x.pow(2) + x.pow(4) + x.pow(6) + y.pow(5), {2, 2, 0, 0}}});
  PureState at5(StateHeader{4, 3}, {{Coeff(1) + y * x.pow(4), {0, 0, 0, 0}},
                                    {x.pow(3) + x.pow(5), {1, 1, 0, 0}},
                                    {x.pow(2) + x.pow(4) + y.pow(5), {2, 2, 0, 0}}});
  PureState at1(StateHeader{4, 3}, {{Coeff(1), {0, 0, 0, 0}}});
  auto s5 = state_approx(M, {"y", "x"}, 5);
  auto s1 = state_approx(M, {"y", "x"}, 1);
  bool appendix = equivalent(s5, at5) && s1.size() == 1 && s1.rows()[0].coeff == Coeff(1) &&
                  s1.rows()[0].ket == ModeList{0, 0, 0, 0};

  // Click-detector post-selection on mode 3, trace it out, truncate at 7.
  auto V1 = golden::v1(golden::reals());
  std::vector<KetBraRow<Coeff>> povm;
  for (unsigned i = 1; i <= 4; ++i) povm.push_back({Coeff(1), {i}, {i}});
  auto M3 = traceout(project(DensityState(StateHeader{1, 5}, povm), {3}, V1), 3);
  auto M5 = state_approx(M3, {"lambda", "r"}, 7);
  const auto& R = golden::reals();
  std::vector<KetBraRow<Coeff>> table;
  for (const auto& [text, ket, bra] : std::vector<std::tuple<const char*, ModeList, ModeList>>{
           {"lambda^2*r^2", {0, 1}, {0, 1}},
           {"sqrt(2)*lambda^3*t*r^2", {0, 1}, {1, 2}},
           {"lambda^4*t^2*r^2*sqrt(3)", {0, 1}, {2, 3}},
           {"2*lambda^5*t^3*r^2", {0, 1}, {3, 4}},
           {"sqrt(2)*lambda^3*t*r^2", {1, 2}, {0, 1}},
           {"2*lambda^4*t^2*r^2", {1, 2}, {1, 2}},
           {"sqrt(6)*lambda^5*t^3*r^2", {1, 2}, {2, 3}},
           {"lambda^4*t^2*r^2*sqrt(3)", {2, 3}, {0, 1}},
           {"sqrt(6)*lambda^5*t^3*r^2", {2, 3}, {1, 2}},
           {"2*lambda^5*t^3*r^2", {3, 4}, {0, 1}}}) {
    table.push_back({parse_coeff(text, R), ket, bra});
  }
  bool m5 = M3.size() == 30 && M5.size() == 10 &&
            equivalent(M5, DensityState(M5.header(), table)) && M5.K() == 2;
  return {appendix && m5, std::string("cutoffs 5/1 ") + (appendix ? "ok" : "wrong") +
                              ", truncated table " + std::to_string(M5.size()) + " rows " +
                              (m5 ? "ok" : "wrong")};
}

Verdict index_conventions() {
  bool vr = to_index({0, 1, 0}, 2) == 3;
  bool idx = to_index({0, 0}, 3) == 1 && to_index({1, 1}, 3) == 5 && to_index({2, 2}, 3) == 9;
  PureState s(StateHeader{2, 2}, {{Coeff(4), {1, 1}}, {Coeff(2), {0, 1}}, {Coeff(3), {1, 0}},
                                  {Coeff(1), {0, 0}}});
  auto sorted = state_sort(s);
  std::vector<ModeList> order;
  for (const auto& r : sorted) order.push_back(r.ket);
  bool sort = order == std::vector<ModeList>{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  return {vr && idx && sort, std::string("index ") + (vr && idx ? "ok" : "wrong") + ", sort " +
                                 (sort ? "ok" : "wrong")};
}

Verdict entropy_energy() {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst_pure = 0;
  for (int k = 0; k < 5; ++k) {
    std::vector<KetRow<Complex>> rows;
    for (auto& m : all_mode_lists(2, 3)) rows.push_back({{u(rng), u(rng)}, m});
    worst_pure = std::max(worst_pure,
                          std::abs(entropy(state_normalize(NumPureState(StateHeader{2, 3}, rows)))));
  }
  const double lam = 0.5;
  auto tmsv = state_normalize(eval_state(squeezed_vac(2, 5, var("lambda")), {{"lambda", lam}}));
  double reduced = entropy(traceout(vec2matcol(tmsv), 2));
  double Z = 0, oracle = 0;
  for (int n = 0; n < 5; ++n) Z += std::pow(lam, 2 * n);
  for (int n = 0; n < 5; ++n) {
    double p = std::pow(lam, 2 * n) / Z;
    oracle -= p * std::log2(p);
  }
  bool energy_ok = true;
  for (unsigned K = 1; K <= 6; ++K) energy_ok = energy_ok && energy(vac(K)) == Coeff(Rational(K, 2));
  bool ok = worst_pure < kEntropyTol && std::abs(reduced - oracle) < kEntropyTol && energy_ok;
  return {ok, "pure " + fmt("%.3g", worst_pure) + ", reduced diff " +
                  fmt("%.3g", std::abs(reduced - oracle)) + ", vacuum energy " +
                  (energy_ok ? "exact" : "wrong")};
}

Verdict round_trips() {
  auto start = Clock::now();
  std::mt19937 rng(424242);
  std::vector<std::pair<const char*, props::Outcome>> checks = {
      {"file", props::file_round_trip(rng, kPropertyInstances)},
      {"mat<->matcol", props::mat_matcol_round_trip(rng, kPropertyInstances)},
      {"vec<->poly", props::poly_round_trip(rng, kPropertyInstances)},
      {"hermitian lift", props::lift_is_hermitian(rng, kPropertyInstances)},
      {"APD probabilities",
       props::apd_probability_completeness(rng, kPropertyInstances, kProbabilityTol)}};
  double elapsed = seconds_since(start);
  bool ok = elapsed < kSuiteSeconds;
  std::string detail;
  for (const auto& [name, o] : checks) {
    ok = ok && o.ok() && o.instances >= kPropertyInstances;
    detail += std::string(name) + " " + std::to_string(o.instances - o.failures) + "/" +
              std::to_string(o.instances) + (o.failures ? " (" + o.first_failure + ")" : "") +
              ", ";
  }
  return {ok, detail + fmt("%.3f s", elapsed)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"beam-splitter golden table", beam_splitter_table},
      {"golden projection and Kraus case", golden_projection},
      {"APD completeness", apd_completeness},
      {"negativity closed form", negativity_cross_check},
      {"beam-splitter dense oracle", beam_splitter_oracle},
      {"unitarity properties", unitarity},
      {"truncation golden outputs", approximation_golden},
      {"index and sort conventions", index_conventions},
      {"entropy and energy oracles", entropy_energy},
      {"round-trip and invariant suite", round_trips}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                v.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
