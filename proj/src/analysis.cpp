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

#include "lofock/analysis.hpp"

#include <Eigen/Dense>

namespace lofock {

Coeff inverse_sqrt_constant(const Coeff& n) {
  if (n.is_zero()) throw Error(ErrorCode::ZeroNorm, "state has zero norm");
  auto q = n.as_rational();
  if (!q) {
    throw Error(ErrorCode::SymbolicNormUnsupported,
                "normalizing needs 1/sqrt(" + to_string(n) + ")");
  }
  if (sgn(*q) < 0) throw Error(ErrorCode::ZeroNorm, "norm is negative: " + q->get_str());
  return Coeff(Radical::sqrt_of(1 / *q));
}

Complex inverse_sqrt_constant(const Complex& n) {
  if (n.real() <= 0.0) throw Error(ErrorCode::ZeroNorm, "state has zero norm");
  return {1.0 / std::sqrt(n.real()), 0.0};
}

std::vector<double> hermitian_spectrum(const NumDenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "spectrum needs a square matrix");
  }
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd A(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) A(r, c) = m.at(r, c);
  double worst = n == 0 ? 0.0 : (A - A.adjoint()).cwiseAbs().maxCoeff();
  if (worst > 1e-10) {
    throw Error(ErrorCode::NonHermitianInput,
                "matrix deviates from its adjoint by " + format_number(worst));
  }
  if (n == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NonHermitianInput, "eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

double real_trace(const NumDensityState& s) {
  Complex tr = state_trace(s);
  if (std::abs(tr) < 1e-300) throw Error(ErrorCode::DivisionByZeroTrace, "state has zero trace");
  return tr.real();
}

}  // namespace

NegativityResult negativity(const NumDensityState& s) {
  double tr = real_trace(s);
  double sum = 0;
  for (double l : hermitian_spectrum(matcol2mat(partial_transpose(s, 2)))) {
    sum += (std::abs(l) - l) / 2.0;
  }
  NegativityResult out;
  out.negativity = sum / tr;
  out.log_negativity = std::log2(2.0 * out.negativity + 1.0);
  return out;
}

NegativityResult negativity(const NumPureState& s) { return negativity(vec2matcol(s)); }
NegativityResult negativity(const NumDenseMatrix& m) { return negativity(mat2matcol(m)); }
NegativityResult negativity(const PureState& s, const Binding& env) {
  return negativity(eval_state(s, env));
}
NegativityResult negativity(const DensityState& s, const Binding& env) {
  return negativity(eval_state(s, env));
}
NegativityResult negativity(const DenseMatrix& m, const Binding& env) {
  return negativity(eval_state(m, env));
}

double entropy(const NumDensityState& s) {
  double tr = real_trace(s);
  double S = 0;
  for (double l : hermitian_spectrum(matcol2mat(s))) {
    double p = l / tr;
    if (p < -1e-8) {
      throw Error(ErrorCode::NegativeEigenvalueBeyondTolerance,
                  "eigenvalue " + format_number(p) + " is negative");
    }
    if (p < 1e-12) continue;
    S -= p * std::log2(p);
  }
  return S;
}

double entropy(const NumPureState& s) { return entropy(vec2matcol(s)); }
double entropy(const PureState& s, const Binding& env) { return entropy(eval_state(s, env)); }
double entropy(const DensityState& s, const Binding& env) {
  return entropy(eval_state(s, env));
}

// --------------------------------------------------------- approximation

namespace {

bool keep_numeric(double magnitude, unsigned n) { return magnitude >= std::pow(10.0, -double(n)); }

double constant_magnitude(const Coeff& c) {
  if (!c.is_constant()) {
    throw Error(ErrorCode::MixedMode,
                "numeric approximation needs numeric coefficients; list the variables "
                "to truncate symbolically (found '" +
                    to_string(c) + "')");
  }
  return std::abs(c.to_double_constant());
}

void require_no_vars(const std::vector<std::string>& vars) {
  if (!vars.empty()) {
    throw Error(ErrorCode::MixedMode, "symbolic truncation requested on a numeric state");
  }
}

}  // namespace

PureState state_approx(const PureState& s, const std::vector<std::string>& vars, unsigned n) {
  std::vector<KetRow<Coeff>> rows;
  if (vars.empty()) {
    for (const auto& r : s) {
      if (keep_numeric(constant_magnitude(r.coeff), n)) rows.push_back(r);
    }
  } else {
    std::set<std::string> names(vars.begin(), vars.end());
    for (const auto& r : s) rows.push_back({r.coeff.truncate_degree(names, n), r.ket});
  }
  return PureState(s.header(), std::move(rows));
}

DensityState state_approx(const DensityState& s, const std::vector<std::string>& vars,
                          unsigned n) {
  std::vector<KetBraRow<Coeff>> rows;
  if (vars.empty()) {
    for (const auto& r : s) {
      if (keep_numeric(constant_magnitude(r.coeff), n)) rows.push_back(r);
    }
  } else {
    std::set<std::string> names(vars.begin(), vars.end());
    for (const auto& r : s) {
      rows.push_back({r.coeff.truncate_degree(names, n), r.ket, r.bra});
    }
  }
  return DensityState(s.header(), std::move(rows));
}

NumPureState state_approx(const NumPureState& s, const std::vector<std::string>& vars,
                          unsigned n) {
  require_no_vars(vars);
  std::vector<KetRow<Complex>> rows;
  for (const auto& r : s) {
    if (keep_numeric(std::abs(r.coeff), n)) rows.push_back(r);
  }
  return NumPureState(s.header(), std::move(rows));
}

NumDensityState state_approx(const NumDensityState& s, const std::vector<std::string>& vars,
                             unsigned n) {
  require_no_vars(vars);
  std::vector<KetBraRow<Complex>> rows;
  for (const auto& r : s) {
    if (keep_numeric(std::abs(r.coeff), n)) rows.push_back(r);
  }
  return NumDensityState(s.header(), std::move(rows));
}

}  // namespace lofock
