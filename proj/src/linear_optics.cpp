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

#include "lofock/linear_optics.hpp"

namespace lofock {

Coeff complementary_reflectivity(const Coeff& t) {
  if (auto q = t.as_rational()) {
    Rational rest = 1 - *q * *q;
    if (sgn(rest) < 0) {
      throw Error(ErrorCode::BadElement, "transmittivity " + q->get_str() + " exceeds 1");
    }
    return Coeff(Radical::sqrt_of(rest));
  }
  if (t.terms().size() == 1) {
    const Term& term = t.terms().front();
    const auto& powers = term.mono.powers();
    if (term.rat == 1 && term.radicand == 1 && powers.size() == 1 && powers[0].second == 1 &&
        !powers[0].first.conjugated) {
      const VarRef& v = powers[0].first;
      return Coeff::variable("rc_" + v.name, v.is_real);
    }
  }
  throw Error(ErrorCode::BadElement,
              "cannot derive sqrt(1 - t^2) for t = " + to_string(t) +
                  "; give t as a single variable or a rational");
}

NumModeUnitary eval_unitary(const ModeUnitary& U, const Binding& env) {
  NumModeUnitary out(U.rows(), U.cols());
  for (std::size_t a = 0; a < U.rows(); ++a)
    for (std::size_t b = 0; b < U.cols(); ++b) out.at(a, b) = U.at(a, b).eval(env);
  return out;
}

}  // namespace lofock
