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

#include "lofock/scalar.hpp"

namespace lofock {

Coeff divide_by_constant(const Coeff& num, const Coeff& den, ErrorCode on_zero) {
  if (den.is_zero()) throw Error(on_zero, "division by zero");
  auto rad = den.as_radical();
  if (!den.is_constant() || !rad) {
    throw Error(ErrorCode::SymbolicNormUnsupported,
                "cannot divide exactly by '" + to_string(den) + "'");
  }
  // 1 / (q sqrt(m)) = sqrt(m) / (q m)
  Rational inv = 1 / (rad->rat * Rational(static_cast<unsigned long>(rad->radicand)));
  return num * Coeff(Radical{inv, rad->radicand});
}

Complex divide_by_constant(const Complex& num, const Complex& den, ErrorCode on_zero) {
  if (den == Complex(0.0, 0.0)) throw Error(on_zero, "division by zero");
  return num / den;
}

}  // namespace lofock
