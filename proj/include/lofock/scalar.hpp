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

// Uniform access to the two coefficient fields states are built over: exact
// symbolic Coeff and evaluated std::complex<double>.

#include <cmath>
#include <complex>
#include <concepts>

#include "lofock/error.hpp"
#include "lofock/symcoeff.hpp"

namespace lofock {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Coeff> {
  static Coeff zero() { return Coeff(); }
  static Coeff one() { return Coeff(1L); }
  static Coeff from_int(long v) { return Coeff(v); }
  static Coeff from_radical(const Radical& r) { return Coeff(r); }
  static bool is_zero(const Coeff& c) { return c.is_zero(); }
  static Coeff conj(const Coeff& c) { return c.conj(); }
  static Coeff pow(const Coeff& c, unsigned e) { return c.pow(e); }
};

template <>
struct ScalarTraits<Complex> {
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex from_radical(const Radical& r) { return {r.to_double(), 0.0}; }
  static bool is_zero(const Complex& c) { return c.real() == 0.0 && c.imag() == 0.0; }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex pow(const Complex& c, unsigned e) {
    Complex r = 1.0;
    for (unsigned k = 0; k < e; ++k) r *= c;
    return r;
  }
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::convertible_to<bool>;
  { ScalarTraits<S>::conj(a) } -> std::convertible_to<S>;
};

template <Scalar S>
bool scalar_is_zero(const S& s) {
  return ScalarTraits<S>::is_zero(s);
}

template <Scalar S>
S scalar_conj(const S& s) {
  return ScalarTraits<S>::conj(s);
}

/// num / den where den must be a nonzero constant. A variable-dependent den
/// raises SymbolicNormUnsupported; a zero den raises `on_zero`.
Coeff divide_by_constant(const Coeff& num, const Coeff& den, ErrorCode on_zero);
Complex divide_by_constant(const Complex& num, const Complex& den, ErrorCode on_zero);

}  // namespace lofock
