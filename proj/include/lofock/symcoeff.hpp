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

// Exact coefficients: finite sums of rational * sqrt(square-free) * monomial
// terms over (possibly conjugated) variables.

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lofock {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// A variable occurrence. Real variables are never conjugated.
struct VarRef {
  std::string name;
  bool conjugated = false;
  bool is_real = false;

  static VarRef complex(std::string name) { return {std::move(name), false, false}; }
  static VarRef real(std::string name) { return {std::move(name), false, true}; }

  VarRef conj() const {
    VarRef v = *this;
    if (!is_real) v.conjugated = !v.conjugated;
    return v;
  }

  friend bool operator==(const VarRef&, const VarRef&) = default;
  friend std::strong_ordering operator<=>(const VarRef& a, const VarRef& b) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    if (auto c = a.conjugated <=> b.conjugated; c != 0) return c;
    return a.is_real <=> b.is_real;
  }
};

/// rat * sqrt(radicand) with radicand square-free. Used for exact constants
/// such as sqrt(p!q!/(n!m!)).
struct Radical {
  Rational rat = 1;
  std::uint64_t radicand = 1;

  /// Exact square root of a non-negative rational.
  static Radical sqrt_of(const Rational& value);
  /// sqrt(prod(a!) / prod(b!)), reduced via prime exponents.
  static Radical sqrt_factorial_ratio(std::span<const unsigned> numerator,
                                      std::span<const unsigned> denominator);
  double to_double() const;
};

/// Square-free part and square root of the square part: n = root^2 * free.
std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const VarRef& v, unsigned power = 1);

  const std::vector<std::pair<VarRef, unsigned>>& powers() const { return powers_; }
  bool empty() const { return powers_.empty(); }
  unsigned degree() const;
  unsigned degree_in(const std::set<std::string>& names) const;

  Monomial operator*(const Monomial& other) const;
  Monomial conj() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded: lower total degree first, then lexicographic on the sorted powers.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  void normalize();
  std::vector<std::pair<VarRef, unsigned>> powers_;
};

struct Term {
  Rational rat;
  std::uint64_t radicand = 1;
  Monomial mono;
};

using Binding = std::map<std::string, Complex>;

/// Resolves a variable against a binding. Besides direct lookups this knows
/// the derived names produced by the optics layer:
///   u_<phi>        -> exp(i * phi)          (phase-shifter factor)
///   rc_<t>         -> sqrt(1 - t^2)         (complementary reflectivity)
///   deltaK__a__b   -> 1 if a and b resolve equal, else 0
std::optional<Complex> resolve_variable(const Binding& env, std::string_view name);

class Coeff {
 public:
  Coeff() = default;
  Coeff(long value);  // NOLINT(google-explicit-constructor)
  explicit Coeff(const Rational& value);
  explicit Coeff(const Radical& value);
  explicit Coeff(const VarRef& var, unsigned power = 1);

  static Coeff variable(std::string name, bool is_real = false) {
    return Coeff(VarRef{std::move(name), false, is_real});
  }
  /// sqrt(n) for a non-negative integer n.
  static Coeff sqrt(std::uint64_t n);
  static Coeff from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no term carries a variable.
  bool is_constant() const;
  /// The value as rat*sqrt(m) when the coefficient is a single constant term
  /// (or zero, giving rat 0).
  std::optional<Radical> as_radical() const;
  std::optional<Rational> as_rational() const;
  std::set<std::string> free_variables() const;

  Coeff conj() const;
  Coeff pow(unsigned exponent) const;
  /// Keeps only terms whose total degree in `names` is at most `max_degree`.
  Coeff truncate_degree(const std::set<std::string>& names, unsigned max_degree) const;

  Complex eval(const Binding& env) const;
  double to_double_constant() const;

  Coeff operator-() const;
  friend Coeff operator+(const Coeff& a, const Coeff& b);
  friend Coeff operator-(const Coeff& a, const Coeff& b);
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  Coeff& operator+=(const Coeff& b) { return *this = *this + b; }
  Coeff& operator-=(const Coeff& b) { return *this = *this - b; }
  Coeff& operator*=(const Coeff& b) { return *this = *this * b; }

  friend bool operator==(const Coeff& a, const Coeff& b);

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

/// Canonical text form, accepted back by parse_coeff.
std::string to_string(const Coeff& c);

/// Parses the coefficient grammar:
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' posint)*
///   atom   := int ['/' posint] | 'sqrt(' posint ')' | ident
///           | 'conj(' ident ')' | '(' expr ')'
/// Identifiers listed in `reals` are real variables.
Coeff parse_coeff(std::string_view text, const std::set<std::string>& reals = {});

}  // namespace lofock
