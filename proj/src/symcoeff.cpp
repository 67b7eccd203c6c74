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

#include "lofock/symcoeff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "lofock/error.hpp"

namespace lofock {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::Overflow, "radicand exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(p);
}

std::uint64_t to_u64(const mpz_class& z) {
  if (sgn(z) < 0 || !z.fits_ulong_p()) {
    throw Error(ErrorCode::Overflow, "integer does not fit a radicand: " + z.get_str());
  }
  return z.get_ui();
}

std::vector<unsigned> primes_up_to(unsigned n) {
  std::vector<unsigned> primes;
  for (unsigned p = 2; p <= n; ++p) {
    bool prime = true;
    for (unsigned q : primes) {
      if (q * q > p) break;
      if (p % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(p);
  }
  return primes;
}

long legendre(unsigned n, unsigned p) {
  long e = 0;
  for (unsigned long q = p; q <= n; q *= p) e += n / q;
  return e;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> split_square(std::uint64_t n) {
  std::uint64_t root = 1, free = 1;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) root *= p;
    if (e % 2) free *= p;
  }
  free *= n;  // remaining prime factor (or 1)
  return {root, free};
}

Radical Radical::sqrt_of(const Rational& value) {
  if (sgn(value) < 0) {
    throw Error(ErrorCode::OutOfRange, "square root of a negative rational");
  }
  if (sgn(value) == 0) return {Rational(0), 1};
  auto [a, f1] = split_square(to_u64(value.get_num()));
  auto [b, f2] = split_square(to_u64(value.get_den()));
  std::uint64_t g = std::gcd(f1, f2);
  Radical r;
  r.rat = Rational(mpz_class(static_cast<unsigned long>(a)) * static_cast<unsigned long>(g),
                   mpz_class(static_cast<unsigned long>(b)) * static_cast<unsigned long>(f2));
  r.rat.canonicalize();
  r.radicand = checked_mul(f1 / g, f2 / g);
  return r;
}

Radical Radical::sqrt_factorial_ratio(std::span<const unsigned> numerator,
                                      std::span<const unsigned> denominator) {
  unsigned top = 1;
  for (unsigned n : numerator) top = std::max(top, n);
  for (unsigned n : denominator) top = std::max(top, n);
  mpz_class num = 1, den = 1;
  std::uint64_t radicand = 1;
  for (unsigned p : primes_up_to(top)) {
    long e = 0;
    for (unsigned n : numerator) e += legendre(n, p);
    for (unsigned n : denominator) e -= legendre(n, p);
    long half = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e / 2)
    mpz_class pz = p;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(std::labs(half)));
    if (half >= 0) num *= pw; else den *= pw;
    if (e % 2 != 0) radicand = checked_mul(radicand, p);
  }
  Radical r;
  r.rat = Rational(num, den);
  r.rat.canonicalize();
  r.radicand = radicand;
  return r;
}

double Radical::to_double() const {
  return rat.get_d() * std::sqrt(static_cast<double>(radicand));
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const VarRef& v, unsigned power) {
  if (power > 0) powers_.emplace_back(v, power);
  normalize();
}

void Monomial::normalize() {
  for (auto& [v, p] : powers_) {
    if (v.is_real) v.conjugated = false;
  }
  std::sort(powers_.begin(), powers_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<VarRef, unsigned>> merged;
  for (auto& entry : powers_) {
    if (entry.second == 0) continue;
    if (!merged.empty() && merged.back().first == entry.first) {
      merged.back().second += entry.second;
    } else {
      merged.push_back(std::move(entry));
    }
  }
  powers_ = std::move(merged);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, p] : powers_) d += p;
  return d;
}

unsigned Monomial::degree_in(const std::set<std::string>& names) const {
  unsigned d = 0;
  for (const auto& [v, p] : powers_) {
    if (names.count(v.name)) d += p;
  }
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  m.powers_ = powers_;
  m.powers_.insert(m.powers_.end(), other.powers_.begin(), other.powers_.end());
  m.normalize();
  return m;
}

Monomial Monomial::conj() const {
  Monomial m;
  m.powers_ = powers_;
  for (auto& [v, p] : m.powers_) v = v.conj();
  m.normalize();
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  std::size_t n = std::min(a.powers_.size(), b.powers_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.powers_[i].first <=> b.powers_[i].first; c != 0) return c;
    if (auto c = b.powers_[i].second <=> a.powers_[i].second; c != 0) return c;
  }
  return a.powers_.size() <=> b.powers_.size();
}

// ---------------------------------------------------------------- bindings

namespace {

std::optional<Complex> resolve_atom(const Binding& env, std::string_view token) {
  if (!token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
      })) {
    return Complex(std::stod(std::string(token)), 0.0);
  }
  return resolve_variable(env, token);
}

}  // namespace

std::optional<Complex> resolve_variable(const Binding& env, std::string_view name) {
  if (auto it = env.find(std::string(name)); it != env.end()) return it->second;
  if (name.starts_with("u_") && name.size() > 2) {
    if (auto phi = resolve_variable(env, name.substr(2))) {
      return std::exp(Complex(0.0, 1.0) * *phi);
    }
  }
  if (name.starts_with("rc_") && name.size() > 3) {
    if (auto t = resolve_variable(env, name.substr(3))) {
      return std::sqrt(Complex(1.0, 0.0) - *t * *t);
    }
  }
  if (name.starts_with("deltaK__")) {
    std::string_view rest = name.substr(8);
    auto sep = rest.find("__");
    if (sep != std::string_view::npos) {
      auto a = resolve_atom(env, rest.substr(0, sep));
      auto b = resolve_atom(env, rest.substr(sep + 2));
      if (a && b) return Complex(*a == *b ? 1.0 : 0.0, 0.0);
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------------- Coeff

Coeff::Coeff(long value) {
  if (value != 0) terms_.push_back(Term{Rational(value), 1, {}});
}

Coeff::Coeff(const Rational& value) {
  if (sgn(value) != 0) {
    terms_.push_back(Term{value, 1, {}});
    terms_.back().rat.canonicalize();
  }
}

Coeff::Coeff(const Radical& value) {
  if (sgn(value.rat) != 0 && value.radicand != 0) {
    auto [root, free] = split_square(value.radicand);
    terms_.push_back(Term{value.rat * Rational(static_cast<unsigned long>(root)), free, {}});
    terms_.back().rat.canonicalize();
  }
}

Coeff::Coeff(const VarRef& var, unsigned power) {
  terms_.push_back(Term{Rational(1), 1, Monomial(var, power)});
}

Coeff Coeff::sqrt(std::uint64_t n) {
  return Coeff(Radical{Rational(1), n});
}

Coeff Coeff::from_terms(std::vector<Term> terms) {
  Coeff c;
  for (auto& t : terms) {
    auto [root, free] = split_square(t.radicand);
    t.rat *= Rational(static_cast<unsigned long>(root));
    t.radicand = free;
  }
  c.terms_ = std::move(terms);
  c.canonicalize();
  return c;
}

void Coeff::canonicalize() {
  for (auto& t : terms_) t.rat.canonicalize();
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
    if (auto c = a.mono <=> b.mono; c != 0) return c < 0;
    return a.radicand < b.radicand;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().mono == t.mono &&
        merged.back().radicand == t.radicand) {
      merged.back().rat += t.rat;
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return sgn(t.rat) == 0; }),
               merged.end());
  terms_ = std::move(merged);
}

bool Coeff::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.mono.empty(); });
}

std::optional<Radical> Coeff::as_radical() const {
  if (terms_.empty()) return Radical{Rational(0), 1};
  if (terms_.size() == 1 && terms_[0].mono.empty()) {
    return Radical{terms_[0].rat, terms_[0].radicand};
  }
  return std::nullopt;
}

std::optional<Rational> Coeff::as_rational() const {
  auto r = as_radical();
  if (r && r->radicand == 1) return r->rat;
  return std::nullopt;
}

std::set<std::string> Coeff::free_variables() const {
  std::set<std::string> names;
  for (const auto& t : terms_) {
    for (const auto& [v, p] : t.mono.powers()) names.insert(v.name);
  }
  return names;
}

Coeff Coeff::conj() const {
  Coeff c;
  c.terms_.reserve(terms_.size());
  for (const auto& t : terms_) c.terms_.push_back(Term{t.rat, t.radicand, t.mono.conj()});
  c.canonicalize();
  return c;
}

Coeff Coeff::pow(unsigned exponent) const {
  Coeff result(1L);
  Coeff base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Coeff Coeff::truncate_degree(const std::set<std::string>& names, unsigned max_degree) const {
  Coeff c;
  for (const auto& t : terms_) {
    if (t.mono.degree_in(names) <= max_degree) c.terms_.push_back(t);
  }
  return c;
}

Complex Coeff::eval(const Binding& env) const {
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    Complex value = t.rat.get_d() * std::sqrt(static_cast<double>(t.radicand));
    for (const auto& [v, p] : t.mono.powers()) {
      auto bound = resolve_variable(env, v.name);
      if (!bound) throw Error(ErrorCode::UnboundVariable, v.name);
      Complex x = v.conjugated ? std::conj(*bound) : *bound;
      Complex power = 1.0;
      for (unsigned k = 0; k < p; ++k) power *= x;
      value *= power;
    }
    sum += value;
  }
  return sum;
}

double Coeff::to_double_constant() const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (!t.mono.empty()) {
      throw Error(ErrorCode::UnboundVariable, t.mono.powers().front().first.name);
    }
    sum += t.rat.get_d() * std::sqrt(static_cast<double>(t.radicand));
  }
  return sum;
}

Coeff Coeff::operator-() const {
  Coeff c = *this;
  for (auto& t : c.terms_) t.rat = -t.rat;
  return c;
}

Coeff operator+(const Coeff& a, const Coeff& b) {
  Coeff c;
  c.terms_.reserve(a.terms_.size() + b.terms_.size());
  c.terms_ = a.terms_;
  c.terms_.insert(c.terms_.end(), b.terms_.begin(), b.terms_.end());
  c.canonicalize();
  return c;
}

Coeff operator-(const Coeff& a, const Coeff& b) { return a + (-b); }

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff c;
  c.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      std::uint64_t g = std::gcd(x.radicand, y.radicand);
      Term t;
      t.radicand = checked_mul(x.radicand / g, y.radicand / g);
      t.rat = x.rat * y.rat * Rational(static_cast<unsigned long>(g));
      t.mono = x.mono * y.mono;
      c.terms_.push_back(std::move(t));
    }
  }
  c.canonicalize();
  return c;
}

bool operator==(const Coeff& a, const Coeff& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (x.radicand != y.radicand || x.rat != y.rat || !(x.mono == y.mono)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- printing

namespace {

std::string term_magnitude(const Term& t) {
  std::vector<std::string> parts;
  Rational mag = abs(t.rat);
  bool bare = t.radicand == 1 && t.mono.empty();
  if (mag != 1 || bare) parts.push_back(mag.get_str());
  if (t.radicand != 1) parts.push_back("sqrt(" + std::to_string(t.radicand) + ")");
  for (const auto& [v, p] : t.mono.powers()) {
    std::string s = v.conjugated ? "conj(" + v.name + ")" : v.name;
    if (p > 1) s += "^" + std::to_string(p);
    parts.push_back(std::move(s));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '*';
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_string(const Coeff& c) {
  if (c.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : c.terms()) {
    bool negative = sgn(t.rat) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    out += term_magnitude(t);
    first = false;
  }
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class CoeffParser {
 public:
  CoeffParser(std::string_view text, const std::set<std::string>& reals)
      : text_(text), reals_(reals) {}

  Coeff parse() {
    Coeff c = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("end of input or operator");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(pos_, expected, text_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }

  Coeff expr() {
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Coeff c = term();
    if (negate) c = -c;
    for (;;) {
      if (accept('+')) c += term();
      else if (accept('-')) c -= term();
      else break;
    }
    return c;
  }

  Coeff term() {
    Coeff c = factor();
    while (accept('*')) c *= factor();
    return c;
  }

  Coeff factor() {
    Coeff c = atom();
    while (accept('^')) {
      unsigned long long e = posint();
      c = c.pow(static_cast<unsigned>(e));
    }
    return c;
  }

  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned long long posint() {
    std::size_t at = pos_;
    std::string d = digits();
    mpz_class z(d);
    if (z == 0 || !z.fits_ulong_p()) {
      pos_ = at;
      fail("positive integer");
    }
    return z.get_ui();
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) fail("identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  VarRef var(std::string name) const {
    bool real = reals_.count(name) > 0;
    return VarRef{std::move(name), false, real};
  }

  Coeff atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("factor");
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mpz_class num(digits());
      if (accept('/')) {
        std::size_t at = pos_;
        mpz_class den(digits());
        if (den == 0) {
          pos_ = at;
          fail("positive integer");
        }
        Rational q(num, den);
        q.canonicalize();
        return Coeff(q);
      }
      return Coeff(Rational(num));
    }
    if (accept('(')) {
      Coeff c = expr();
      expect(')');
      return c;
    }
    std::size_t at = pos_;
    std::string name = ident();
    if (name == "sqrt" && peek('(')) {
      expect('(');
      skip_ws();
      std::string d = digits();
      mpz_class z(d);
      if (z == 0 || !z.fits_ulong_p()) {
        pos_ = at;
        fail("positive integer radicand");
      }
      expect(')');
      return Coeff::sqrt(z.get_ui());
    }
    if (name == "conj" && peek('(')) {
      expect('(');
      std::string inner = ident();
      expect(')');
      return Coeff(var(std::move(inner)).conj());
    }
    return Coeff(var(std::move(name)));
  }

  std::string_view text_;
  const std::set<std::string>& reals_;
  std::size_t pos_ = 0;
};

}  // namespace

Coeff parse_coeff(std::string_view text, const std::set<std::string>& reals) {
  return CoeffParser(text, reals).parse();
}

}  // namespace lofock
