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

#include "lofock/state_ops.hpp"

#include <cctype>
#include <cstdio>
#include <regex>
#include <sstream>

namespace lofock {

std::vector<ModeList> all_mode_lists(unsigned K, unsigned d) {
  std::vector<ModeList> out;
  std::uint64_t dim = 1;
  for (unsigned k = 0; k < K; ++k) dim *= d;
  out.reserve(dim);
  for (std::uint64_t i = 1; i <= dim; ++i) out.push_back(to_modes(i, d, K));
  return out;
}

std::uint64_t to_index(const ModeList& modes, unsigned d) {
  std::uint64_t index = 0;
  std::uint64_t place = 1;
  for (unsigned n : modes) {
    if (n >= d) {
      throw Error(ErrorCode::OutOfRange,
                  "occupation " + std::to_string(n) + " is not below d=" + std::to_string(d));
    }
    index += n * place;
    place *= d;
  }
  return index + 1;
}

ModeList to_modes(std::uint64_t index, unsigned d, unsigned K) {
  std::uint64_t dim = 1;
  for (unsigned k = 0; k < K; ++k) dim *= d;
  if (index < 1 || index > dim) {
    throw Error(ErrorCode::OutOfRange,
                "index " + std::to_string(index) + " outside 1.." + std::to_string(dim));
  }
  ModeList out(K, 0);
  std::uint64_t rest = index - 1;
  for (unsigned k = 0; k < K; ++k) {
    out[k] = static_cast<unsigned>(rest % d);
    rest /= d;
  }
  return out;
}

namespace detail {

std::pair<std::vector<unsigned>, std::vector<unsigned>> tensor_placement(
    unsigned KA, const std::vector<unsigned>& listA, unsigned KB,
    const std::vector<unsigned>& listB) {
  if (listA.size() != KA || listB.size() != KB) {
    throw Error(ErrorCode::ModeListMismatch, "placement lists must match the mode counts");
  }
  const unsigned K = KA + KB;
  std::vector<bool> used(K, false);
  auto convert = [&](const std::vector<unsigned>& list) {
    std::vector<unsigned> pos;
    for (unsigned m : list) {
      if (m < 1 || m > K || used[m - 1]) {
        throw Error(ErrorCode::ModeListMismatch,
                    "mode " + std::to_string(m) + " is out of range or used twice");
      }
      used[m - 1] = true;
      pos.push_back(m - 1);
    }
    return pos;
  };
  auto pa = convert(listA);
  auto pb = convert(listB);
  return {pa, pb};
}

}  // namespace detail

Coeff delta_k(const DeltaArg& i, const DeltaArg& j) {
  if (i == j) return Coeff(1);
  if (i.index() == 0 && j.index() == 0) return Coeff(0);
  auto text = [](const DeltaArg& a) {
    return a.index() == 0 ? std::to_string(std::get<0>(a)) : std::get<1>(a);
  };
  return Coeff::variable("deltaK__" + text(i) + "__" + text(j), true);
}

// ------------------------------------------------------------- evaluation

NumPureState eval_state(const PureState& s, const Binding& env) {
  std::vector<KetRow<Complex>> rows;
  for (const auto& r : s) rows.push_back({r.coeff.eval(env), r.ket});
  return NumPureState(s.header(), std::move(rows));
}

NumDensityState eval_state(const DensityState& s, const Binding& env) {
  std::vector<KetBraRow<Complex>> rows;
  for (const auto& r : s) rows.push_back({r.coeff.eval(env), r.ket, r.bra});
  return NumDensityState(s.header(), std::move(rows));
}

NumDenseMatrix eval_state(const DenseMatrix& m, const Binding& env) {
  std::vector<Complex> entries;
  for (const auto& e : m.entries()) entries.push_back(e.eval(env));
  if (m.labeled()) return NumDenseMatrix(m.row_labels(), m.col_labels(), std::move(entries));
  NumDenseMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = entries[r * m.cols() + c];
  return out;
}

// ---------------------------------------------------------------- display

namespace {

std::string mode_digits(const ModeList& m) {
  bool wide = max_occupation(m) >= 10;
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (wide && i > 0) out += ",";
    out += std::to_string(m[i]);
  }
  return out;
}

}  // namespace

std::string render_ket(const ModeList& m) { return "|" + mode_digits(m) + ">"; }
std::string render_bra(const ModeList& m) { return "<" + mode_digits(m) + "|"; }
std::string render_braket(const ModeList& ket, const ModeList& bra) {
  return render_ket(ket) + render_bra(bra);
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_scalar(const Complex& c) {
  if (c.imag() == 0.0) return format_number(c.real());
  if (c.real() == 0.0) return format_number(c.imag()) + "i";
  std::string im = format_number(c.imag());
  if (im.front() != '-') im = "+" + im;
  return format_number(c.real()) + im + "i";
}

// -------------------------------------------------------------------- poly

namespace {

const std::regex& mode_symbol_re() {
  static const std::regex re(R"(^([ab])_([0-9]+)(?:\^([0-9]+))?$)");
  return re;
}

const std::regex& embedded_symbol_re() {
  static const std::regex re(R"((^|[^A-Za-z0-9_])[ab]_[0-9]+($|[^A-Za-z0-9_]))");
  return re;
}

std::string coeff_prefix(const Coeff& c) {
  std::string text = to_string(c);
  if (c.terms().size() == 1 && text.front() != '-') return text;
  return "(" + text + ")";
}

void check_poly_safe(const Coeff& c) {
  for (const auto& v : c.free_variables()) {
    if (std::regex_search(v, embedded_symbol_re())) {
      throw Error(ErrorCode::UnsupportedConversion,
                  "variable '" + v + "' collides with a mode symbol");
    }
  }
}

std::string poly_term(const Coeff& c, const ModeList& ket, const ModeList* bra) {
  check_poly_safe(c);
  std::vector<std::string> factors;
  auto add_modes = [&factors](const ModeList& m, char sym) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      std::string f = std::string(1, sym) + "_" + std::to_string(i + 1);
      if (m[i] > 1) f += "^" + std::to_string(m[i]);
      factors.push_back(std::move(f));
    }
  };
  add_modes(ket, 'a');
  if (bra != nullptr) add_modes(*bra, 'b');
  bool unit = c == Coeff(1);
  std::string out;
  if (!unit || factors.empty()) out = coeff_prefix(c);
  for (const auto& f : factors) {
    if (!out.empty()) out += "*";
    out += f;
  }
  return out;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

struct PolyTerm {
  Coeff coeff;
  std::map<unsigned, unsigned> a;
  std::map<unsigned, unsigned> b;
};

/// Splits at top-level '+'/'-' signs; each piece keeps its own sign.
std::vector<std::pair<bool, std::string>> split_poly_terms(std::string_view text) {
  std::vector<std::pair<bool, std::string>> pieces;
  bool negative = false;
  std::string current;
  int depth = 0;
  auto flush = [&](std::size_t pos) {
    auto first = current.find_first_not_of(" \t\n");
    if (first == std::string::npos) {
      throw ParseError(pos, "term", std::string(text));
    }
    pieces.emplace_back(negative, current);
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      auto last = current.find_last_not_of(" \t\n");
      if (last == std::string::npos) {
        // A sign before any content belongs to the term itself.
        if (c == '-') negative = !negative;
        continue;
      }
      char prev = current[last];
      if (prev != '*' && prev != '^' && prev != '/' && prev != '(') {
        flush(i);
        negative = c == '-';
        continue;
      }
    }
    current += c;
  }
  flush(text.size());
  return pieces;
}

/// Splits a term at top-level '*'.
std::vector<std::string> split_factors(const std::string& term) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : term) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  for (auto& f : out) {
    auto b = f.find_first_not_of(" \t\n");
    auto e = f.find_last_not_of(" \t\n");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

std::vector<PolyTerm> parse_poly(std::string_view text, const std::set<std::string>& reals) {
  std::vector<PolyTerm> terms;
  std::string whole(text);
  if (whole.find_first_not_of(" \t\n") == std::string::npos) {
    throw ParseError(0, "polynomial", whole);
  }
  if (split_factors(whole).size() == 1 && split_factors(whole).front() == "0") return terms;
  for (auto& [negative, piece] : split_poly_terms(text)) {
    PolyTerm t;
    std::string coeff_text;
    bool seen_b = false;
    for (const auto& f : split_factors(piece)) {
      std::smatch m;
      if (std::regex_match(f, m, mode_symbol_re())) {
        unsigned mode = static_cast<unsigned>(std::stoul(m[2].str()));
        unsigned power = m[3].matched ? static_cast<unsigned>(std::stoul(m[3].str())) : 1;
        if (mode < 1) throw ParseError(0, "mode index >= 1", whole);
        if (m[1] == "b") {
          seen_b = true;
          t.b[mode] += power;
        } else {
          if (seen_b) {
            throw Error(ErrorCode::NonNormalOrderedPoly,
                        "creation symbol after annihilation symbol in '" + piece + "'");
          }
          t.a[mode] += power;
        }
        continue;
      }
      if (std::regex_search(f, embedded_symbol_re())) {
        throw Error(ErrorCode::NonNormalOrderedPoly,
                    "mode symbol inside a coefficient factor: '" + f + "'");
      }
      if (!coeff_text.empty()) coeff_text += "*";
      coeff_text += f;
    }
    t.coeff = coeff_text.empty() ? Coeff(1) : parse_coeff(coeff_text, reals);
    if (negative) t.coeff = -t.coeff;
    terms.push_back(std::move(t));
  }
  return terms;
}

unsigned poly_modes(const std::vector<PolyTerm>& terms, unsigned K) {
  unsigned needed = 1;
  for (const auto& t : terms) {
    if (!t.a.empty()) needed = std::max(needed, t.a.rbegin()->first);
    if (!t.b.empty()) needed = std::max(needed, t.b.rbegin()->first);
  }
  if (K == 0) return needed;
  if (needed > K) {
    throw Error(ErrorCode::ModeOutOfRange,
                "polynomial uses mode " + std::to_string(needed) + " but K=" + std::to_string(K));
  }
  return K;
}

ModeList to_mode_list(const std::map<unsigned, unsigned>& powers, unsigned K) {
  ModeList m(K, 0);
  for (auto [mode, p] : powers) m[mode - 1] = p;
  return m;
}

}  // namespace

std::string vec2poly(const PureState& v) {
  std::vector<std::string> terms;
  for (const auto& r : v) terms.push_back(poly_term(r.coeff, r.ket, nullptr));
  return join_terms(terms);
}

std::string matcol2poly(const DensityState& m) {
  std::vector<std::string> terms;
  for (const auto& r : m) terms.push_back(poly_term(r.coeff, r.ket, &r.bra));
  return join_terms(terms);
}

std::string mat2poly(const DenseMatrix& m) { return matcol2poly(mat2matcol(m)); }

PureState poly2vec(std::string_view text, const std::set<std::string>& reals, unsigned K) {
  auto terms = parse_poly(text, reals);
  K = poly_modes(terms, K);
  std::vector<KetRow<Coeff>> rows;
  for (auto& t : terms) {
    if (!t.b.empty()) {
      throw Error(ErrorCode::UnsupportedConversion,
                  "pure-state polynomial may not contain bra symbols");
    }
    rows.push_back({std::move(t.coeff), to_mode_list(t.a, K)});
  }
  return PureState::fitted(K, std::move(rows));
}

DensityState poly2matcol(std::string_view text, const std::set<std::string>& reals, unsigned K) {
  auto terms = parse_poly(text, reals);
  K = poly_modes(terms, K);
  std::vector<KetBraRow<Coeff>> rows;
  for (auto& t : terms) {
    rows.push_back({std::move(t.coeff), to_mode_list(t.a, K), to_mode_list(t.b, K)});
  }
  return DensityState::fitted(K, std::move(rows));
}

}  // namespace lofock
