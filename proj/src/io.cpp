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

#include "lofock/io.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "lofock/state_ops.hpp"

namespace lofock {

using nlohmann::json;

std::string form_name(const AnyState& s) {
  switch (s.index() % 3) {
    case 0: return "vec";
    case 1: return "matcol";
    default: return "mat";
  }
}

bool is_numeric(const AnyState& s) { return s.index() >= 3; }

namespace {

void collect_reals(const Coeff& c, std::set<std::string>& out) {
  for (const auto& t : c.terms()) {
    for (const auto& [v, p] : t.mono.powers()) {
      if (v.is_real) out.insert(v.name);
    }
  }
}

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, where + ": " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid("state document", std::string("missing \"") + key + "\"");
  return j.at(key);
}

unsigned positive(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    invalid("state document", std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<unsigned>();
}

ModeList modes_of(const json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "mode list must be an array of integers");
  ModeList m;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      invalid(where, "mode occupations must be non-negative integers");
    }
    m.push_back(x.get<unsigned>());
  }
  return m;
}

Coeff symbolic_coeff(const json& j, const std::set<std::string>& reals, const std::string& where) {
  if (j.is_number_integer()) return Coeff(j.get<long>());
  if (!j.is_string()) invalid(where, "coefficient must be a string in the coefficient grammar");
  try {
    return parse_coeff(j.get<std::string>(), reals);
  } catch (const ParseError& e) {
    throw Error(ErrorCode::ParseError, where + ": " + e.detail());
  }
}

Complex numeric_coeff(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  invalid(where, "numeric coefficient must be a number or [re, im]");
}

json coeff_json(const Coeff& c) { return to_string(c); }
json coeff_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

template <class S>
S read_coeff(const json& j, const std::set<std::string>& reals, const std::string& where) {
  if constexpr (std::is_same_v<S, Coeff>) {
    return symbolic_coeff(j, reals, where);
  } else {
    return numeric_coeff(j, where);
  }
}

// Row validation runs here (rather than in the container) so that messages
// name the row as it appears in the file, before duplicates are merged.
void check_row_modes(const ModeList& m, StateHeader h, const std::string& where) {
  if (m.size() != h.K) {
    invalid(where, "mode list has " + std::to_string(m.size()) + " entries, K=" +
                       std::to_string(h.K));
  }
  for (unsigned n : m) {
    if (n >= h.d) invalid(where, "occupation " + std::to_string(n) + " exceeds d-1");
  }
}

template <class S>
AnyState read_rows(const json& j, const std::string& form, StateHeader h,
                   const std::set<std::string>& reals) {
  const json& rows = field(j, "rows");
  if (!rows.is_array()) invalid("state document", "\"rows\" must be an array");
  if (form == "vec") {
    std::vector<KetRow<S>> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::string where = "row " + std::to_string(i + 1);
      const json& r = rows[i];
      if (!r.is_array() || r.size() != 2) invalid(where, "vec rows are [coeff, ket]");
      ModeList ket = modes_of(r[1], where);
      check_row_modes(ket, h, where);
      out.push_back({read_coeff<S>(r[0], reals, where), std::move(ket)});
    }
    return BasicPureState<S>(h, std::move(out));
  }
  std::vector<KetBraRow<S>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string where = "row " + std::to_string(i + 1);
    const json& r = rows[i];
    if (!r.is_array() || r.size() != 3) invalid(where, "matcol rows are [coeff, ket, bra]");
    ModeList ket = modes_of(r[1], where);
    ModeList bra = modes_of(r[2], where);
    check_row_modes(ket, h, where);
    check_row_modes(bra, h, where);
    out.push_back({read_coeff<S>(r[0], reals, where), std::move(ket), std::move(bra)});
  }
  return BasicDensityState<S>(h, std::move(out));
}

template <class S>
AnyState read_matrix(const json& j, StateHeader h, const std::set<std::string>& reals) {
  const json& rl = field(j, "row_labels");
  const json& cl = field(j, "col_labels");
  const json& entries = field(j, "entries");
  if (!rl.is_array() || !cl.is_array() || !entries.is_array()) {
    invalid("state document", "mat documents need label and entry arrays");
  }
  std::vector<ModeList> rows, cols;
  for (std::size_t i = 0; i < rl.size(); ++i) {
    std::string where = "row label " + std::to_string(i + 1);
    rows.push_back(modes_of(rl[i], where));
    check_row_modes(rows.back(), h, where);
  }
  for (std::size_t i = 0; i < cl.size(); ++i) {
    std::string where = "column label " + std::to_string(i + 1);
    cols.push_back(modes_of(cl[i], where));
    check_row_modes(cols.back(), h, where);
  }
  if (entries.size() != rows.size()) invalid("entries", "one entry row per row label");
  std::vector<S> flat;
  for (std::size_t r = 0; r < entries.size(); ++r) {
    std::string where = "entries row " + std::to_string(r + 1);
    if (!entries[r].is_array() || entries[r].size() != cols.size()) {
      invalid(where, "one entry per column label");
    }
    for (const auto& e : entries[r]) flat.push_back(read_coeff<S>(e, reals, where));
  }
  return BasicDenseMatrix<S>(std::move(rows), std::move(cols), std::move(flat));
}

template <class S>
json rows_json(const BasicPureState<S>& s) {
  json rows = json::array();
  for (const auto& r : s) rows.push_back(json::array({coeff_json(r.coeff), r.ket}));
  return rows;
}

template <class S>
json rows_json(const BasicDensityState<S>& s) {
  json rows = json::array();
  for (const auto& r : s) rows.push_back(json::array({coeff_json(r.coeff), r.ket, r.bra}));
  return rows;
}

template <class S>
void matrix_json(const BasicDenseMatrix<S>& m, json& j) {
  j["row_labels"] = m.row_labels();
  j["col_labels"] = m.col_labels();
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(coeff_json(m.at(r, c)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::set<std::string> real_variables(const AnyState& s) {
  std::set<std::string> out;
  std::visit(
      [&](const auto& st) {
        using St = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<typename St::scalar_type, Coeff>) {
          if constexpr (std::is_same_v<St, DenseMatrix>) {
            for (const auto& e : st.entries()) collect_reals(e, out);
          } else {
            for (const auto& r : st) collect_reals(r.coeff, out);
          }
        }
      },
      s);
  return out;
}

StateDocument state_from_json(const json& j) {
  if (!j.is_object()) invalid("state document", "expected a JSON object");
  const json& f = field(j, "form");
  if (!f.is_string()) invalid("state document", "\"form\" must be a string");
  std::string form = f.get<std::string>();
  if (form != "vec" && form != "matcol" && form != "mat") {
    invalid("state document", "unknown form '" + form + "'");
  }
  StateHeader h{positive(j, "K"), positive(j, "d")};
  StateDocument doc;
  if (j.contains("reals")) {
    const json& r = j.at("reals");
    if (!r.is_array()) invalid("state document", "\"reals\" must be an array of names");
    for (const auto& name : r) {
      if (!name.is_string()) invalid("state document", "\"reals\" must be an array of names");
      doc.reals.insert(name.get<std::string>());
    }
  }
  bool numeric = j.contains("numeric") && j.at("numeric").is_boolean() && j.at("numeric").get<bool>();
  if (form == "mat") {
    doc.state = numeric ? read_matrix<Complex>(j, h, doc.reals) : read_matrix<Coeff>(j, h, doc.reals);
  } else {
    doc.state = numeric ? read_rows<Complex>(j, form, h, doc.reals)
                        : read_rows<Coeff>(j, form, h, doc.reals);
  }
  return doc;
}

json state_to_json(const StateDocument& doc) {
  json j;
  j["form"] = form_name(doc.state);
  std::visit(
      [&](const auto& st) {
        StateHeader h = st.header();
        j["K"] = h.K;
        j["d"] = h.d;
      },
      doc.state);
  std::set<std::string> reals = doc.reals;
  auto used = real_variables(doc.state);
  reals.insert(used.begin(), used.end());
  j["reals"] = reals;
  if (is_numeric(doc.state)) j["numeric"] = true;
  std::visit(
      [&](const auto& st) {
        using St = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<St, DenseMatrix> || std::is_same_v<St, NumDenseMatrix>) {
          matrix_json(st, j);
        } else {
          j["rows"] = rows_json(st);
        }
      },
      doc.state);
  return j;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::ParseError, origin + ":" + std::to_string(line) + ":" +
                                           std::to_string(col) + ": malformed JSON");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::random_device rd;
  fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot replace " + path.string());
  }
}

StateDocument load_state(const std::filesystem::path& path) {
  return state_from_json(parse_json_text(read_text_file(path), path.string()));
}

// Header keys first in a fixed order, then one row (or matrix row) per line,
// so golden files diff cleanly.
std::string dump_state(const StateDocument& doc) {
  json j = state_to_json(doc);
  static const char* const order[] = {"form", "K", "d", "numeric", "reals",
                                      "row_labels", "col_labels", "entries", "rows"};
  std::string out = "{";
  bool first = true;
  for (const char* key : order) {
    if (!j.contains(key)) continue;
    out += first ? "\n" : ",\n";
    first = false;
    out += " " + json(key).dump() + ": ";
    const json& v = j.at(key);
    bool listed = std::string(key) == "rows" || std::string(key) == "entries" ||
                  std::string(key) == "row_labels" || std::string(key) == "col_labels";
    if (listed && !v.empty()) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ",\n  " : "\n  ") + v[i].dump();
      out += "\n ]";
    } else {
      out += v.dump();
    }
  }
  return out + "\n}\n";
}

void save_state(const std::filesystem::path& path, const StateDocument& doc) {
  write_text_file_atomic(path, dump_state(doc));
}

}  // namespace lofock
