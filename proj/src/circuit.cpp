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

#include "lofock/circuit.hpp"

#include <charconv>
#include <sstream>

#include "lofock/analysis.hpp"
#include "lofock/linear_optics.hpp"
#include "lofock/measurement.hpp"
#include "lofock/state_ops.hpp"

namespace lofock {

using nlohmann::json;

namespace {

template <class T>
constexpr bool is_pure_v = std::is_same_v<T, BasicPureState<typename T::scalar_type>>;
template <class T>
constexpr bool is_dense_v = std::is_same_v<T, BasicDenseMatrix<typename T::scalar_type>>;
template <class T>
constexpr bool is_symbolic_v = std::is_same_v<typename T::scalar_type, Coeff>;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, what);
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing \"") + key + "\"");
  return j.at(key);
}

unsigned as_uint(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    invalid("\"" + what + "\" must be a non-negative integer");
  }
  return j.get<unsigned>();
}

std::vector<unsigned> as_uint_list(const json& j, const std::string& what) {
  if (j.is_number_integer()) return {as_uint(j, what)};
  if (!j.is_array()) invalid("\"" + what + "\" must be an integer list");
  std::vector<unsigned> out;
  for (const auto& x : j) out.push_back(as_uint(x, what));
  return out;
}

std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) invalid("\"" + what + "\" must be a string");
  return j.get<std::string>();
}

Complex complex_value(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) return parse_complex(j.get<std::string>());
  invalid("\"" + what + "\" must be a number, [re, im] or a complex literal");
}

std::string format_value(const Coeff& c) { return to_string(c); }
std::string format_value(const Complex& c) { return format_scalar(c); }

class Runner {
 public:
  Runner(const json& circuit, std::filesystem::path base) : doc_(circuit), base_(std::move(base)) {}

  CircuitReport run() {
    if (!doc_.is_object()) invalid("circuit document must be a JSON object");
    if (doc_.contains("reals")) {
      for (const auto& r : doc_.at("reals")) reals_.insert(as_string(r, "reals"));
    }
    if (doc_.contains("bindings")) env_ = bindings_from_json(doc_.at("bindings"));
    state_ = source(require(doc_, "source"));
    check_header();
    if (doc_.contains("ops")) {
      const json& ops = doc_.at("ops");
      if (!ops.is_array()) invalid("\"ops\" must be an array");
      for (std::size_t k = 0; k < ops.size(); ++k) {
        std::string name = ops[k].is_object() && ops[k].contains("op") && ops[k]["op"].is_string()
                               ? ops[k]["op"].get<std::string>()
                               : "?";
        try {
          op_index_ = k + 1;
          apply(ops[k], name);
        } catch (const Error& e) {
          throw Error(e.code(), "op " + std::to_string(k + 1) + " (" + name + "): " + e.detail());
        }
      }
    }
    CircuitReport report;
    if (doc_.contains("analyses")) {
      const json& an = doc_.at("analyses");
      if (!an.is_array()) invalid("\"analyses\" must be an array");
      for (std::size_t k = 0; k < an.size(); ++k) {
        std::string name = an[k].is_string() ? an[k].get<std::string>()
                           : an[k].is_object() && an[k].contains("name")
                               ? as_string(an[k]["name"], "name")
                               : "?";
        try {
          report.results.emplace_back(name, analyse(an[k], name));
        } catch (const Error& e) {
          throw Error(e.code(),
                      "analysis " + std::to_string(k + 1) + " (" + name + "): " + e.detail());
        }
      }
    }
    report.final_state = StateDocument{state_, reals_};
    report.bindings = env_;
    report.warnings = warnings_;
    if (doc_.contains("save")) {
      save_state(base_ / as_string(doc_.at("save"), "save"), report.final_state);
    }
    return report;
  }

 private:
  // ------------------------------------------------------------- arguments

  template <class S>
  S scalar(const json& j, const std::string& what) const {
    if constexpr (std::is_same_v<S, Coeff>) {
      if (j.is_number_integer()) return Coeff(j.get<long>());
      if (j.is_string()) return parse_coeff(j.get<std::string>(), reals_);
      invalid("\"" + what + "\" must be an integer or a coefficient string on a symbolic state");
    } else {
      if (j.is_string()) return parse_coeff(j.get<std::string>(), reals_).eval(env_);
      return complex_value(j, what);
    }
  }

  StateDocument document(const json& j) const {
    if (j.is_string()) return load_state(base_ / j.get<std::string>());
    if (j.is_object() && j.contains("file") && !j.contains("form")) {
      return load_state(base_ / as_string(j.at("file"), "file"));
    }
    json copy = j;
    if (copy.is_object()) {
      std::set<std::string> r = reals_;
      if (copy.contains("reals") && copy["reals"].is_array()) {
        for (const auto& x : copy["reals"]) {
          if (x.is_string()) r.insert(x.get<std::string>());
        }
      }
      copy["reals"] = r;
    }
    return state_from_json(copy);
  }

  /// An operator/state document converted to density or pure form over S.
  template <class S>
  std::variant<BasicPureState<S>, BasicDensityState<S>> operand(const json& j) const {
    StateDocument doc = document(j);
    std::variant<BasicPureState<S>, BasicDensityState<S>> out;
    std::visit(
        [&](const auto& st) {
          using St = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<typename St::scalar_type, S>) {
            if constexpr (is_dense_v<St>) {
              out = mat2matcol(st);
            } else {
              out = st;
            }
          } else if constexpr (is_symbolic_v<St>) {
            auto num = eval_state(st, env_);
            if constexpr (is_dense_v<St>) {
              out = mat2matcol(num);
            } else {
              out = num;
            }
          } else {
            throw Error(ErrorCode::MixedMode, "numeric operand on a symbolic state");
          }
        },
        doc.state);
    return out;
  }

  template <class S>
  S phase(const json& op) {
    if (op.contains("u")) return scalar<S>(op.at("u"), "u");
    const json& phi = require(op, "phi");
    if constexpr (std::is_same_v<S, Coeff>) {
      if (phi.is_string()) return phase_factor(phi.get<std::string>());
      if (!phi.is_number()) invalid("\"phi\" must be a name or a number");
      // A numeric angle on a symbolic state becomes a named angle bound to
      // the given value, so the state stays exact until evaluation.
      std::string name = "ps" + std::to_string(op_index_);
      while (env_.count(name) != 0 || reals_.count(name) != 0) name += "_";
      env_[name] = Complex(phi.get<double>(), 0.0);
      return phase_factor(name);
    } else {
      Complex angle = phi.is_string() ? parse_coeff(phi.get<std::string>(), reals_).eval(env_)
                                      : complex_value(phi, "phi");
      return std::exp(Complex(0.0, 1.0) * angle);
    }
  }

  static std::pair<unsigned, unsigned> mode_pair(const json& op) {
    auto m = as_uint_list(require(op, "modes"), "modes");
    if (m.size() != 2) invalid("\"modes\" must list two modes");
    return {m[0], m[1]};
  }

  template <class S>
  CircuitElement<S> element(const json& e) {
    std::string type = as_string(require(e, "type"), "type");
    if (type == "bs") {
      auto [i, j] = mode_pair(e);
      S t = scalar<S>(require(e, "t"), "t");
      if (e.contains("r")) return BeamSplitter<S>{i, j, t, scalar<S>(e.at("r"), "r")};
      return BeamSplitter3<S>{i, j, t};
    }
    if (type == "ps") return PhaseShifter<S>{as_uint(require(e, "mode"), "mode"), phase<S>(e)};
    throw Error(ErrorCode::BadElement, "unknown unitary element '" + type + "'");
  }

  // ------------------------------------------------------------------ source

  AnyState source(const json& src) {
    if (src.contains("state")) return merge_reals(document(src.at("state")));
    if (src.contains("file")) return merge_reals(document(src.at("file")));
    std::string ctor = as_string(require(src, "constructor"), "constructor");
    json args = src.contains("args") ? src.at("args") : json::array();
    if (!args.is_array()) invalid("\"args\" must be an array");
    auto arg = [&](std::size_t k) -> const json& {
      if (k >= args.size()) invalid(ctor + " needs " + std::to_string(k + 1) + " arguments");
      return args[k];
    };
    if (ctor == "vac") return vac<Coeff>(as_uint(arg(0), "K"));
    if (ctor == "squeezed_vac") {
      return squeezed_vac(as_uint(arg(0), "m"), as_uint(arg(1), "d"), scalar<Coeff>(arg(2), "lambda"));
    }
    if (ctor == "coherent_state") {
      return coherent_state(as_uint(arg(0), "m"), as_uint(arg(1), "d"), scalar<Coeff>(arg(2), "alpha"));
    }
    if (ctor == "identity_state") {
      return identity_state<Coeff>(as_uint(arg(0), "nphot"), as_uint(arg(1), "K"));
    }
    invalid("unknown constructor '" + ctor + "'");
  }

  AnyState merge_reals(StateDocument doc) {
    reals_.insert(doc.reals.begin(), doc.reals.end());
    return std::move(doc.state);
  }

  void check_header() const {
    StateHeader h = std::visit([](const auto& st) { return st.header(); }, state_);
    if (doc_.contains("K") && as_uint(doc_.at("K"), "K") != h.K) {
      invalid("declared K does not match the source state");
    }
    if (doc_.contains("d") && as_uint(doc_.at("d"), "d") != h.d) {
      invalid("declared d does not match the source state");
    }
  }

  // --------------------------------------------------------------- operations

  void apply(const json& op, const std::string& name) {
    if (!op.is_object()) invalid("operation must be an object");
    static const std::set<std::string> dense_ok = {"eval", "to_matcol", "to_mat", "normalize",
                                                   "tensor_vac", "sort"};
    if (state_.index() % 3 == 2 && dense_ok.count(name) == 0) {
      state_ = std::visit(
          [](const auto& st) -> AnyState {
            if constexpr (is_dense_v<std::decay_t<decltype(st)>>) {
              return mat2matcol(st);
            } else {
              return st;
            }
          },
          state_);
    }
    state_ = std::visit([&](const auto& st) -> AnyState { return step(op, name, st); }, state_);
  }

  template <class St>
  AnyState step(const json& op, const std::string& name, const St& st) {
    using S = typename St::scalar_type;
    if (name == "tensor_vac") return tensor_vac(st, as_uint(require(op, "m"), "m"));
    if (name == "normalize") return state_normalize(st);
    if (name == "to_matcol") {
      if constexpr (is_pure_v<St>) {
        return vec2matcol(st);
      } else if constexpr (is_dense_v<St>) {
        return mat2matcol(st);
      } else {
        return st;
      }
    }
    if (name == "to_mat") {
      if constexpr (is_pure_v<St>) {
        return vec2mat(st);
      } else if constexpr (is_dense_v<St>) {
        return st;
      } else {
        return matcol2mat(st);
      }
    }
    if (name == "eval") {
      if constexpr (is_symbolic_v<St>) {
        return eval_state(st, env_);
      } else {
        return st;
      }
    }
    if (name == "sort") {
      if constexpr (is_dense_v<St>) {
        return st;
      } else {
        return state_sort(st);
      }
    }
    if constexpr (is_dense_v<St>) {
      invalid("internal: dense state reached '" + name + "'");
    } else {
      if (name == "bs") {
        auto [i, j] = mode_pair(op);
        S t = scalar<S>(require(op, "t"), "t");
        S r = op.contains("r") ? scalar<S>(op.at("r"), "r") : complementary_reflectivity(t);
        return beam_splitter(st, i, j, t, r);
      }
      if (name == "ps") return phase_shifter(st, as_uint(require(op, "mode"), "mode"), phase<S>(op));
      if (name == "unitary") {
        const json& els = require(op, "elements");
        if (!els.is_array()) invalid("\"elements\" must be an array");
        std::vector<CircuitElement<S>> elements;
        for (const auto& e : els) elements.push_back(element<S>(e));
        return unitary_evolution(build_unitary(elements, st.K()), st);
      }
      if (name == "project") {
        auto modes = as_uint_list(require(op, "modes"), "modes");
        auto P = operand<S>(require(op, "operator"));
        return std::visit(
            [&](const auto& p) -> AnyState { return project(p, modes, st, &warnings_); }, P);
      }
      if (name == "povm") {
        auto modes = as_uint_list(require(op, "modes"), "modes");
        BasicDensityState<S> E;
        if (op.contains("apd")) {
          const json& a = op.at("apd");
          E = apd_povm<S>(as_uint(require(a, "click"), "click"), scalar<S>(require(a, "r"), "r"),
                          as_uint(require(a, "N"), "N"));
        } else {
          E = std::visit([](const auto& p) { return BasicDensityState<S>(to_density(p)); },
                         operand<S>(require(op, "operator")));
        }
        bool divide = true;
        if (op.contains("divide_by_trace")) {
          if (!op.at("divide_by_trace").is_boolean()) invalid("\"divide_by_trace\" must be a boolean");
          divide = op.at("divide_by_trace").get<bool>();
        }
        return divide ? povm_result(E, modes, st) : povm_result_unnormalized(E, modes, st);
      }
      if (name == "traceout") {
        const json& m = op.contains("modes") ? op.at("modes") : require(op, "mode");
        return traceout_modes(BasicDensityState<S>(to_density(st)), as_uint_list(m, "modes"));
      }
      if (name == "approx") {
        std::vector<std::string> vars;
        for (const auto& v : require(op, "vars")) vars.push_back(as_string(v, "vars"));
        return state_approx(st, vars, as_uint(require(op, "n"), "n"));
      }
      if (name == "tensor_product") {
        auto self_modes = as_uint_list(require(op, "self_modes"), "self_modes");
        auto other_modes = as_uint_list(require(op, "other_modes"), "other_modes");
        auto other = operand<S>(require(op, "state"));
        return std::visit(
            [&](const auto& o) -> AnyState {
              if constexpr (is_pure_v<St> && is_pure_v<std::decay_t<decltype(o)>>) {
                return tensor_product(st, self_modes, o, other_modes);
              } else {
                return tensor_product(BasicDensityState<S>(to_density(st)), self_modes,
                                      BasicDensityState<S>(to_density(o)), other_modes);
              }
            },
            other);
      }
      invalid("unknown op '" + name + "'");
    }
  }

  // ---------------------------------------------------------------- analyses

  std::string analyse(const json& entry, const std::string& name) const {
    Binding env = env_;
    bool evaluate = false;
    if (entry.is_object()) {
      if (entry.contains("bind")) {
        for (const auto& [k, v] : bindings_from_json(entry.at("bind"))) env[k] = v;
      }
      if (entry.contains("evaluate")) {
        if (!entry.at("evaluate").is_boolean()) invalid("\"evaluate\" must be a boolean");
        evaluate = entry.at("evaluate").get<bool>();
      }
    } else if (!entry.is_string()) {
      invalid("analysis must be a name or an object");
    }
    return std::visit([&](const auto& st) { return measure(st, name, env, evaluate); }, state_);
  }

  template <class St>
  static std::string exact_or_number(const typename St::scalar_type& v, const Binding& env,
                                     bool evaluate) {
    if constexpr (is_symbolic_v<St>) {
      if (evaluate) return format_scalar(v.eval(env));
    }
    return format_value(v);
  }

  template <class St>
  static std::string measure(const St& st, const std::string& name, const Binding& env,
                             bool evaluate) {
    auto spectral_input = [&]() {
      if constexpr (is_dense_v<St>) {
        return mat2matcol(st);
      } else {
        return st;
      }
    };
    auto neg = [&]() {
      if constexpr (is_symbolic_v<St>) {
        return negativity(st, env);
      } else {
        return negativity(st);
      }
    };
    if (name == "negativity") return format_number(neg().negativity);
    if (name == "log_negativity") return format_number(neg().log_negativity);
    if (name == "entropy") {
      auto s = spectral_input();
      if constexpr (is_symbolic_v<St>) {
        return format_number(entropy(s, env));
      } else {
        return format_number(entropy(s));
      }
    }
    if (name == "energy") return exact_or_number<St>(energy(spectral_input()), env, evaluate);
    if (name == "trace" || name == "norm") return exact_or_number<St>(norm_or_trace(st), env, evaluate);
    if (name == "hermitian") {
      if constexpr (is_pure_v<St>) {
        return is_hermitian(vec2matcol(st)) ? "true" : "false";
      } else {
        return is_hermitian(st) ? "true" : "false";
      }
    }
    if (name == "normalized") return is_normalized(st).normalized ? "true" : "false";
    invalid("unknown analysis '" + name + "'");
  }

  const json& doc_;
  std::filesystem::path base_;
  std::set<std::string> reals_;
  Binding env_;
  std::vector<std::string> warnings_;
  AnyState state_;
  std::size_t op_index_ = 0;
};

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  auto fail = [&]() -> Complex {
    throw Error(ErrorCode::ParseError, "not a complex number: '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();
  auto number = [&](const std::string& part, bool imaginary) -> double {
    std::string p = part;
    if (imaginary && (p.empty() || p == "+" || p == "-")) p += "1";
    if (!p.empty() && p[0] == '+') p.erase(0, 1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || ptr != p.data() + p.size() || p.empty()) fail();
    return v;
  };
  if (s.back() != 'i') return {number(s, false), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(s, true)};
  return {number(s.substr(0, split), false), number(s.substr(split), true)};
}

Binding bindings_from_json(const json& j) {
  if (!j.is_object()) invalid("bindings must be an object of name: value");
  Binding env;
  for (const auto& [k, v] : j.items()) env[k] = complex_value(v, k);
  return env;
}

std::string CircuitReport::text() const {
  std::ostringstream out;
  const AnyState& s = final_state.state;
  StateHeader h = std::visit([](const auto& st) { return st.header(); }, s);
  out << "form: " << form_name(s) << (is_numeric(s) ? " numeric" : " symbolic") << "\n";
  out << "K: " << h.K << "\nd: " << h.d << "\n";
  for (const auto& [k, v] : bindings) out << "bind " << k << " = " << format_scalar(v) << "\n";
  for (const auto& w : warnings) out << "warning: " << w << "\n";
  out << "state:\n";
  std::visit([&](const auto& st) { out << render_state(st); }, s);
  out << "\n";
  for (const auto& [name, value] : results) out << name << ": " << value << "\n";
  return out.str();
}

CircuitReport run_circuit(const json& circuit, const std::filesystem::path& base_dir) {
  try {
    return Runner(circuit, base_dir).run();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvariantViolation, std::string("malformed circuit: ") + e.what());
  }
}

CircuitReport run_circuit_file(const std::filesystem::path& path) {
  json circuit = parse_json_text(read_text_file(path), path.string());
  return run_circuit(circuit, path.has_parent_path() ? path.parent_path() : ".");
}

}  // namespace lofock
