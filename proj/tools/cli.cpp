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

#include "cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "lofock/analysis.hpp"
#include "lofock/circuit.hpp"
#include "lofock/io.hpp"
#include "lofock/plot.hpp"
#include "lofock/state_ops.hpp"

namespace lofock {

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

Binding parse_bindings(const std::vector<std::string>& items) {
  Binding env;
  for (const auto& b : split_list(items)) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::ParseError, "binding must look like name=value: '" + b + "'");
    }
    env[b.substr(0, eq)] = parse_complex(b.substr(eq + 1));
  }
  return env;
}

std::set<std::string> reals_set(const std::vector<std::string>& items) {
  auto v = split_list(items);
  return {v.begin(), v.end()};
}

unsigned to_uint(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size() && v >= 0) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, what + " must be a non-negative integer: '" + s + "'");
}

std::string render_any(const AnyState& s) {
  return std::visit([](const auto& st) { return render_state(st); }, s);
}

/// Saves to `path` when given, else prints the Dirac rendering.
void emit(const StateDocument& doc, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << render_any(doc.state);
  } else {
    save_state(path, doc);
  }
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file_atomic(path, text);
  }
}

std::string poly_of(const AnyState& s) {
  if (const auto* v = std::get_if<PureState>(&s)) return vec2poly(*v);
  if (const auto* m = std::get_if<DensityState>(&s)) return matcol2poly(*m);
  if (const auto* m = std::get_if<DenseMatrix>(&s)) return mat2poly(*m);
  throw Error(ErrorCode::UnsupportedConversion, "poly output needs a symbolic state");
}

AnyState convert(const AnyState& s, const std::string& to) {
  return std::visit(
      [&](const auto& st) -> AnyState {
        using St = std::decay_t<decltype(st)>;
        using S = typename St::scalar_type;
        auto refuse = [&]() -> AnyState {
          throw Error(ErrorCode::UnsupportedConversion,
                      "cannot convert " + form_name(s) + " to " + to);
        };
        if (to == form_name(s)) return st;
        if constexpr (std::is_same_v<St, BasicPureState<S>>) {
          if (to == "matcol") return vec2matcol(st);
          if (to == "mat") return vec2mat(st);
        } else if constexpr (std::is_same_v<St, BasicDensityState<S>>) {
          if (to == "mat") return matcol2mat(st);
        } else {
          if (to == "matcol") return mat2matcol(st);
        }
        return refuse();
      },
      s);
}

AnyState construct(const std::string& ctor, const std::vector<std::string>& args,
                   const std::set<std::string>& reals, unsigned K) {
  auto arg = [&](std::size_t k) -> const std::string& {
    if (k >= args.size()) {
      throw Error(ErrorCode::ParseError, ctor + " needs " + std::to_string(k + 1) + " arguments");
    }
    return args[k];
  };
  if (ctor == "vac") return vac<Coeff>(to_uint(arg(0), "K"));
  if (ctor == "squeezed_vac") {
    return squeezed_vac(to_uint(arg(0), "m"), to_uint(arg(1), "d"), parse_coeff(arg(2), reals));
  }
  if (ctor == "coherent_state") {
    return coherent_state(to_uint(arg(0), "m"), to_uint(arg(1), "d"), parse_coeff(arg(2), reals));
  }
  if (ctor == "identity_state") {
    return identity_state<Coeff>(to_uint(arg(0), "nphot"), to_uint(arg(1), "K"));
  }
  if (ctor == "poly") {
    const std::string& text = arg(0);
    if (text.find("b_") != std::string::npos) return poly2matcol(text, reals, K);
    return poly2vec(text, reals, K);
  }
  throw Error(ErrorCode::ParseError, "unknown constructor '" + ctor + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symbolic Fock-space simulator for linear-optical circuits", "lofock"};
  app.require_subcommand(1);

  // state ...
  auto* state = app.add_subcommand("state", "Create, inspect and transform state files");
  state->require_subcommand(1);

  std::string ctor, in_path, out_path, to_form, show_format = "dirac";
  std::vector<std::string> ctor_args, reals, vars, binds, measures;
  unsigned modes_k = 0, cutoff = 0;

  auto* s_new = state->add_subcommand("new", "Build a state from a constructor or a polynomial");
  s_new->add_option("constructor", ctor,
                    "vac | squeezed_vac | coherent_state | identity_state | poly")
      ->required();
  s_new->add_option("args", ctor_args, "Constructor arguments");
  s_new->add_option("--reals", reals, "Variables declared real");
  s_new->add_option("--modes", modes_k, "Mode count for poly (default: inferred)");
  s_new->add_option("-o,--output", out_path, "Output state file");

  auto* s_show = state->add_subcommand("show", "Print a state file");
  s_show->add_option("file", in_path, "State file")->required();
  s_show->add_option("--format", show_format, "dirac | poly | json")
      ->check(CLI::IsMember({"dirac", "poly", "json"}));

  auto* s_convert = state->add_subcommand("convert", "Convert between vec, matcol and mat");
  s_convert->add_option("file", in_path, "State file")->required();
  s_convert->add_option("--to", to_form, "vec | matcol | mat | poly")
      ->required()
      ->check(CLI::IsMember({"vec", "matcol", "mat", "poly"}));
  s_convert->add_option("-o,--output", out_path, "Output file");

  auto* s_sort = state->add_subcommand("sort", "Sort rows into canonical mode order");
  s_sort->add_option("file", in_path, "State file")->required();
  s_sort->add_option("-o,--output", out_path, "Output state file");

  auto* s_approx = state->add_subcommand("approx", "Drop terms above a total degree");
  s_approx->add_option("file", in_path, "State file")->required();
  s_approx->add_option("--vars", vars, "Variables counted in the degree")->required();
  s_approx->add_option("-n,--cutoff", cutoff, "Maximum total degree")->required();
  s_approx->add_option("-o,--output", out_path, "Output state file");

  auto* s_eval = state->add_subcommand("eval", "Substitute numeric values");
  s_eval->add_option("file", in_path, "State file")->required();
  s_eval->add_option("--bind", binds, "name=value (complex values as a+bi)");
  s_eval->add_option("-o,--output", out_path, "Output state file");

  // circuit run
  auto* circuit = app.add_subcommand("circuit", "Run circuit documents");
  circuit->require_subcommand(1);
  std::string save_path;
  auto* c_run = circuit->add_subcommand("run", "Run a circuit and print its report");
  c_run->add_option("circuit", in_path, "Circuit file")->required();
  c_run->add_option("-o,--output", out_path, "Report file");
  c_run->add_option("--save-state", save_path, "Also save the final state");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Evaluate analyses on a state file");
  analyze->add_option("file", in_path, "State file")->required();
  analyze->add_option("--measure", measures,
                      "negativity, log_negativity, entropy, energy, trace, norm, hermitian, "
                      "normalized")
      ->required();
  analyze->add_option("--bind", binds, "name=value (complex values as a+bi)");
  analyze->add_flag("--evaluate", "Print energy, trace and norm numerically");

  // plot
  auto* plot = app.add_subcommand("plot", "Emit bar-diagram data");
  double w = 0.5, h = 1.0;
  std::string svg_path;
  plot->add_option("file", in_path, "State file")->required();
  plot->add_option("-w,--width", w, "Bar width, 0 < w <= 0.5");
  plot->add_option("-H,--height", h, "Bar height scale, h > 0");
  plot->add_option("--bind", binds, "name=value (complex values as a+bi)");
  plot->add_option("-o,--output", out_path, "CSV output file");
  plot->add_option("--svg", svg_path, "SVG output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (s_new->parsed()) {
      auto rs = reals_set(reals);
      emit({construct(ctor, ctor_args, rs, modes_k), rs}, out_path, out);
    } else if (s_show->parsed()) {
      StateDocument doc = load_state(in_path);
      if (show_format == "json") {
        out << dump_state(doc);
      } else if (show_format == "poly") {
        out << poly_of(doc.state) << "\n";
      } else {
        out << render_any(doc.state);
      }
    } else if (s_convert->parsed()) {
      StateDocument doc = load_state(in_path);
      if (to_form == "poly") {
        write_output(out_path, poly_of(doc.state) + "\n", out);
      } else {
        emit({convert(doc.state, to_form), doc.reals}, out_path, out);
      }
    } else if (s_sort->parsed()) {
      StateDocument doc = load_state(in_path);
      doc.state = std::visit(
          [](const auto& st) -> AnyState {
            using St = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<St, DenseMatrix> || std::is_same_v<St, NumDenseMatrix>) {
              return st;
            } else {
              return state_sort(st);
            }
          },
          doc.state);
      emit(doc, out_path, out);
    } else if (s_approx->parsed()) {
      StateDocument doc = load_state(in_path);
      auto v = split_list(vars);
      doc.state = std::visit(
          [&](const auto& st) -> AnyState {
            using St = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<St, DenseMatrix> || std::is_same_v<St, NumDenseMatrix>) {
              return state_approx(mat2matcol(st), v, cutoff);
            } else {
              return state_approx(st, v, cutoff);
            }
          },
          doc.state);
      emit(doc, out_path, out);
    } else if (s_eval->parsed()) {
      StateDocument doc = load_state(in_path);
      Binding env = parse_bindings(binds);
      doc.state = std::visit(
          [&](const auto& st) -> AnyState {
            if constexpr (std::is_same_v<typename std::decay_t<decltype(st)>::scalar_type,
                                         Coeff>) {
              return eval_state(st, env);
            } else {
              return st;
            }
          },
          doc.state);
      emit(doc, out_path, out);
    } else if (c_run->parsed()) {
      CircuitReport report = run_circuit_file(in_path);
      if (!save_path.empty()) save_state(save_path, report.final_state);
      write_output(out_path, report.text(), out);
    } else if (analyze->parsed()) {
      nlohmann::json request;
      request["source"] = {{"file", std::filesystem::absolute(in_path).string()}};
      bool evaluate = analyze->count("--evaluate") > 0;
      nlohmann::json analyses = nlohmann::json::array();
      for (const auto& m : split_list(measures)) {
        analyses.push_back({{"name", m}, {"evaluate", evaluate}});
      }
      request["analyses"] = analyses;
      nlohmann::json bindings = nlohmann::json::object();
      for (const auto& [k, v] : parse_bindings(binds)) {
        bindings[k] = nlohmann::json::array({v.real(), v.imag()});
      }
      request["bindings"] = bindings;
      CircuitReport report = run_circuit(request);
      for (const auto& [name, value] : report.results) out << name << ": " << value << "\n";
    } else if (plot->parsed()) {
      StateDocument doc = load_state(in_path);
      PlotTable t = plot_table(doc.state, w, h, parse_bindings(binds));
      write_output(out_path, t.csv(), out);
      if (!svg_path.empty()) write_text_file_atomic(svg_path, t.svg());
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace lofock
