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

// Circuit documents: declare a source state, apply operations in order,
// then evaluate analyses on the final state.
//
//   {"reals": ["t", "r", "lambda"],
//    "source": {"constructor": "squeezed_vac", "args": [2, 5, "lambda"]},
//    "ops": [{"op": "tensor_vac", "m": 1},
//            {"op": "bs", "modes": [1, 3], "t": "t", "r": "r"},
//            {"op": "project", "modes": [3],
//             "operator": {"form": "matcol", "K": 1, "d": 2, "rows": [["1", [1], [1]]]}},
//            {"op": "traceout", "modes": [3]}],
//    "analyses": ["trace", {"name": "negativity", "bind": {"t": 0.9}}],
//    "bindings": {"lambda": 0.3, "t": 0.8, "r": 0.6}}
//
// The source is a constructor, an inline state document ("state") or a file
// path ("file", relative to the circuit file). Operations and analyses are
// described in the README.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lofock/io.hpp"
#include "lofock/symcoeff.hpp"

namespace lofock {

struct CircuitReport {
  StateDocument final_state;
  Binding bindings;
  /// (analysis name, formatted value) in the order requested.
  std::vector<std::pair<std::string, std::string>> results;
  std::vector<std::string> warnings;

  /// Deterministic key-value report text.
  std::string text() const;
};

/// Parses "0.5", "-2", "0.3+0.4i", "-0.1i" or "i" into a complex number.
Complex parse_complex(std::string_view text);
/// Binding values may be numbers, [re, im] pairs or strings for parse_complex.
Binding bindings_from_json(const nlohmann::json& j);

/// Runs a circuit; `base_dir` resolves relative "file" references.
CircuitReport run_circuit(const nlohmann::json& circuit,
                          const std::filesystem::path& base_dir = ".");
CircuitReport run_circuit_file(const std::filesystem::path& path);

}  // namespace lofock
