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

// JSON state documents:
//   {"form": "vec" | "matcol" | "mat", "K": 3, "d": 5, "reals": ["t", "r"],
//    "rows": [["sqrt(2)*lambda^2*t*r", [1, 2, 1]], ...]}
// matcol rows carry a bra list as a third element. mat documents hold
// "row_labels", "col_labels" and a row-major "entries" array of arrays.
// Evaluated states set "numeric": true and write coefficients as [re, im].

#include <filesystem>
#include <set>
#include <string>
#include <variant>

#include "json.hpp"
#include "lofock/state.hpp"

namespace lofock {

using AnyState =
    std::variant<PureState, DensityState, DenseMatrix, NumPureState, NumDensityState,
                 NumDenseMatrix>;

struct StateDocument {
  AnyState state;
  std::set<std::string> reals;
};

/// "vec", "matcol" or "mat".
std::string form_name(const AnyState& s);
bool is_numeric(const AnyState& s);

/// Names of real-declared variables that occur in the state.
std::set<std::string> real_variables(const AnyState& s);

StateDocument state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const StateDocument& doc);

/// Parses JSON text; syntax errors become ParseError with line and column.
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory, then renames.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& text);

StateDocument load_state(const std::filesystem::path& path);
void save_state(const std::filesystem::path& path, const StateDocument& doc);
std::string dump_state(const StateDocument& doc);

}  // namespace lofock
