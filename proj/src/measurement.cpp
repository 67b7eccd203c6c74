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

#include "lofock/measurement.hpp"

namespace lofock::detail {

std::vector<unsigned> measured_positions(const std::vector<unsigned>& modes, unsigned k,
                                         unsigned K) {
  if (modes.size() != k) {
    throw Error(ErrorCode::ModeListMismatch,
                "operator acts on " + std::to_string(k) + " modes but " +
                    std::to_string(modes.size()) + " were listed");
  }
  std::vector<unsigned> pos;
  std::vector<bool> seen(K, false);
  for (unsigned m : modes) {
    if (m < 1 || m > K) {
      throw Error(ErrorCode::ModeOutOfRange,
                  "mode " + std::to_string(m) + " outside 1.." + std::to_string(K));
    }
    if (seen[m - 1]) {
      throw Error(ErrorCode::ModeListMismatch, "mode " + std::to_string(m) + " listed twice");
    }
    seen[m - 1] = true;
    pos.push_back(m - 1);
  }
  return pos;
}

}  // namespace lofock::detail
