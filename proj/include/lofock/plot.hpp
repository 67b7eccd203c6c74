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

// Plot data for bar diagrams of states. Kets are placed at their basis index
// (1 .. d^K); the bar geometry (w, h) is recorded for the consumer.

#include <cstdint>
#include <string>
#include <vector>

#include "lofock/io.hpp"
#include "lofock/symcoeff.hpp"

namespace lofock {

struct PlotBar {
  std::uint64_t index = 0;
  std::string label;
  double value = 0;
};

struct PlotEntry {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  double re = 0;
  double im = 0;
};

struct PlotTable {
  double w = 0.5;
  double h = 1.0;
  StateHeader header;
  bool density = false;
  std::vector<PlotBar> bars;       // pure states, by index
  std::vector<PlotEntry> entries;  // density states, by (i, j)

  /// CSV text with a leading "# w=...,h=...,K=...,d=...,form=..." line.
  std::string csv() const;
  /// Self-contained SVG: bars for pure states, a magnitude grid for density.
  std::string svg() const;
};

/// Requires 0 < w <= 0.5 and h > 0. Symbolic states are evaluated under env.
/// Pure-state bars use real parts; any |Im| > 1e-9 is a ComplexCoefficient.
PlotTable plot_table(const AnyState& s, double w, double h, const Binding& env = {});

}  // namespace lofock
