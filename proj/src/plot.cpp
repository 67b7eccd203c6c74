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

#include "lofock/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lofock/state_ops.hpp"

namespace lofock {

namespace {

constexpr double kImagTolerance = 1e-9;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Numeric {
  std::variant<NumPureState, NumDensityState> state;
};

Numeric numeric_form(const AnyState& s, const Binding& env) {
  return std::visit(
      [&](const auto& st) -> Numeric {
        using St = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<St, PureState> || std::is_same_v<St, DensityState>) {
          return {eval_state(st, env)};
        } else if constexpr (std::is_same_v<St, DenseMatrix>) {
          return {mat2matcol(eval_state(st, env))};
        } else if constexpr (std::is_same_v<St, NumDenseMatrix>) {
          return {mat2matcol(st)};
        } else {
          return {st};
        }
      },
      s);
}

}  // namespace

PlotTable plot_table(const AnyState& s, double w, double h, const Binding& env) {
  if (!(w > 0.0 && w <= 0.5)) {
    throw Error(ErrorCode::OutOfRange, "bar width must satisfy 0 < w <= 0.5");
  }
  if (!(h > 0.0)) throw Error(ErrorCode::OutOfRange, "bar height scale must be positive");
  PlotTable t;
  t.w = w;
  t.h = h;
  Numeric n = numeric_form(s, env);
  if (const auto* v = std::get_if<NumPureState>(&n.state)) {
    t.header = v->header();
    for (const auto& r : *v) {
      if (std::abs(r.coeff.imag()) > kImagTolerance) {
        throw Error(ErrorCode::ComplexCoefficient,
                    "coefficient of " + render_ket(r.ket) + " is not real");
      }
      t.bars.push_back({to_index(r.ket, v->d()), render_ket(r.ket), r.coeff.real()});
    }
    std::sort(t.bars.begin(), t.bars.end(),
              [](const PlotBar& a, const PlotBar& b) { return a.index < b.index; });
  } else {
    const auto& m = std::get<NumDensityState>(n.state);
    t.header = m.header();
    t.density = true;
    for (const auto& r : m) {
      t.entries.push_back({to_index(r.ket, m.d()), to_index(r.bra, m.d()), r.coeff.real(),
                           r.coeff.imag()});
    }
    std::sort(t.entries.begin(), t.entries.end(), [](const PlotEntry& a, const PlotEntry& b) {
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
  }
  return t;
}

std::string PlotTable::csv() const {
  std::ostringstream out;
  out << "# w=" << format_number(w) << ",h=" << format_number(h) << ",K=" << header.K
      << ",d=" << header.d << ",form=" << (density ? "matcol" : "vec") << "\n";
  if (density) {
    out << "i,j,re,im\n";
    for (const auto& e : entries) {
      out << e.i << "," << e.j << "," << format_number(e.re) << "," << format_number(e.im) << "\n";
    }
  } else {
    out << "index,label,value\n";
    for (const auto& b : bars) {
      out << b.index << "," << csv_field(b.label) << "," << format_number(b.value) << "\n";
    }
  }
  return out.str();
}

std::string PlotTable::svg() const {
  // One basis index per unit on the x axis, scaled to `unit` pixels.
  const double unit = 40.0, margin = 30.0, plot_h = 200.0;
  std::uint64_t dim = 1;
  for (unsigned k = 0; k < header.K; ++k) dim *= header.d;
  std::ostringstream out;
  if (!density) {
    double top = 0, bottom = 0;
    for (const auto& b : bars) {
      top = std::max(top, b.value * h);
      bottom = std::min(bottom, b.value * h);
    }
    double span = std::max(top - bottom, 1e-300);
    double scale = plot_h / span;
    double width = 2 * margin + unit * static_cast<double>(dim + 1);
    double height = 2 * margin + plot_h;
    double axis = margin + top * scale;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width)
        << "\" height=\"" << format_number(height) << "\">\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << format_number(axis) << "\" x2=\""
        << format_number(width - margin) << "\" y2=\"" << format_number(axis)
        << "\" stroke=\"black\"/>\n";
    for (const auto& b : bars) {
      double x = margin + unit * (static_cast<double>(b.index) - w);
      double y = b.value >= 0 ? axis - b.value * h * scale : axis;
      out << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" width=\""
          << format_number(2 * w * unit) << "\" height=\""
          << format_number(std::abs(b.value) * h * scale)
          << "\" fill=\"steelblue\"><title>" << xml_escape(b.label) << " "
          << format_number(b.value) << "</title></rect>\n";
      out << "<text x=\"" << format_number(margin + unit * static_cast<double>(b.index))
          << "\" y=\"" << format_number(height - margin / 3)
          << "\" font-size=\"10\" text-anchor=\"middle\">" << xml_escape(b.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
  }
  double peak = 0;
  for (const auto& e : entries) peak = std::max(peak, std::hypot(e.re, e.im));
  if (peak == 0) peak = 1;
  double side = 2 * margin + unit * static_cast<double>(dim);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(side)
      << "\" height=\"" << format_number(side) << "\">\n";
  for (const auto& e : entries) {
    double x = margin + unit * (static_cast<double>(e.j) - 1);
    double y = margin + unit * (static_cast<double>(e.i) - 1);
    out << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y) << "\" width=\""
        << format_number(unit) << "\" height=\"" << format_number(unit)
        << "\" fill=\"" << (e.re >= 0 ? "steelblue" : "firebrick") << "\" fill-opacity=\""
        << format_number(std::hypot(e.re, e.im) / peak) << "\"><title>(" << e.i << "," << e.j
        << ") " << format_number(e.re) << (e.im < 0 ? "" : "+") << format_number(e.im)
        << "i</title></rect>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lofock
