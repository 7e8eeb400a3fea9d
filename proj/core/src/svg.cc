// Copyright 2026 The diracsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "diracsim/svg.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "diracsim/errors.h"

namespace diracsim {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

struct Frame {
  Range xr;
  Range yr;
  double px(double x) const { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom); }
};

std::string open_svg(const PlotLabels& labels, const Frame& f) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                  num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(labels.title) + "</text>\n";
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
       num(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.xr.lo + (f.xr.hi - f.xr.lo) * i / 4.0;
    const double yv = f.yr.lo + (f.yr.hi - f.yr.lo) * i / 4.0;
    s += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(y0 + 16) + "\" text-anchor=\"middle\">" + tick(xv) +
         "</text>\n";
    s += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(f.py(yv) + 4) + "\" text-anchor=\"end\">" + tick(yv) +
         "</text>\n";
  }
  s += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 12) + "\" text-anchor=\"middle\">" +
       escape(labels.x) + "</text>\n";
  s += "<text transform=\"translate(16," + num((y0 + y1) / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(labels.y) + "</text>\n";
  return s;
}

}  // namespace

std::string line_plot(const PlotLabels& labels, const std::vector<double>& x, const std::vector<Series>& series) {
  Frame f;
  for (double v : x) f.xr.add(v);
  for (const auto& s : series) {
    if (s.y.size() != x.size()) throw InvalidInput("line_plot: series '" + s.name + "' length differs from x");
    for (double v : s.y) f.yr.add(v);
  }
  f.xr.finish();
  f.yr.finish();
  std::string svg = open_svg(labels, f);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    std::string d;
    bool pen_down = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double y = series[k].y[i];
      if (!std::isfinite(x[i]) || !std::isfinite(y)) {
        pen_down = false;
        continue;
      }
      d += (pen_down ? " L" : " M") + num(f.px(x[i])) + " " + num(f.py(y));
      pen_down = true;
    }
    svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
    const double lx = kWidth - kRight + 12.0;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" +
           num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly) + "\">" + escape(series[k].name) + "</text>\n";
  }
  return svg + "</svg>\n";
}

std::string quiver_plot(const PlotLabels& labels, const std::vector<Arrow>& arrows) {
  Frame f;
  double longest = 0.0;
  for (const Arrow& a : arrows) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.u) || !std::isfinite(a.v)) continue;
    f.xr.add(a.x);
    f.yr.add(a.y);
    longest = std::max(longest, std::hypot(a.u, a.v));
  }
  f.xr.finish();
  f.yr.finish();
  // Square data aspect so arrow directions are not distorted.
  const double span = std::max(f.xr.hi - f.xr.lo, f.yr.hi - f.yr.lo);
  const double cx = 0.5 * (f.xr.lo + f.xr.hi);
  const double cy = 0.5 * (f.yr.lo + f.yr.hi);
  const double aspect = (kWidth - kLeft - kRight) / (kHeight - kTop - kBottom);
  f.xr = {cx - 0.55 * span * aspect, cx + 0.55 * span * aspect};
  f.yr = {cy - 0.55 * span, cy + 0.55 * span};
  std::string svg = open_svg(labels, f);
  const double scale = longest > 0.0 ? 0.06 * span / longest : 0.0;
  for (const Arrow& a : arrows) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.u) || !std::isfinite(a.v)) continue;
    const double x0 = f.px(a.x);
    const double y0 = f.py(a.y);
    const double x1 = f.px(a.x + scale * a.u);
    const double y1 = f.py(a.y + scale * a.v);
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y1) +
           "\" stroke=\"" + kPalette[0] + "\" stroke-width=\"1.2\"/>\n";
    svg += "<circle cx=\"" + num(x1) + "\" cy=\"" + num(y1) + "\" r=\"1.8\" fill=\"" + kPalette[0] + "\"/>\n";
  }
  return svg + "</svg>\n";
}

}  // namespace diracsim
