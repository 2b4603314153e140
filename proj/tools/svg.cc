// Copyright 2026 The dqlab Authors.
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

#include "svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace dqlab_cli {
namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 150, kTop = 40, kBottom = 50;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
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
    if (lo > hi) lo = 0, hi = 1;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
};

std::string header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) +
         "\" height=\"" + fixed(kHeight) + "\" font-family=\"sans-serif\" " +
         "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" " +
         "fill=\"white\"/>\n<text x=\"" + fixed(kWidth / 2) +
         "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(title) + "</text>\n";
}

std::string frame(const Range& y, double y0, double y1) {
  const double x0 = kLeft, x1 = kWidth - kRight;
  std::string s = "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y1) +
                  "\" width=\"" + fixed(x1 - x0) + "\" height=\"" +
                  fixed(y0 - y1) + "\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<text x=\"" + fixed(x0 - 5) + "\" y=\"" + fixed(y0) +
       "\" text-anchor=\"end\">" + label(y.lo) + "</text>\n";
  s += "<text x=\"" + fixed(x0 - 5) + "\" y=\"" + fixed(y1 + 10) +
       "\" text-anchor=\"end\">" + label(y.hi) + "</text>\n";
  return s;
}

std::string legend(const std::vector<Series>& series) {
  std::string s;
  double y = kTop + 10;
  for (const auto& ser : series) {
    const double x = kWidth - kRight + 10;
    s += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y - 9) +
         "\" width=\"12\" height=\"10\" fill=\"" + ser.color + "\"/>\n";
    s += "<text x=\"" + fixed(x + 16) + "\" y=\"" + fixed(y) + "\">" +
         escape(ser.label) + "</text>\n";
    y += 18;
  }
  return s;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::vector<Series>& series) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();
  const double x0 = kLeft, x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom, y1 = kTop;
  auto px = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
  auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

  std::string out = header(title) + frame(yr, y0, y1);
  out += "<text x=\"" + fixed(x0) + "\" y=\"" + fixed(y0 + 16) + "\">" +
         label(xr.lo) + "</text>\n";
  out += "<text x=\"" + fixed(x1) + "\" y=\"" + fixed(y0 + 16) +
         "\" text-anchor=\"end\">" + label(xr.hi) + "</text>\n";
  out += "<text x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed(y0 + 34) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  if (yr.lo < 0 && yr.hi > 0) {
    out += "<line x1=\"" + fixed(x0) + "\" x2=\"" + fixed(x1) + "\" y1=\"" +
           fixed(py(0)) + "\" y2=\"" + fixed(py(0)) +
           "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& s : series) {
    std::string points;
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      points += fixed(px(s.x[i])) + "," + fixed(py(s.y[i])) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }
  return out + legend(series) + "</svg>\n";
}

std::string svg_bar_chart(const std::string& title,
                          const std::vector<std::string>& categories,
                          const std::vector<Series>& series) {
  Range yr;
  yr.add(0.0);
  for (const auto& s : series) {
    for (double v : s.y) yr.add(v);
  }
  yr.finish();
  const double x0 = kLeft, x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom, y1 = kTop;
  auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

  std::string out = header(title) + frame(yr, y0, y1);
  const double group = (x1 - x0) / std::max<std::size_t>(categories.size(), 1);
  const double bar = 0.8 * group / std::max<std::size_t>(series.size(), 1);
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = x0 + c * group + 0.1 * group;
    for (std::size_t k = 0; k < series.size(); ++k) {
      if (c >= series[k].y.size() || !std::isfinite(series[k].y[c])) continue;
      const double top = py(std::max(series[k].y[c], 0.0));
      const double bottom = py(std::min(series[k].y[c], 0.0));
      out += "<rect x=\"" + fixed(gx + k * bar) + "\" y=\"" + fixed(top) +
             "\" width=\"" + fixed(bar) + "\" height=\"" +
             fixed(bottom - top) + "\" fill=\"" + series[k].color + "\"/>\n";
    }
    out += "<text x=\"" + fixed(gx + 0.4 * group) + "\" y=\"" +
           fixed(y0 + 16) + "\" text-anchor=\"middle\">" +
           escape(categories[c]) + "</text>\n";
  }
  return out + legend(series) + "</svg>\n";
}

}  // namespace dqlab_cli
