// Copyright 2026 The ELI Authors
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

#include <cmath>
#include <numbers>

#include "eli/percept.hpp"
#include "json.hpp"

namespace eli::percept {

namespace {

constexpr Rgb kBoxColor{170, 60, 220};
constexpr Rgb kAxisColor{40, 220, 40};
constexpr Rgb kBaseColor{255, 255, 0};

void plot(Frame& f, int x, int y, Rgb c) {
  if (f.inside(x, y)) f.at(x, y) = c;
}

void line(Frame& f, PointF a, PointF b, Rgb c) {
  const int n = static_cast<int>(std::ceil(std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)))) + 1;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    plot(f, static_cast<int>(std::lround(a.x + t * (b.x - a.x))),
         static_cast<int>(std::lround(a.y + t * (b.y - a.y))), c);
  }
}

}  // namespace

std::string report_json(const std::vector<ObjectPercept>& percepts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : percepts) {
    nlohmann::json hist = nlohmann::json::object();
    for (int k = 0; k < kNumColors; ++k) hist[color_name(k)] = p.hist[k];
    const auto& b = p.blob;
    arr.push_back({{"id", p.id},
                   {"pixel_count", b.pixel_count},
                   {"axis_deg", b.axis_deg},
                   {"base_pt", {b.base_pt.x, b.base_pt.y}},
                   {"bbox", {b.bbox.x0, b.bbox.y0, b.bbox.x1, b.bbox.y1}},
                   {"hist", hist},
                   {"dominant", p.dominant}});
  }
  return arr.dump(2);
}

Frame overlay(const Frame& frame, const std::vector<ObjectPercept>& percepts) {
  Frame out = frame;
  for (const auto& p : percepts) {
    const auto& b = p.blob;
    const BBox& r = b.bbox;
    line(out, {double(r.x0), double(r.y0)}, {double(r.x1), double(r.y0)}, kBoxColor);
    line(out, {double(r.x1), double(r.y0)}, {double(r.x1), double(r.y1)}, kBoxColor);
    line(out, {double(r.x1), double(r.y1)}, {double(r.x0), double(r.y1)}, kBoxColor);
    line(out, {double(r.x0), double(r.y1)}, {double(r.x0), double(r.y0)}, kBoxColor);
    // T mark: stem down the axis from the base point, bar across it
    const double th = b.axis_deg * std::numbers::pi / 180.0;
    const PointF up{std::cos(th), -std::sin(th)};
    const PointF across{-up.y, up.x};
    const double half = b.char_width / 2.0;
    const PointF foot{b.base_pt.x - up.x * 20.0, b.base_pt.y - up.y * 20.0};
    line(out, b.base_pt, foot, kAxisColor);
    line(out, {b.base_pt.x - across.x * half, b.base_pt.y - across.y * half},
         {b.base_pt.x + across.x * half, b.base_pt.y + across.y * half}, kAxisColor);
    const int bx = static_cast<int>(std::lround(b.base_pt.x));
    const int by = static_cast<int>(std::lround(b.base_pt.y));
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) plot(out, bx + dx, by + dy, kBaseColor);
    }
  }
  return out;
}

}  // namespace eli::percept
