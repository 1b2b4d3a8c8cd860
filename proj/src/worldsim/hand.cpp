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

#include <algorithm>
#include <cmath>

#include "eli/worldsim.hpp"

namespace eli::world {

namespace {

constexpr double kBaseHalfWidth = 30.0;  // pixels, at the entry corner
constexpr double kTipRadius = 3.0;       // blunt fingertip, survives a 3x3 opening

double cross(PointF a, PointF b, PointF p) {
  return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

}  // namespace

Frame inject_hand(const Frame& frame, PointF tip, double reach) {
  Frame out = frame;
  reach = std::clamp(reach, 0.0, 1.0);
  if (reach <= 0.0 || frame.empty()) return out;
  const PointF corner{0.0, static_cast<double>(frame.height() - 1)};
  const PointF apex{corner.x + reach * (tip.x - corner.x), corner.y + reach * (tip.y - corner.y)};
  const double dx = apex.x - corner.x;
  const double dy = apex.y - corner.y;
  const double len = std::hypot(dx, dy);
  if (len < 1e-9) return out;
  const PointF side{-dy / len * kBaseHalfWidth, dx / len * kBaseHalfWidth};
  const PointF a{corner.x + side.x, corner.y + side.y};
  const PointF b{corner.x - side.x, corner.y - side.y};

  const int u0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, apex.x}))));
  const int u1 = std::min(frame.width() - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, apex.x}))));
  const int v0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, apex.y}))));
  const int v1 = std::min(frame.height() - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, apex.y}))));
  const double orient = cross(a, b, apex);
  for (int v = v0; v <= v1; ++v) {
    for (int u = u0; u <= u1; ++u) {
      const PointF p{static_cast<double>(u), static_cast<double>(v)};
      const double c0 = cross(a, b, p);
      const double c1 = cross(b, apex, p);
      const double c2 = cross(apex, a, p);
      const bool inside = orient > 0 ? (c0 >= 0 && c1 >= 0 && c2 >= 0)
                                     : (c0 <= 0 && c1 <= 0 && c2 <= 0);
      if (inside) out.at(u, v) = kHandColor;
    }
  }
  // fingertip disc whose far edge is the apex
  const PointF tipc{apex.x - dx / len * kTipRadius, apex.y - dy / len * kTipRadius};
  for (int v = static_cast<int>(std::floor(tipc.y - kTipRadius));
       v <= static_cast<int>(std::ceil(tipc.y + kTipRadius)); ++v) {
    for (int u = static_cast<int>(std::floor(tipc.x - kTipRadius));
         u <= static_cast<int>(std::ceil(tipc.x + kTipRadius)); ++u) {
      if (!out.inside(u, v)) continue;
      if (std::hypot(u - tipc.x, v - tipc.y) <= kTipRadius) out.at(u, v) = kHandColor;
    }
  }
  return out;
}

}  // namespace eli::world
