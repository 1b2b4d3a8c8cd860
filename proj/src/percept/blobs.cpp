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
#include <map>
#include <numbers>

#include "eli/percept.hpp"

namespace eli::percept {

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

PointF centroid_of(const std::vector<Pixel>& pixels) {
  double sx = 0, sy = 0;
  for (const auto& p : pixels) {
    sx += p.x;
    sy += p.y;
  }
  const double n = std::max<std::size_t>(1, pixels.size());
  return {sx / n, sy / n};
}

}  // namespace

Mask ObjectBlob::mask(int width, int height) const {
  Mask m(width, height);
  for (const auto& p : pixels) {
    if (m.inside(p.x, p.y)) m.at(p.x, p.y) = 255;
  }
  return m;
}

double axis_angle(const std::vector<Pixel>& pixels) {
  const PointF c = centroid_of(pixels);
  double m20 = 0, m02 = 0, m11 = 0;
  for (const auto& p : pixels) {
    const double dx = p.x - c.x;
    const double dy = p.y - c.y;
    m20 += dx * dx;
    m02 += dy * dy;
    m11 += dx * dy;
  }
  // no preferred direction (discs, squares): stand it upright
  if (std::hypot(m20 - m02, 2.0 * m11) <= 1e-6 * (m20 + m02)) return 90.0;
  // image angle of the major axis (v grows downward), then flip to table sense
  const double img = 0.5 * std::atan2(2.0 * m11, m20 - m02) * kDeg;
  double deg = std::fmod(-img, 180.0);
  if (deg < 0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  return deg;
}

void measure_blob(ObjectBlob& blob) {
  blob.pixel_count = blob.pixels.size();
  blob.bbox = BBox{};
  for (const auto& p : blob.pixels) blob.bbox.extend(p.x, p.y);
  blob.centroid = centroid_of(blob.pixels);
  blob.axis_deg = axis_angle(blob.pixels);

  // unit vector pointing up the axis in image coordinates
  const double th = blob.axis_deg / kDeg;
  const double ex = std::cos(th);
  const double ey = -std::sin(th);
  std::map<long, double> widths;  // axial bin -> pixels across
  double tmin = 1e300, tmax = -1e300, smin = 1e300, smax = -1e300;
  for (const auto& p : blob.pixels) {
    const double dx = p.x - blob.centroid.x;
    const double dy = p.y - blob.centroid.y;
    const double t = dx * ex + dy * ey;
    const double s = -dx * ey + dy * ex;
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    widths[std::lround(t)] += 1.0;
  }
  if (blob.pixels.empty()) return;
  blob.extent_along = tmax - tmin + 1.0;
  blob.extent_across = smax - smin + 1.0;

  const double cut = tmin + 0.25 * (tmax - tmin);
  std::vector<double> low;
  for (const auto& [t, wdt] : widths) {
    if (t <= cut + 0.5) low.push_back(wdt);
  }
  if (low.empty()) low.push_back(1.0);
  std::sort(low.begin(), low.end());
  const std::size_t n = low.size();
  blob.char_width = n % 2 ? low[n / 2] : 0.5 * (low[n / 2 - 1] + low[n / 2]);

  // pixel centres sit half a pixel inside the blob boundary
  double up = tmin - 0.5 + 0.5 * blob.char_width;
  up = std::min(up, 0.0);
  blob.base_pt = {blob.centroid.x + ex * up, blob.centroid.y + ey * up};
}

PointF base_point(const ObjectBlob& blob) {
  ObjectBlob copy = blob;
  measure_blob(copy);
  return copy.base_pt;
}

std::vector<ObjectBlob> extract_objects(const Mask& table, const PerceptConfig& cfg) {
  // close first: table speckle is black-on-white and must not seed erosion
  const Mask smooth = open(close(table, cfg.morph_kernel), cfg.morph_kernel);
  const Components white = label_components(smooth, false);
  if (white.count() == 0) throw PerceptError("no table component");
  int best = 1;
  for (int k = 2; k <= white.count(); ++k) {
    if (white.areas[static_cast<std::size_t>(k)] > white.areas[static_cast<std::size_t>(best)]) best = k;
  }
  Mask holes(table.width(), table.height());
  for (std::size_t i = 0; i < holes.size(); ++i) holes[i] = white.labels[i] == best ? 0 : 255;
  const Components dark = label_components(holes, true);

  std::vector<std::vector<Pixel>> groups(static_cast<std::size_t>(dark.count()) + 1);
  std::vector<char> touches(groups.size(), 0);
  for (int y = 0; y < holes.height(); ++y) {
    for (int x = 0; x < holes.width(); ++x) {
      const int l = dark.labels.at(x, y);
      if (l == 0) continue;
      groups[static_cast<std::size_t>(l)].push_back({x, y});
      if (x == 0 || y == 0 || x == holes.width() - 1 || y == holes.height() - 1) {
        touches[static_cast<std::size_t>(l)] = 1;
      }
    }
  }
  std::vector<ObjectBlob> blobs;
  for (std::size_t l = 1; l < groups.size(); ++l) {
    if (touches[l] || groups[l].size() < static_cast<std::size_t>(cfg.min_area)) continue;
    ObjectBlob b;
    b.pixels = std::move(groups[l]);
    measure_blob(b);
    blobs.push_back(std::move(b));
  }
  return blobs;
}

}  // namespace eli::percept
