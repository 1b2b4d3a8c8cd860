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

#include <Eigen/Dense>

#include "eli/armfsm.hpp"

namespace eli::arm {

namespace {

bool collinear(PointF a, PointF b, PointF c) {
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  const double scale = std::max({std::hypot(b.x - a.x, b.y - a.y), std::hypot(c.x - a.x, c.y - a.y), 1e-12});
  return std::abs(cross) <= 1e-9 * scale * scale;
}

bool any_three_collinear(const std::array<PointF, 4>& p) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      for (int k = j + 1; k < 4; ++k) {
        if (collinear(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(k)])) return true;
      }
    }
  }
  return false;
}

}  // namespace

PointF Homography::map(PointF p) const {
  const Eigen::Vector3d q = m_ * Eigen::Vector3d(p.x, p.y, 1.0);
  if (std::abs(q.z()) < 1e-12) throw ArmError("point maps to infinity");
  return {q.x() / q.z(), q.y() / q.z()};
}

Homography Homography::inverse() const { return Homography(m_.inverse()); }

Homography calibrate(const std::array<PointF, 4>& image, const std::array<PointF, 4>& table) {
  if (any_three_collinear(image) || any_three_collinear(table)) {
    throw ArmError("degenerate calibration: three points are collinear");
  }
  // Direct linear transform with h33 fixed to 1.
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double u = image[static_cast<std::size_t>(i)].x;
    const double v = image[static_cast<std::size_t>(i)].y;
    const double x = table[static_cast<std::size_t>(i)].x;
    const double y = table[static_cast<std::size_t>(i)].y;
    a.row(2 * i) << u, v, 1, 0, 0, 0, -u * x, -v * x;
    a.row(2 * i + 1) << 0, 0, 0, u, v, 1, -u * y, -v * y;
    b(2 * i) = x;
    b(2 * i + 1) = y;
  }
  const Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  if (lu.rank() < 8) throw ArmError("degenerate calibration");
  const Eigen::Matrix<double, 8, 1> h = lu.solve(b);
  Eigen::Matrix3d m;
  m << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0;
  return Homography(m);
}

PointF image_to_table(const Homography& h, PointF p) { return h.map(p); }

Homography camera_homography(const world::Camera& camera, double sheet_x, double sheet_y) {
  const std::array<PointF, 4> table{PointF{sheet_x, sheet_y}, PointF{sheet_x + 8.5, sheet_y},
                                    PointF{sheet_x + 8.5, sheet_y + 11.0},
                                    PointF{sheet_x, sheet_y + 11.0}};
  std::array<PointF, 4> image;
  for (std::size_t i = 0; i < 4; ++i) image[i] = camera.to_image(table[i].x, table[i].y);
  return calibrate(image, table);
}

}  // namespace eli::arm
