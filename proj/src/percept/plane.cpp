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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "eli/percept.hpp"

namespace eli::percept {

namespace {

struct Line {
  double alpha = 0.0;  // value at x = 0
  double beta = 0.0;   // slope
  bool ok = false;
};

double median_of(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

Line least_squares(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<char>& keep) {
  double n = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!keep[i]) continue;
    n += 1;
    sx += x[i];
    sy += y[i];
  }
  if (n < 2) return {};
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!keep[i]) continue;
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) return {};
  const double beta = sxy / sxx;
  return {my - beta * mx, beta, true};
}

// Line fit with iterative residual trimming; needs a majority of inliers.
Line robust_line(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  std::vector<char> keep(x.size(), 1);
  Line line;
  for (int iter = 0; iter < 12; ++iter) {
    line = least_squares(x, y, keep);
    if (!line.ok) return line;
    std::vector<double> res(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) res[i] = std::abs(y[i] - (line.alpha + line.beta * x[i]));
    const double thr = std::max(tol, 3.0 * 1.4826 * median_of(res));
    bool changed = false;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const char k = res[i] <= thr ? 1 : 0;
      changed |= k != keep[i];
      keep[i] = k;
      kept += static_cast<std::size_t>(k);
    }
    if (2 * kept <= x.size()) return {};
    if (!changed) break;
  }
  return least_squares(x, y, keep);
}

}  // namespace

PlaneFit fit_plane(const DepthFrame& depth, const PerceptConfig& cfg) {
  const int w = depth.width();
  const int h = depth.height();
  std::size_t valid = 0;
  for (float d : depth.data()) valid += d != kInvalidDepth ? 1 : 0;
  if (depth.empty() || 2 * valid < depth.size()) {
    throw PerceptError("depth frame has fewer than half valid pixels");
  }
  const int strips = std::clamp(cfg.strips, 1, w);
  const double tol = cfg.plane_tol;

  std::vector<Line> lines(static_cast<std::size_t>(strips));
  std::vector<double> centers(static_cast<std::size_t>(strips));
  std::vector<int> col0(static_cast<std::size_t>(strips) + 1);
  for (int k = 0; k <= strips; ++k) col0[static_cast<std::size_t>(k)] = k * w / strips;
  for (int k = 0; k < strips; ++k) {
    const int u0 = col0[static_cast<std::size_t>(k)];
    const int u1 = col0[static_cast<std::size_t>(k) + 1];
    centers[static_cast<std::size_t>(k)] = (u0 + u1 - 1) / 2.0;
    std::vector<double> rows;
    std::vector<double> meds;
    std::vector<double> vals;
    for (int v = 0; v < h; ++v) {
      vals.clear();
      for (int u = u0; u < u1; ++u) {
        const float d = depth.at(u, v);
        if (d != kInvalidDepth) vals.push_back(d);
      }
      if (vals.empty()) continue;
      rows.push_back(v);
      meds.push_back(median_of(vals));
    }
    if (rows.size() >= 2) lines[static_cast<std::size_t>(k)] = robust_line(rows, meds, tol);
  }

  // strips agree when they share the row slope and their offsets are linear in u
  std::vector<double> slopes;
  for (const auto& l : lines) {
    if (l.ok) slopes.push_back(l.beta);
  }
  if (2 * static_cast<int>(slopes.size()) <= strips) throw PerceptError("no compatible strip majority");
  const double slope = median_of(slopes);
  const double slope_tol = tol / std::max(1, h);
  std::vector<double> us;
  std::vector<double> alphas;
  for (int k = 0; k < strips; ++k) {
    const auto& l = lines[static_cast<std::size_t>(k)];
    if (!l.ok || std::abs(l.beta - slope) > slope_tol) continue;
    us.push_back(centers[static_cast<std::size_t>(k)]);
    alphas.push_back(l.alpha);
  }
  if (2 * static_cast<int>(us.size()) <= strips) throw PerceptError("no compatible strip majority");
  Line across;
  if (us.size() >= 2) {
    across = robust_line(us, alphas, tol);
  } else {
    across = {alphas[0], 0.0, true};
  }
  if (!across.ok) throw PerceptError("no compatible strip majority");
  std::size_t agreeing = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (std::abs(alphas[i] - (across.alpha + across.beta * us[i])) <= tol) ++agreeing;
  }
  if (2 * static_cast<int>(agreeing) <= strips) throw PerceptError("no compatible strip majority");

  PlaneModel plane{across.beta, slope, across.alpha, tol};

  // least-squares refinement over pixels close to the merged estimate
  const double cu = (w - 1) / 2.0;
  const double cv = (h - 1) / 2.0;
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const float d = depth.at(u, v);
      if (d == kInvalidDepth || std::abs(d - plane.at(u, v)) > tol) continue;
      const Eigen::Vector3d row(u - cu, v - cv, 1.0);
      ata += row * row.transpose();
      atb += row * static_cast<double>(d);
    }
  }
  const Eigen::Vector3d sol = ata.ldlt().solve(atb);
  if (sol.allFinite()) {
    plane.a = sol[0];
    plane.b = sol[1];
    plane.c = sol[2] - sol[0] * cu - sol[1] * cv;
  }

  PlaneFit fit{plane, Mask(w, h)};
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const float d = depth.at(u, v);
      if (d != kInvalidDepth && std::abs(d - plane.at(u, v)) <= tol) fit.inliers.at(u, v) = 255;
    }
  }
  return fit;
}

Mask depth_table_mask(const DepthFrame& depth, const PlaneFit& fit) {
  Mask m = fit.inliers;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (depth[i] == kInvalidDepth) m[i] = 255;
  }
  return m;
}

}  // namespace eli::percept
