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
#include <numbers>
#include <numeric>

#include "eli/worldsim.hpp"

namespace eli::world {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Fraction of an ellipse's area lying beyond the chord at normalized
// position s in [-1, 1] along the major axis.
double cap_fraction(double s) {
  s = std::clamp(s, -1.0, 1.0);
  return (std::acos(s) - s * std::sqrt(1.0 - s * s)) / std::numbers::pi;
}

// Normalized along-axis cut positions (1 = the +axis tip) where each
// layer ends, so that layer areas match the requested fractions.
std::vector<double> layer_cuts(const ObjSpec& o) {
  std::vector<double> cuts;
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < o.paint.size(); ++i) {
    cum += o.paint[i].fraction;
    if (o.shape == Shape::kRect) {
      cuts.push_back(1.0 - 2.0 * cum);
      continue;
    }
    double lo = -1.0;
    double hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (cap_fraction(mid) > cum) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    cuts.push_back(0.5 * (lo + hi));
  }
  return cuts;
}

struct Painter {
  const ObjSpec* obj;
  std::vector<double> cuts;
  double c;
  double s;
};

// Objects in paint order: resting ones first, the held one last.
std::vector<Painter> painters(const WorldState& world) {
  std::vector<Painter> out;
  const auto held = world.held_id();
  for (const auto& o : world.scene.objects) {
    if (held && *held == o.id) continue;
    out.push_back({&o, layer_cuts(o), std::cos(o.deg * kDeg), std::sin(o.deg * kDeg)});
  }
  if (held) {
    if (const auto* o = world.scene.find(*held)) {
      out.push_back({o, layer_cuts(*o), std::cos(o->deg * kDeg), std::sin(o->deg * kDeg)});
    }
  }
  return out;
}

// Topmost object covering the point, with the paint layer index.
const Painter* hit(const std::vector<Painter>& ps, double x, double y, std::size_t* layer) {
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const auto& o = *it->obj;
    if (!o.covers(x, y)) continue;
    const double along = ((x - o.cx) * it->c + (y - o.cy) * it->s) / (o.long_in / 2.0);
    std::size_t k = 0;
    while (k < it->cuts.size() && along < it->cuts[k]) ++k;
    *layer = k;
    return &*it;
  }
  return nullptr;
}

std::uint8_t to_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

PointF Camera::to_image(double x, double y) const {
  return {(x - center_x) / in_per_px + (width - 1) / 2.0,
          (height - 1) / 2.0 - (y - center_y) / in_per_px};
}

PointF Camera::to_table(double u, double v) const {
  return {center_x + (u - (width - 1) / 2.0) * in_per_px,
          center_y + ((height - 1) / 2.0 - v) * in_per_px};
}

Camera camera_for(const SceneSpec& scene, const WorldConfig& config) {
  Camera cam = config.camera;
  cam.center_x = scene.table_w / 2.0;
  cam.center_y = scene.table_h / 2.0;
  return cam;
}

WorldState make_world(SceneSpec scene, const WorldConfig& config) {
  validate_scene(scene);
  WorldState w;
  w.scene = std::move(scene);
  w.arm = config.home;
  return w;
}

double WorldState::lift_of(const std::string& id) const {
  if (!held || held->id != id) return 0.0;
  return std::max(0.0, arm.z - held->grasp_z);
}

Frame render_rgb(const WorldState& world, const WorldConfig& config, std::uint64_t seed) {
  const Camera cam = camera_for(world.scene, config);
  Frame frame(cam.width, cam.height);
  const auto ps = painters(world);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, config.noise_sigma);
  const bool noisy = config.noise_sigma > 0.0;
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const PointF p = cam.to_table(u, v);
      Rgb base = config.floor_color;
      std::size_t layer = 0;
      if (const auto* h = hit(ps, p.x, p.y, &layer)) {
        base = h->obj->paint[layer].color;
      } else if (p.x >= 0 && p.y >= 0 && p.x <= world.scene.table_w &&
                 p.y <= world.scene.table_h) {
        base = world.scene.table_color;
      }
      if (!noisy) {
        frame.at(u, v) = base;
        continue;
      }
      const double r = base.r + noise(rng);
      const double g = base.g + noise(rng);
      const double b = base.b + noise(rng);
      frame.at(u, v) = Rgb{to_channel(r), to_channel(g), to_channel(b)};
    }
  }
  return frame;
}

double table_depth(const DepthModel& model, const Camera& camera, double u, double v) {
  return model.range_at_bottom + model.per_row * ((camera.height - 1) - v) + model.per_col * u;
}

DepthFrame render_depth(const WorldState& world, const WorldConfig& config, std::uint64_t seed,
                        double speckle_rate, bool noisy) {
  const Camera cam = camera_for(world.scene, config);
  const DepthModel& m = config.depth;
  DepthFrame depth(cam.width, cam.height);
  const auto ps = painters(world);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-m.noise, m.noise);
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const PointF p = cam.to_table(u, v);
      double d = table_depth(m, cam, u, v);
      std::size_t layer = 0;
      if (const auto* h = hit(ps, p.x, p.y, &layer)) {
        const double top = h->obj->height + world.lift_of(h->obj->id);
        d -= top * m.units_per_inch;
      }
      if (noisy) d += jitter(rng);
      depth.at(u, v) = static_cast<float>(d);
    }
  }
  const auto n = depth.size();
  const auto dropouts = static_cast<std::size_t>(std::llround(std::clamp(speckle_rate, 0.0, 1.0) * n));
  if (dropouts > 0) {
    // partial Fisher-Yates: the first `dropouts` entries are a uniform sample
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < dropouts; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(idx[i], idx[pick(rng)]);
      depth[idx[i]] = kInvalidDepth;
    }
  }
  return depth;
}

}  // namespace eli::world
