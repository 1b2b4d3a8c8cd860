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
#include <sstream>

#include "eli/worldsim.hpp"

namespace eli::world {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double wrap180(double d) {
  d = std::fmod(d + 180.0, 360.0);
  if (d < 0) d += 360.0;
  return d - 180.0;
}

double step_toward(double from, double to, double step) {
  if (std::abs(to - from) <= step) return to;
  return from + (to > from ? step : -step);
}

// Footprint grown by `slack` inches on every side.
bool near_footprint(const ObjSpec& o, double x, double y, double slack) {
  const double c = std::cos(o.deg * kDeg);
  const double s = std::sin(o.deg * kDeg);
  const double along = (x - o.cx) * c + (y - o.cy) * s;
  const double across = -(x - o.cx) * s + (y - o.cy) * c;
  const double a = o.long_in / 2.0 + slack;
  const double b = o.short_in / 2.0 + slack;
  if (o.shape == Shape::kRect) return std::abs(along) <= a && std::abs(across) <= b;
  return (along * along) / (a * a) + (across * across) / (b * b) <= 1.0;
}

void carry(ObjSpec& o, const Attachment& att, const ArmPose& arm) {
  const double c = std::cos(arm.heading * kDeg);
  const double s = std::sin(arm.heading * kDeg);
  o.cx = arm.x + att.along * c - att.across * s;
  o.cy = arm.y + att.along * s + att.across * c;
  o.deg = arm.heading + att.rel_deg;
}

std::string describe(const ArmPose& p) {
  std::ostringstream out;
  out << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return out.str();
}

}  // namespace

ArmResult apply_arm(const WorldState& world, const ArmCommand& command,
                    const WorldConfig& config) {
  const ArmPose& t = command.target;
  if (!config.workspace.contains(t.x, t.y, t.z)) {
    return {world, "target " + describe(t) + " lies outside the workspace"};
  }
  if (t.grip < 0.0 || t.grip > config.max_open) {
    return {world, "grip opening outside [0, max_open]"};
  }

  WorldState next = world;
  ArmPose& arm = next.arm;
  const double dx = t.x - arm.x;
  const double dy = t.y - arm.y;
  const double dz = t.z - arm.z;
  const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (dist <= config.step_in) {
    arm.x = t.x;
    arm.y = t.y;
    arm.z = t.z;
  } else {
    const double k = config.step_in / dist;
    arm.x += dx * k;
    arm.y += dy * k;
    arm.z += dz * k;
  }
  const double turn = wrap180(t.heading - arm.heading);
  if (std::abs(turn) <= config.heading_step) {
    arm.heading = t.heading;
  } else {
    arm.heading += turn > 0 ? config.heading_step : -config.heading_step;
  }
  const double old_grip = arm.grip;
  double grip = step_toward(old_grip, t.grip, config.grip_step);

  if (next.held) {
    ObjSpec* o = next.scene.find(next.held->id);
    arm.z = std::max(arm.z, next.held->grasp_z);
    if (grip < o->width()) grip = o->width();  // fingers stall on the object
    arm.grip = grip;
    ObjSpec moved = *o;
    carry(moved, *next.held, arm);
    const auto b = moved.bounds();
    if (b[0] < 0 || b[1] < 0 || b[2] > next.scene.table_w || b[3] > next.scene.table_h) {
      return {world, "held object would leave the table"};
    }
    *o = moved;
    // opening past the width drops the object where it was carried
    if (grip > o->width() + config.release_margin) next.held.reset();
    return {std::move(next), std::nullopt};
  }

  arm.grip = grip;
  if (grip < old_grip) {
    for (const auto& o : next.scene.objects) {
      if (o.width() > config.max_open || o.width() > old_grip) continue;
      if (grip > o.width()) continue;
      if (arm.z > o.height + config.grasp_tol) continue;
      if (!near_footprint(o, arm.x, arm.y, config.grasp_tol)) continue;
      arm.grip = o.width();
      const double c = std::cos(arm.heading * kDeg);
      const double s = std::sin(arm.heading * kDeg);
      const double ox = o.cx - arm.x;
      const double oy = o.cy - arm.y;
      next.held = Attachment{o.id, ox * c + oy * s, -ox * s + oy * c, o.deg - arm.heading, arm.z};
      break;
    }
  }
  return {std::move(next), std::nullopt};
}

}  // namespace eli::world
