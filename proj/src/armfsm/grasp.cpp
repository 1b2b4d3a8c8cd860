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

#include "eli/armfsm.hpp"

namespace eli::arm {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// Unit image vector along the blob axis; image rows grow downward.
PointF axis_vector(double axis_deg) {
  return {std::cos(axis_deg * kDeg), -std::sin(axis_deg * kDeg)};
}

}  // namespace

GraspPlan plan_grasp(const percept::ObjectPercept& p, const ArmContext& ctx) {
  const PointF base_img = p.blob.base_pt;
  const PointF e = axis_vector(p.blob.axis_deg);
  const PointF base = ctx.h.map(base_img);
  const PointF ahead = ctx.h.map({base_img.x + e.x, base_img.y + e.y});
  const double heading = std::atan2(ahead.y - base.y, ahead.x - base.x) / kDeg;
  const double c = std::cos(heading * kDeg);
  const double s = std::sin(heading * kDeg);

  GraspPlan plan;
  plan.grasp = world::ArmPose{base.x, base.y, ctx.arm.grasp_z, heading, ctx.world.max_open};
  plan.via = plan.grasp;
  plan.via.x -= ctx.arm.standoff * c;
  plan.via.y -= ctx.arm.standoff * s;
  const auto& ws = ctx.world.workspace;
  if (!ws.contains(plan.grasp.x, plan.grasp.y, plan.grasp.z) ||
      !ws.contains(plan.via.x, plan.via.y, plan.via.z)) {
    throw ArmError("object is out of reach");
  }
  return plan;
}

double width_inches(const percept::ObjectPercept& p, const Homography& h) {
  const PointF e = axis_vector(p.blob.axis_deg);
  const PointF n{-e.y, e.x};
  const double half = p.blob.extent_across / 2.0;
  const PointF c = p.blob.centroid;
  const PointF a = h.map({c.x - n.x * half, c.y - n.y * half});
  const PointF b = h.map({c.x + n.x * half, c.y + n.y * half});
  return std::hypot(b.x - a.x, b.y - a.y);
}

Feasibility feasibility(const percept::ObjectPercept& p, const ArmContext& ctx) {
  if (width_inches(p, ctx.h) > ctx.world.max_open) return Feasibility::kTooBig;
  try {
    plan_grasp(p, ctx);
  } catch (const ArmError&) {
    return Feasibility::kOutOfReach;
  }
  return Feasibility::kOk;
}

}  // namespace eli::arm
