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
#include <functional>
#include <numbers>

#include "eli/armfsm.hpp"

namespace eli::arm {

namespace {

using world::ArmPose;
using world::WorldState;

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kEps = 1e-9;

double wrap180(double d) {
  d = std::fmod(d + 180.0, 360.0);
  if (d < 0) d += 360.0;
  return d - 180.0;
}

bool same_pose(const ArmPose& a, const ArmPose& b) {
  return std::abs(a.x - b.x) <= kEps && std::abs(a.y - b.y) <= kEps &&
         std::abs(a.z - b.z) <= kEps && std::abs(wrap180(a.heading - b.heading)) <= kEps &&
         std::abs(a.grip - b.grip) <= kEps;
}

using TargetFn = std::function<ArmPose(const WorldState&, const ArmContext&)>;

// Drives the arm to a pose computed when the routine first runs.
class MoveTo : public Routine {
 public:
  explicit MoveTo(TargetFn fn) : fn_(std::move(fn)) {}

  RoutineStatus step(WorldState& w, const ArmContext& ctx) override {
    if (!target_) {
      try {
        target_ = fn_(w, ctx);
      } catch (const ArmError& e) {
        return RoutineStatus::failed(e.what());
      }
    }
    if (same_pose(w.arm, *target_)) return RoutineStatus::done();
    auto r = world::apply_arm(w, world::ArmCommand{*target_}, ctx.world);
    if (r.refused) return RoutineStatus::failed(*r.refused);
    if (r.world.arm == w.arm) return RoutineStatus::failed("arm stalled");
    w = std::move(r.world);
    return same_pose(w.arm, *target_) ? RoutineStatus::done() : RoutineStatus::running();
  }

 private:
  TargetFn fn_;
  std::optional<ArmPose> target_;
};

// Fingers close until they stall on something (or meet), then ease off.
class CloseHand : public Routine {
 public:
  RoutineStatus step(WorldState& w, const ArmContext& ctx) override {
    ArmPose t = w.arm;
    if (!contact_) {
      t.grip = 0.0;
      auto r = world::apply_arm(w, world::ArmCommand{t}, ctx.world);
      if (r.refused) return RoutineStatus::failed(*r.refused);
      w = std::move(r.world);
      if (w.held) {
        contact_ = true;
        backoff_ = std::min(ctx.world.max_open, w.arm.grip + ctx.arm.widen);
        return RoutineStatus::running();
      }
      return w.arm.grip <= kEps ? RoutineStatus::done() : RoutineStatus::running();
    }
    t.grip = backoff_;
    auto r = world::apply_arm(w, world::ArmCommand{t}, ctx.world);
    if (r.refused) return RoutineStatus::failed(*r.refused);
    w = std::move(r.world);
    return std::abs(w.arm.grip - backoff_) <= kEps ? RoutineStatus::done() : RoutineStatus::running();
  }

 private:
  bool contact_ = false;
  double backoff_ = 0.0;
};

// Instant condition check.
class Check : public Routine {
 public:
  explicit Check(std::function<RoutineStatus(const WorldState&)> fn) : fn_(std::move(fn)) {}
  RoutineStatus step(WorldState& w, const ArmContext&) override { return fn_(w); }

 private:
  std::function<RoutineStatus(const WorldState&)> fn_;
};

using Factory = std::function<std::unique_ptr<Routine>()>;

// Runs child routines in order, building each one when it starts.
class Sequence : public Routine {
 public:
  explicit Sequence(std::vector<Factory> parts) : parts_(std::move(parts)) {}

  RoutineStatus step(WorldState& w, const ArmContext& ctx) override {
    while (index_ < parts_.size()) {
      if (!current_) current_ = parts_[index_]();
      const RoutineStatus s = current_->step(w, ctx);
      if (s.status != Status::kDone) return s;
      current_.reset();
      ++index_;
      if (index_ < parts_.size()) return RoutineStatus::running();
    }
    return RoutineStatus::done();
  }

 private:
  std::vector<Factory> parts_;
  std::size_t index_ = 0;
  std::unique_ptr<Routine> current_;
};

Factory move(TargetFn fn) {
  return [fn] { return std::make_unique<MoveTo>(fn); };
}

Factory close_hand() {
  return [] { return std::make_unique<CloseHand>(); };
}

Factory require_held() {
  return [] {
    return std::make_unique<Check>([](const WorldState& w) {
      return w.held ? RoutineStatus::done() : RoutineStatus::failed("nothing in the gripper");
    });
  };
}

TargetFn open_hand() {
  return [](const WorldState& w, const ArmContext& ctx) {
    ArmPose t = w.arm;
    t.grip = ctx.world.max_open;
    return t;
  };
}

TargetFn to_height(double ArmConfig::*field) {
  return [field](const WorldState& w, const ArmContext& ctx) {
    ArmPose t = w.arm;
    t.z = ctx.arm.*field;
    return t;
  };
}

TargetFn extend(double param) {
  return [param](const WorldState& w, const ArmContext& ctx) {
    ArmPose t = w.arm;
    t.x += ctx.arm.extend * param * std::cos(t.heading * kDeg);
    t.y += ctx.arm.extend * param * std::sin(t.heading * kDeg);
    return t;
  };
}

TargetFn via_of(const percept::ObjectPercept& focus) {
  return [focus](const WorldState&, const ArmContext& ctx) { return plan_grasp(focus, ctx).via; };
}

// Aim at the object from `param` standoffs in front of its base.
TargetFn table_point(const percept::ObjectPercept& focus, double param) {
  return [focus, param](const WorldState& w, const ArmContext& ctx) {
    const GraspPlan plan = plan_grasp(focus, ctx);
    ArmPose t = plan.grasp;
    const double c = std::cos(t.heading * kDeg);
    const double s = std::sin(t.heading * kDeg);
    t.x -= ctx.arm.standoff * param * c;
    t.y -= ctx.arm.standoff * param * s;
    t.grip = w.arm.grip;
    return t;
  };
}

TargetFn home() {
  return [](const WorldState&, const ArmContext& ctx) { return ctx.world.home; };
}

std::vector<Factory> deposit_parts() {
  return {move(to_height(&ArmConfig::grasp_z)), move(open_hand()), move(to_height(&ArmConfig::lift_z))};
}

std::vector<Factory> pickup_parts(const percept::ObjectPercept& focus) {
  return {move(open_hand()), move(via_of(focus)), move(table_point(focus, 0.0)), close_hand(),
          require_held(), move(to_height(&ArmConfig::lift_z))};
}

Factory seq(std::vector<Factory> parts) {
  return [parts] { return std::make_unique<Sequence>(parts); };
}

const std::vector<std::string> kKernel = {"ExtendHand", "OpenHand",   "CloseHand",  "GotoVia",
                                          "TablePoint", "TableLift",  "TableDeposit", "GotoHome"};
const std::vector<std::string> kComposite = {"GrabCycle", "GiveCycle"};
const std::vector<std::string> kIndexical = {"GotoVia", "TablePoint", "GrabCycle", "GiveCycle"};

}  // namespace

const std::vector<std::string>& routine_names() {
  static const std::vector<std::string> all = [] {
    auto v = kKernel;
    v.insert(v.end(), kComposite.begin(), kComposite.end());
    return v;
  }();
  return all;
}

bool is_routine(const std::string& name) {
  const auto& all = routine_names();
  return std::find(all.begin(), all.end(), name) != all.end();
}

bool is_indexical(const std::string& name) {
  return std::find(kIndexical.begin(), kIndexical.end(), name) != kIndexical.end();
}

std::unique_ptr<Routine> make_routine(const std::string& name, double param,
                                      const std::optional<percept::ObjectPercept>& focus) {
  if (!is_routine(name)) throw ArmError("unknown routine '" + name + "'");
  if (is_indexical(name) && !focus) throw ArmError(name + " needs a focus object");
  if (name == "ExtendHand") return std::make_unique<MoveTo>(extend(param));
  if (name == "OpenHand") return std::make_unique<MoveTo>(open_hand());
  if (name == "CloseHand") return std::make_unique<CloseHand>();
  if (name == "GotoVia") return std::make_unique<MoveTo>(via_of(*focus));
  if (name == "TablePoint") return std::make_unique<MoveTo>(table_point(*focus, param));
  if (name == "TableLift") return std::make_unique<MoveTo>(to_height(&ArmConfig::lift_z));
  if (name == "TableDeposit") return std::make_unique<Sequence>(deposit_parts());
  if (name == "GotoHome") return std::make_unique<MoveTo>(home());
  if (name == "GrabCycle") {
    auto parts = pickup_parts(*focus);
    parts.push_back(seq(deposit_parts()));
    parts.push_back(move(home()));
    return std::make_unique<Sequence>(std::move(parts));
  }
  // GiveCycle: carry the object over the handoff zone and hold it there
  auto parts = pickup_parts(*focus);
  parts.push_back(move([](const WorldState& w, const ArmContext& ctx) {
    ArmPose t = w.arm;
    t.x = ctx.arm.transfer.x;
    t.y = ctx.arm.transfer.y;
    t.z = ctx.arm.transfer.z;
    return t;
  }));
  return std::make_unique<Sequence>(std::move(parts));
}

std::unique_ptr<Routine> make_regrasp(const world::ArmPose& place) {
  std::vector<Factory> parts{move(open_hand()), move(to_height(&ArmConfig::grasp_z)), close_hand(),
                             require_held(), move(to_height(&ArmConfig::lift_z)),
                             move([place](const WorldState& w, const ArmContext& ctx) {
                               ArmPose t = place;
                               t.z = ctx.arm.lift_z;
                               t.grip = w.arm.grip;
                               return t;
                             })};
  parts.push_back(seq(deposit_parts()));
  parts.push_back(move(home()));
  return std::make_unique<Sequence>(std::move(parts));
}

RoutineStatus run_routine(Routine& r, world::WorldState& w, const ArmContext& ctx, int* ticks) {
  int n = 0;
  RoutineStatus s = RoutineStatus::running();
  while (s.status == Status::kRunning) {
    if (n >= ctx.arm.tick_budget) {
      s = RoutineStatus::failed("tick budget exhausted");
      break;
    }
    s = r.step(w, ctx);
    ++n;
    ++w.clock;
  }
  if (ticks) *ticks = n;
  return s;
}

}  // namespace eli::arm
