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

// Hand-eye calibration, grasp geometry, the routine library and macros.
//
// Routines are small state machines advanced one tick at a time against a
// WorldState. Kernel routines move the arm directly; composite routines
// run a fixed list of other routines.

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "eli/lexmem.hpp"
#include "eli/percept.hpp"
#include "eli/worldsim.hpp"

namespace eli::arm {

class ArmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Image pixels to table inches on the table plane.
class Homography {
 public:
  Homography() : m_(Eigen::Matrix3d::Identity()) {}
  explicit Homography(const Eigen::Matrix3d& m) : m_(m) {}

  const Eigen::Matrix3d& matrix() const { return m_; }
  /// Throws ArmError when the point maps to infinity.
  PointF map(PointF p) const;
  Homography inverse() const;

 private:
  Eigen::Matrix3d m_;
};

/// Exact four-point solution. Throws ArmError if three points on either
/// side are collinear.
Homography calibrate(const std::array<PointF, 4>& image, const std::array<PointF, 4>& table);

PointF image_to_table(const Homography& h, PointF p);

/// Calibration from a letter sheet lying centred on the table, as seen by
/// the simulated camera.
Homography camera_homography(const world::Camera& camera, double sheet_x = 11.75,
                             double sheet_y = 6.5);

struct ArmConfig {
  double grasp_z = 1.5;     // inches above the table
  double standoff = 3.5;    // via point distance in front of the base
  double extend = 3.0;      // ExtendHand travel per unit parameter
  double lift_z = 4.0;
  double widen = 0.1;       // backoff after contact
  double done_tol = 0.1;
  int tick_budget = 2000;
  world::ArmPose transfer{5.0, 6.0, 4.0, 90.0, 3.0};  // over the handoff zone
};

struct ArmContext {
  world::WorldConfig world;
  ArmConfig arm;
  Homography h;
};

struct GraspPlan {
  world::ArmPose via;
  world::ArmPose grasp;
};

/// Grasp and via poses for a percept; ArmError when out of the workspace.
GraspPlan plan_grasp(const percept::ObjectPercept& p, const ArmContext& ctx);

enum class Feasibility { kOk, kTooBig, kOutOfReach };
Feasibility feasibility(const percept::ObjectPercept& p, const ArmContext& ctx);
/// Gripper-relevant width of a percept in inches.
double width_inches(const percept::ObjectPercept& p, const Homography& h);

enum class Status { kRunning, kDone, kFailed };

struct RoutineStatus {
  Status status = Status::kRunning;
  std::string reason;  // set when failed

  static RoutineStatus running() { return {}; }
  static RoutineStatus done() { return {Status::kDone, ""}; }
  static RoutineStatus failed(std::string why) { return {Status::kFailed, std::move(why)}; }
};

class Routine {
 public:
  virtual ~Routine() = default;
  /// One tick. Mutates the world only through apply_arm.
  virtual RoutineStatus step(world::WorldState& w, const ArmContext& ctx) = 0;
};

/// Kernel and composite routine names.
const std::vector<std::string>& routine_names();
bool is_routine(const std::string& name);
/// Routines that act on the focus object.
bool is_indexical(const std::string& name);

/// Builds a routine. Indexical routines need `focus`. Throws ArmError for
/// unknown names or a missing focus.
std::unique_ptr<Routine> make_routine(const std::string& name, double param,
                                      const std::optional<percept::ObjectPercept>& focus);

/// Lowers onto a released object, takes it back and puts it down at `place`.
std::unique_ptr<Routine> make_regrasp(const world::ArmPose& place);

/// Steps until done or failed, advancing the world clock once per tick.
RoutineStatus run_routine(Routine& r, world::WorldState& w, const ArmContext& ctx,
                          int* ticks = nullptr);

struct MacroRecorder {
  bool open = false;
  std::optional<std::string> pending_name;
  std::vector<lexmem::MacroStep> steps;
};

void macro_begin(MacroRecorder& rec, std::optional<std::string> name = std::nullopt);
/// Records a step; false (and nothing recorded) when no recording is open.
bool macro_append(MacroRecorder& rec, const lexmem::MacroStep& step);
/// 1 when any step needs the focus object.
int macro_arity(const std::vector<lexmem::MacroStep>& steps, const lexmem::Lexicon& lex);
/// Closes the recording and binds it. Throws ArmError when nothing was recorded.
lexmem::VerbMacro macro_finish(MacroRecorder& rec, const std::string& name,
                               const lexmem::Lexicon& lex);

/// Flattens nested macros into routine steps. Throws ArmError for unknown
/// steps or runaway nesting.
std::vector<lexmem::MacroStep> expand_macro(const lexmem::VerbMacro& macro,
                                            const lexmem::Lexicon& lex);

struct PlayResult {
  RoutineStatus status;
  std::vector<RoutineStatus> stream;  // one entry per executed step
};

PlayResult play_macro(const lexmem::VerbMacro& macro,
                      const std::optional<percept::ObjectPercept>& focus, world::WorldState& w,
                      const ArmContext& ctx, const lexmem::Lexicon& lex);

}  // namespace eli::arm
