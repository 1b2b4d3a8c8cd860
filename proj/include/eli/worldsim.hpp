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

// Synthetic tabletop: ground-truth scenes, a top-down orthographic camera
// (RGB and range), and a point-kinematics arm with a parallel gripper.
//
// Table coordinates are inches with x to the right and y pointing away from
// the robot. The camera looks straight down; image rows grow toward the robot.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eli/image.hpp"

namespace eli::world {

enum class Shape { kRect, kEllipse };

struct PaintLayer {
  Rgb color;
  double fraction = 1.0;  // share of the footprint area
};

/// One object. Paint layers are laid out in order along the long axis,
/// starting from the end the orientation vector points to.
struct ObjSpec {
  std::string id;
  Shape shape = Shape::kRect;
  double cx = 0.0;
  double cy = 0.0;
  double long_in = 1.0;
  double short_in = 1.0;
  double deg = 0.0;  // long-axis angle, counterclockwise from +x
  double height = 1.0;
  std::vector<PaintLayer> paint;

  /// Point (table inches) inside the footprint?
  bool covers(double x, double y) const;
  /// Axis-parallel footprint bounds in table inches: {xmin, ymin, xmax, ymax}.
  std::array<double, 4> bounds() const;
  /// Gripper-relevant width.
  double width() const { return short_in; }
};

struct SceneSpec {
  Rgb table_color{150, 120, 80};
  double table_w = 32.0;
  double table_h = 24.0;
  std::vector<ObjSpec> objects;

  const ObjSpec* find(const std::string& id) const;
  ObjSpec* find(const std::string& id);
};

/// Parses the line-oriented scene format:
///   table <r> <g> <b> <w_in> <h_in>
///   obj <id> <rect|ellipse> <cx> <cy> <long> <short> <deg> <height> <r,g,b:frac>[;...]
/// Throws LoadError naming the line for malformed input or invariant breaks.
SceneSpec load_scene(const std::string& text);
SceneSpec load_scene_file(const std::string& path);
std::string save_scene(const SceneSpec& scene);

/// Checks SceneSpec/ObjSpec invariants; throws LoadError (line 0) on failure.
void validate_scene(const SceneSpec& scene);

struct ArmPose {
  double x = 16.0;
  double y = -4.0;
  double z = 6.0;
  double heading = 90.0;  // degrees in the table plane
  double grip = 3.0;      // finger opening, inches

  friend bool operator==(const ArmPose&, const ArmPose&) = default;
};

struct Workspace {
  double xmin = 0.0, xmax = 32.0;
  double ymin = -6.0, ymax = 20.0;
  double zmin = 0.0, zmax = 12.0;

  bool contains(double x, double y, double z) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax && z >= zmin && z <= zmax;
  }
};

/// Orthographic top-down camera centred on the table.
struct Camera {
  int width = 640;
  int height = 480;
  double in_per_px = 0.05;
  double center_x = 16.0;  // table point under the image centre
  double center_y = 12.0;

  /// Table inches to image pixel coordinates (pixel centres are integral).
  PointF to_image(double x, double y) const;
  /// Image pixel coordinates to table inches.
  PointF to_table(double u, double v) const;
};

struct DepthModel {
  double range_at_bottom = 800.0;  // table range on the last image row
  double per_row = 0.5;            // range added per row toward the top
  double per_col = 0.0;
  double units_per_inch = 10.0;    // protrusion scale
  double noise = 0.3;              // uniform +/- bound on table pixels
};

struct WorldConfig {
  Camera camera;
  Workspace workspace;
  ArmPose home;
  double max_open = 3.0;        // gripper capacity, inches
  double step_in = 0.5;         // translation per tick
  double grip_step = 0.25;      // finger travel per tick
  double heading_step = 15.0;   // degrees per tick
  double grasp_tol = 0.5;       // hand-to-footprint slack for a grasp
  double release_margin = 0.25; // opening beyond width that drops the object
  double noise_sigma = 2.0;
  Rgb floor_color{60, 60, 60};
  DepthModel depth;
};

/// Rigid link between the hand and a held object.
struct Attachment {
  std::string id;
  double along = 0.0;   // object centre in the hand frame (inches)
  double across = 0.0;
  double rel_deg = 0.0; // object axis minus hand heading
  double grasp_z = 0.0; // hand height at the moment of grasp
};

struct WorldState {
  SceneSpec scene;
  ArmPose arm;
  std::optional<Attachment> held;
  std::int64_t clock = 0;  // frame counter

  std::optional<std::string> held_id() const {
    return held ? std::optional<std::string>(held->id) : std::nullopt;
  }
  /// Height of the held object's bottom above the table (0 when resting).
  double lift_of(const std::string& id) const;
};

WorldState make_world(SceneSpec scene, const WorldConfig& config);

/// Camera for a scene: configured resolution and scale, centred on the table.
Camera camera_for(const SceneSpec& scene, const WorldConfig& config);

/// Renders the RGB view. Noise is per-channel Gaussian (config.noise_sigma)
/// drawn from `seed`; sigma 0 gives an exact render.
Frame render_rgb(const WorldState& world, const WorldConfig& config, std::uint64_t seed);

/// Renders the range view. `speckle_rate` of the pixels (rounded to the
/// nearest count) are set to kInvalidDepth.
DepthFrame render_depth(const WorldState& world, const WorldConfig& config, std::uint64_t seed,
                        double speckle_rate = 0.0, bool noisy = true);

/// Depth of the bare table plane at a pixel.
double table_depth(const DepthModel& model, const Camera& camera, double u, double v);

struct ArmCommand {
  ArmPose target;
};

struct ArmResult {
  WorldState world;
  std::optional<std::string> refused;  // diagnostic when the motion was refused
};

/// Advances the arm one tick toward `command.target`. Closing the fingers
/// around an object that fits picks it up; opening past its width drops it.
ArmResult apply_arm(const WorldState& world, const ArmCommand& command,
                    const WorldConfig& config);

/// Paints the skin-toned hand wedge reaching from the lower-left image
/// corner toward `tip`, scaled by `reach` in [0, 1].
Frame inject_hand(const Frame& frame, PointF tip, double reach);

inline constexpr Rgb kHandColor{205, 170, 140};

struct SceneGenParams {
  int min_objects = 1;
  int max_objects = 5;
  double min_short = 0.8;
  double max_short = 2.4;
  double min_aspect = 1.6;
  double max_aspect = 3.0;
  double margin = 1.0;   // keep-out from the table edge
  double gap = 0.6;      // clearance between footprints
  double two_tone_rate = 0.3;
};

/// Palette of single paints the perception pipeline is expected to name.
struct NamedPaint {
  const char* name;
  Rgb color;
};
const std::vector<NamedPaint>& test_palette();

/// Random non-overlapping scene; orientations avoid the near-horizontal
/// band where "lowest end of the axis" is undefined for a top-down view.
SceneSpec random_scene(std::mt19937_64& rng, const SceneGenParams& params = {});

}  // namespace eli::world
