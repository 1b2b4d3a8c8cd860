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

// Pointing and handoff detection from background differences.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eli/image.hpp"
#include "eli/percept.hpp"

namespace eli::gesture {

struct GestureConfig {
  int diff_threshold = 25;
  int open_kernel = 3;
  int hold_frames = 3;       // consecutive still frames that make a click
  double still_px = 3.0;
  double retreat_px = 10.0;  // pull-back from the farthest reach that makes a click
  BBox transfer_zone{40, 300, 160, 420};
  std::int64_t handoff_timeout = 600;  // frames
};

struct BackgroundModel {
  Frame snapshot;
  std::int64_t taken_at = 0;
};

Mask motion_mask(const Frame& background, const Frame& frame, const GestureConfig& cfg = {});

enum class TrackState { kIdle, kAdvancing, kClicked };

struct PointerTrack {
  struct Sample {
    std::int64_t when;
    Pixel corner;
  };
  std::vector<Sample> history;
  TrackState state = TrackState::kIdle;
  double max_dist = 0.0;
  Pixel max_corner;
  int still = 0;
};

enum class GestureKind { kPointClick, kTransferClick };

struct GestureEvent {
  GestureKind kind = GestureKind::kPointClick;
  Pixel at;
  std::int64_t when = 0;
};

struct TrackResult {
  PointerTrack track;
  std::optional<GestureEvent> event;
};

/// Advances the tracker by one frame's motion mask. An empty mask resets it.
TrackResult track_pointer(const PointerTrack& track, const Mask& mask, std::int64_t when,
                          const GestureConfig& cfg = {});

/// Distance from a point to an inclusive pixel box (0 inside).
double box_distance(PointF p, const BBox& box);

/// Percept whose bounding box is nearest the click; ties go to the smaller id.
std::optional<int> select_object(PointF click, const std::vector<percept::ObjectPercept>& percepts);

enum class HandoffPhase { kNone, kRelease, kRegrasp, kAbort };

struct HandoffMonitor {
  bool active = false;
  bool released = false;
  std::int64_t armed_at = 0;
  std::int64_t released_at = 0;
};

/// Feeds one frame's (optional) click to the handoff monitor.
HandoffPhase handoff_step(HandoffMonitor& monitor, const std::optional<GestureEvent>& click,
                          std::int64_t now, const GestureConfig& cfg = {});

/// Frames of a hand reaching toward `tip`, holding, and withdrawing.
std::vector<Frame> synth_reach(const Frame& background, PointF tip);

}  // namespace eli::gesture
