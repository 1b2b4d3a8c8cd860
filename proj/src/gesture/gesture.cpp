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

#include "eli/gesture.hpp"

#include <cmath>
#include <cstdlib>

#include "eli/worldsim.hpp"

namespace eli::gesture {

Mask motion_mask(const Frame& background, const Frame& frame, const GestureConfig& cfg) {
  Mask m(frame.width(), frame.height());
  if (!same_shape(background, frame)) return m;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Rgb a = background[i];
    const Rgb b = frame[i];
    const int d = std::max({std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)});
    m[i] = d > cfg.diff_threshold ? 255 : 0;
  }
  return open(m, cfg.open_kernel);
}

TrackResult track_pointer(const PointerTrack& track, const Mask& mask, std::int64_t when,
                          const GestureConfig& cfg) {
  TrackResult out{track, std::nullopt};
  PointerTrack& t = out.track;
  BBox box;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) box.extend(x, y);
    }
  }
  if (box.empty()) {
    t = PointerTrack{};
    return out;
  }
  if (t.state == TrackState::kClicked) return out;  // one click per reach

  const Pixel corner{box.x1, box.y0};  // farthest box corner from the lower left
  const double dist = std::hypot(corner.x, (mask.height() - 1) - corner.y);
  if (!t.history.empty()) {
    const Pixel prev = t.history.back().corner;
    const double moved = std::hypot(corner.x - prev.x, corner.y - prev.y);
    t.still = moved < cfg.still_px ? t.still + 1 : 0;
  }
  t.history.push_back({when, corner});
  t.state = TrackState::kAdvancing;
  if (dist > t.max_dist) {
    t.max_dist = dist;
    t.max_corner = corner;
  }
  if (t.still >= cfg.hold_frames || t.max_dist - dist > cfg.retreat_px) {
    t.state = TrackState::kClicked;
    GestureEvent ev;
    ev.at = t.max_corner;
    ev.when = when;
    ev.kind = cfg.transfer_zone.contains(ev.at.x, ev.at.y) ? GestureKind::kTransferClick
                                                           : GestureKind::kPointClick;
    out.event = ev;
  }
  return out;
}

double box_distance(PointF p, const BBox& box) {
  const double dx = std::max({box.x0 - p.x, 0.0, p.x - box.x1});
  const double dy = std::max({box.y0 - p.y, 0.0, p.y - box.y1});
  return std::hypot(dx, dy);
}

std::optional<int> select_object(PointF click, const std::vector<percept::ObjectPercept>& percepts) {
  std::optional<int> best;
  double best_d = 0.0;
  for (const auto& p : percepts) {
    const double d = box_distance(click, p.blob.bbox);
    if (!best || d < best_d || (d == best_d && p.id < *best)) {
      best = p.id;
      best_d = d;
    }
  }
  return best;
}

HandoffPhase handoff_step(HandoffMonitor& monitor, const std::optional<GestureEvent>& click,
                          std::int64_t now, const GestureConfig& cfg) {
  if (!monitor.active) return HandoffPhase::kNone;
  const bool in_zone = click && cfg.transfer_zone.contains(click->at.x, click->at.y);
  if (!monitor.released) {
    if (in_zone) {
      monitor.released = true;
      monitor.released_at = now;
      return HandoffPhase::kRelease;
    }
    return HandoffPhase::kNone;
  }
  if (in_zone) {
    monitor = HandoffMonitor{};
    return HandoffPhase::kRegrasp;
  }
  if (now - monitor.released_at > cfg.handoff_timeout) {
    monitor = HandoffMonitor{};
    return HandoffPhase::kAbort;
  }
  return HandoffPhase::kNone;
}

std::vector<Frame> synth_reach(const Frame& background, PointF tip) {
  std::vector<Frame> frames;
  for (double r : {0.2, 0.4, 0.6, 0.8, 1.0, 1.0, 1.0, 1.0, 0.6, 0.2}) {
    frames.push_back(world::inject_hand(background, tip, r));
  }
  frames.push_back(background);
  return frames;
}

}  // namespace eli::gesture
