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
#include <numeric>

#include "eli/percept.hpp"
#include "eli/text.hpp"

namespace eli::percept {

namespace {

constexpr const char* kNames[kNumColors] = {"red",   "orange", "yellow", "green", "blue",
                                            "purple", "black",  "gray",   "white"};

bool in_arc(double h, double from, double to) {
  return from <= to ? (h >= from && h < to) : (h >= from || h < to);
}

}  // namespace

const char* color_name(int cls) {
  if (cls < 0 || cls >= kNumColors) return "unknown";
  return kNames[cls];
}

int color_index(const std::string& name) {
  const auto n = to_lower(name);
  if (n == "violet") return kViolet;
  if (n == "grey") return kGray;
  for (int i = 0; i < kNumColors; ++i) {
    if (n == kNames[i]) return i;
  }
  return -1;
}

double ColorHist9::sum() const { return std::accumulate(bins.begin(), bins.end(), 0.0); }

Frame boost_colorfulness(const Frame& frame) {
  Frame out(frame.width(), frame.height());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Rgb p = frame[i];
    const int m = std::max({p.r, p.g, p.b});
    // factor 255/m capped at 5, rounded half-up in integers
    auto scale = [m](std::uint8_t c) {
      const int v = m * 5 <= 255 ? c * 5 : (2 * c * 255 + m) / (2 * m);
      return static_cast<std::uint8_t>(std::min(255, v));
    };
    out[i] = Rgb{scale(p.r), scale(p.g), scale(p.b)};
  }
  return out;
}

Opponent opponent_channels(const Frame& frame) {
  Opponent o{SignedImage(frame.width(), frame.height()), SignedImage(frame.width(), frame.height())};
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const Rgb p = frame[i];
    o.rg[i] = int(p.r) - int(p.g);
    o.yb[i] = int(p.r) + int(p.g) - 2 * int(p.b);
  }
  return o;
}

double hue_deg(Rgb px) {
  const double r = px.r, g = px.g, b = px.b;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  if (d <= 0.0) return 0.0;
  double h = 0.0;
  if (mx == r) {
    h = 60.0 * std::fmod((g - b) / d, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / d + 2.0);
  } else {
    h = 60.0 * ((r - g) / d + 4.0);
  }
  if (h < 0) h += 360.0;
  return h;
}

int classify_pixel(Rgb px, const PerceptConfig& cfg) {
  const double i = (px.r + px.g + px.b) / 3.0;
  if (i <= cfg.dark_i) return kBlack;
  if (i >= cfg.bright_i) return kWhite;
  const double mn = std::min({px.r, px.g, px.b});
  const double s = i > 0 ? 255.0 * (1.0 - mn / i) : 0.0;
  if (s <= cfg.gray_s) return kGray;
  const double h = hue_deg(px);
  const auto& e = cfg.hue_edges;
  for (int k = 0; k < 6; ++k) {
    if (in_arc(h, e[static_cast<std::size_t>(k)], e[static_cast<std::size_t>((k + 1) % 6)])) {
      return k;
    }
  }
  return kRed;
}

ColorHist9 classify_colors(const Frame& frame, const ObjectBlob& blob, const PerceptConfig& cfg) {
  ColorHist9 hist;
  if (blob.pixels.empty()) return hist;
  // local mask padded so the erosion sees background around the blob
  const int pad = cfg.erode_px + 1;
  const int ox = blob.bbox.x0 - pad;
  const int oy = blob.bbox.y0 - pad;
  Mask local(blob.bbox.width() + 2 * pad, blob.bbox.height() + 2 * pad);
  for (const auto& p : blob.pixels) local.at(p.x - ox, p.y - oy) = 255;
  Mask core = cfg.erode_px > 0 ? erode(local, 2 * cfg.erode_px + 1) : local;
  if (count_set(core) == 0) core = local;
  std::size_t total = 0;
  for (int y = 0; y < core.height(); ++y) {
    for (int x = 0; x < core.width(); ++x) {
      if (!core.at(x, y)) continue;
      const int fx = x + ox;
      const int fy = y + oy;
      if (!frame.inside(fx, fy)) continue;
      hist.bins[static_cast<std::size_t>(classify_pixel(frame.at(fx, fy), cfg))] += 1.0;
      ++total;
    }
  }
  if (total > 0) {
    for (auto& b : hist.bins) b /= static_cast<double>(total);
  }
  return hist;
}

std::vector<std::string> describe_colors(const ColorHist9& hist) {
  std::vector<std::string> out;
  if (hist.empty()) return out;
  std::vector<int> order(kNumColors);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return hist[a] > hist[b]; });
  const int dom = order[0];
  const double top = hist[dom];
  out.push_back(color_name(dom));
  bool single = true;
  for (int k = 1; k < kNumColors; ++k) {
    if (top < 2.0 * hist[order[static_cast<std::size_t>(k)]]) single = false;
  }
  if (single) return out;
  for (int k = 1; k < kNumColors; ++k) {
    const int c = order[static_cast<std::size_t>(k)];
    if (hist[c] > 0.3 * top) out.push_back(color_name(c));
  }
  return out;
}

}  // namespace eli::percept
