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

#include "eli/image.hpp"

#include <vector>

namespace eli {

std::size_t count_set(const Mask& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.data().begin(), mask.data().end(),
                    [](std::uint8_t v) { return v != 0; }));
}

namespace {

// Separable min/max filter; `take_max` selects dilation.
Mask rank_filter(const Mask& src, int kernel, bool take_max) {
  if (kernel <= 1 || src.empty()) return src;
  const int r = kernel / 2;
  const int w = src.width();
  const int h = src.height();
  Mask tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = take_max ? 0 : 255;
      for (int k = -r; k <= r; ++k) {
        const int xx = std::clamp(x + k, 0, w - 1);
        const std::uint8_t s = src.at(xx, y) ? 255 : 0;
        v = take_max ? std::max(v, s) : std::min(v, s);
      }
      tmp.at(x, y) = v;
    }
  }
  Mask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = take_max ? 0 : 255;
      for (int k = -r; k <= r; ++k) {
        const int yy = std::clamp(y + k, 0, h - 1);
        const std::uint8_t s = tmp.at(x, yy);
        v = take_max ? std::max(v, s) : std::min(v, s);
      }
      out.at(x, y) = v;
    }
  }
  return out;
}

}  // namespace

Mask erode(const Mask& mask, int kernel) { return rank_filter(mask, kernel, false); }
Mask dilate(const Mask& mask, int kernel) { return rank_filter(mask, kernel, true); }
Mask open(const Mask& mask, int kernel) { return dilate(erode(mask, kernel), kernel); }
Mask close(const Mask& mask, int kernel) { return erode(dilate(mask, kernel), kernel); }

Mask invert(const Mask& mask) {
  Mask out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] ? 0 : 255;
  return out;
}

Components label_components(const Mask& mask, bool eight) {
  Components cc;
  cc.labels = Raster<int>(mask.width(), mask.height(), 0);
  cc.areas.push_back(0);
  std::vector<Pixel> stack;
  const int w = mask.width();
  const int h = mask.height();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y) || cc.labels.at(x, y)) continue;
      const int label = static_cast<int>(cc.areas.size());
      std::size_t area = 0;
      stack.push_back({x, y});
      cc.labels.at(x, y) = label;
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        ++area;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight && dx != 0 && dy != 0) continue;
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!mask.inside(nx, ny) || !mask.at(nx, ny) || cc.labels.at(nx, ny)) continue;
            cc.labels.at(nx, ny) = label;
            stack.push_back({nx, ny});
          }
        }
      }
      cc.areas.push_back(area);
    }
  }
  return cc;
}

}  // namespace eli
