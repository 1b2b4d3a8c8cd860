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

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace eli {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Integer pixel position; x is the column, y the row (row 0 at the top).
struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Sub-pixel image position, same axes as Pixel.
struct PointF {
  double x = 0.0;
  double y = 0.0;
};

/// Inclusive axis-parallel pixel box.
struct BBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  int width() const { return empty() ? 0 : x1 - x0 + 1; }
  int height() const { return empty() ? 0 : y1 - y0 + 1; }
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
  void extend(int x, int y) {
    if (empty()) {
      x0 = x1 = x;
      y0 = y1 = y;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Row-major 2D raster.
template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 0 || height < 0) throw std::invalid_argument("negative raster size");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool inside(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& at(int x, int y) const { return data_[index(x, y)]; }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using Frame = Raster<Rgb>;
/// Binary image: 0 or 255.
using Mask = Raster<std::uint8_t>;
/// Signed per-pixel values (opponent channels).
using SignedImage = Raster<int>;

/// Range image. Pixels equal to kInvalidDepth carry no measurement.
using DepthFrame = Raster<float>;
inline constexpr float kInvalidDepth = 0.0f;

template <typename A, typename B>
bool same_shape(const Raster<A>& a, const Raster<B>& b) {
  return a.width() == b.width() && a.height() == b.height();
}

std::size_t count_set(const Mask& mask);

/// Morphology with a square structuring element of the given (odd) size.
/// Pixels outside the raster are treated as replicating the nearest edge.
Mask erode(const Mask& mask, int kernel);
Mask dilate(const Mask& mask, int kernel);
Mask open(const Mask& mask, int kernel);
Mask close(const Mask& mask, int kernel);
Mask invert(const Mask& mask);

/// Connected component labelling. Returns labels (0 = background, 1..n)
/// for pixels that are set; `eight` selects 8-connectivity.
struct Components {
  Raster<int> labels;
  std::vector<std::size_t> areas;  // indexed by label; areas[0] unused
  int count() const { return static_cast<int>(areas.size()) - 1; }
};
Components label_components(const Mask& mask, bool eight);

}  // namespace eli
