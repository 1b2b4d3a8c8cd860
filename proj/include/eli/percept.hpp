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

// Table finding, object blobs, blob geometry and semantic color classes.

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eli/image.hpp"

namespace eli::percept {

class PerceptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ColorClass { kRed, kOrange, kYellow, kGreen, kBlue, kViolet, kBlack, kGray, kWhite };
inline constexpr int kNumColors = 9;

/// Spoken name of a class ("purple" for violet).
const char* color_name(int cls);
/// Inverse of color_name; also accepts "violet" and "grey". -1 if unknown.
int color_index(const std::string& name);

struct PerceptConfig {
  double peak_fraction = 0.1;
  int hist_bin = 4;         // opponent histogram bin width
  int morph_kernel = 3;
  int min_area = 50;
  int erode_px = 2;         // color mask shrink
  int strips = 16;
  double plane_tol = 1.5;
  // HSI class boundaries
  double dark_i = 45.0;
  double bright_i = 210.0;
  double gray_s = 60.0;
  std::array<double, 6> hue_edges{340.0, 20.0, 45.0, 70.0, 160.0, 260.0};  // R O Y G B V starts
};

struct TableColorModel {
  int rg_lo = 0, rg_hi = 0;
  int yb_lo = 0, yb_hi = 0;

  bool contains(int rg, int yb) const {
    return rg >= rg_lo && rg <= rg_hi && yb >= yb_lo && yb <= yb_hi;
  }
};

/// depth = a*u + b*v + c in pixel coordinates.
struct PlaneModel {
  double a = 0.0, b = 0.0, c = 0.0;
  double tol = 1.5;

  double at(double u, double v) const { return a * u + b * v + c; }
};

struct ObjectBlob {
  std::vector<Pixel> pixels;
  BBox bbox;
  std::size_t pixel_count = 0;
  PointF centroid;
  double axis_deg = 0.0;   // table-plane angle in [0, 180), counterclockwise, up positive
  PointF base_pt;
  double char_width = 0.0; // pixels, near the lower end
  double extent_across = 0.0;
  double extent_along = 0.0;

  /// Full-frame mask of the blob.
  Mask mask(int width, int height) const;
};

struct ColorHist9 {
  std::array<double, kNumColors> bins{};

  double operator[](int i) const { return bins[static_cast<std::size_t>(i)]; }
  double sum() const;
  bool empty() const { return sum() <= 0.0; }
};

struct ObjectPercept {
  int id = 0;  // 1-based, left to right by base point
  ObjectBlob blob;
  ColorHist9 hist;
  std::vector<std::string> dominant;
};

Frame boost_colorfulness(const Frame& frame);

struct Opponent {
  SignedImage rg;
  SignedImage yb;
};
Opponent opponent_channels(const Frame& frame);

TableColorModel fit_table_color(const Opponent& opp, const PerceptConfig& cfg = {});

/// White where the opponent values fall inside the table model.
Mask table_mask(const Opponent& opp, const TableColorModel& model);

struct PlaneFit {
  PlaneModel plane;
  Mask inliers;
};
PlaneFit fit_plane(const DepthFrame& depth, const PerceptConfig& cfg = {});

/// Table mask from the depth path: plane inliers and invalid pixels.
Mask depth_table_mask(const DepthFrame& depth, const PlaneFit& fit);

std::vector<ObjectBlob> extract_objects(const Mask& table, const PerceptConfig& cfg = {});

/// Fills axis, base point and widths from the pixel list.
void measure_blob(ObjectBlob& blob);

/// Axis of minimal inertia as a table-plane angle in [0, 180).
double axis_angle(const std::vector<Pixel>& pixels);

PointF base_point(const ObjectBlob& blob);

int classify_pixel(Rgb px, const PerceptConfig& cfg = {});
double hue_deg(Rgb px);

ColorHist9 classify_colors(const Frame& frame, const ObjectBlob& blob, const PerceptConfig& cfg = {});

std::vector<std::string> describe_colors(const ColorHist9& hist);

/// Full pipeline. With a depth frame the table mask comes from the plane fit.
std::vector<ObjectPercept> perceive(const Frame& frame, const DepthFrame* depth = nullptr,
                                    const PerceptConfig& cfg = {});

/// JSON report of percepts (id, pixel_count, axis_deg, base_pt, bbox, hist, dominant).
std::string report_json(const std::vector<ObjectPercept>& percepts);

/// Debug overlay: boxes, axis T marks and base points drawn on the frame.
Frame overlay(const Frame& frame, const std::vector<ObjectPercept>& percepts);

}  // namespace eli::percept
