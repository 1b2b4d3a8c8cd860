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

#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "eli/text.hpp"
#include "eli/worldsim.hpp"

namespace eli::world {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double parse_number(const std::string& tok, int line, const char* what) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw LoadError(line, std::string("bad ") + what + " '" + tok + "'");
  }
  return v;
}

int parse_channel(const std::string& tok, int line) {
  const double v = parse_number(tok, line, "color channel");
  if (v < 0 || v > 255 || v != std::floor(v)) {
    throw LoadError(line, "color channel out of range '" + tok + "'");
  }
  return static_cast<int>(v);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<PaintLayer> parse_paint(const std::string& field, int line) {
  std::vector<PaintLayer> layers;
  for (const auto& part : split(field, ';')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw LoadError(line, "paint layer needs r,g,b:frac");
    const auto rgb = split(part.substr(0, colon), ',');
    if (rgb.size() != 3) throw LoadError(line, "paint color needs three channels");
    PaintLayer layer;
    layer.color = Rgb{static_cast<std::uint8_t>(parse_channel(rgb[0], line)),
                      static_cast<std::uint8_t>(parse_channel(rgb[1], line)),
                      static_cast<std::uint8_t>(parse_channel(rgb[2], line))};
    layer.fraction = parse_number(part.substr(colon + 1), line, "paint fraction");
    layers.push_back(layer);
  }
  return layers;
}

void check_object(const ObjSpec& o, const SceneSpec& scene, int line) {
  if (!(o.long_in > 0) || !(o.short_in > 0)) throw LoadError(line, "object axes must be positive");
  if (o.short_in > o.long_in) throw LoadError(line, "short axis exceeds long axis for " + o.id);
  if (!(o.height > 0)) throw LoadError(line, "object height must be positive");
  if (o.paint.empty()) throw LoadError(line, "object " + o.id + " has no paint");
  double total = 0.0;
  for (const auto& p : o.paint) {
    if (!(p.fraction > 0)) throw LoadError(line, "paint fractions must be positive");
    total += p.fraction;
  }
  if (std::abs(total - 1.0) > 1e-6) throw LoadError(line, "paint fractions of " + o.id + " do not sum to 1");
  const auto b = o.bounds();
  if (b[0] < 0 || b[1] < 0 || b[2] > scene.table_w || b[3] > scene.table_h) {
    throw LoadError(line, "object " + o.id + " leaves the table");
  }
}

}  // namespace

bool ObjSpec::covers(double x, double y) const {
  const double c = std::cos(deg * kDeg);
  const double s = std::sin(deg * kDeg);
  const double dx = x - cx;
  const double dy = y - cy;
  const double along = dx * c + dy * s;
  const double across = -dx * s + dy * c;
  const double a = long_in / 2.0;
  const double b = short_in / 2.0;
  if (shape == Shape::kRect) return std::abs(along) <= a && std::abs(across) <= b;
  return (along * along) / (a * a) + (across * across) / (b * b) <= 1.0;
}

std::array<double, 4> ObjSpec::bounds() const {
  const double c = std::abs(std::cos(deg * kDeg));
  const double s = std::abs(std::sin(deg * kDeg));
  const double a = long_in / 2.0;
  const double b = short_in / 2.0;
  double hx = 0.0;
  double hy = 0.0;
  if (shape == Shape::kRect) {
    hx = a * c + b * s;
    hy = a * s + b * c;
  } else {
    hx = std::sqrt(a * a * c * c + b * b * s * s);
    hy = std::sqrt(a * a * s * s + b * b * c * c);
  }
  return {cx - hx, cy - hy, cx + hx, cy + hy};
}

const ObjSpec* SceneSpec::find(const std::string& id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

ObjSpec* SceneSpec::find(const std::string& id) {
  for (auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

void validate_scene(const SceneSpec& scene) {
  if (!(scene.table_w > 0) || !(scene.table_h > 0)) throw LoadError(0, "table extent must be positive");
  std::set<std::string> ids;
  for (const auto& o : scene.objects) {
    if (!ids.insert(o.id).second) throw LoadError(0, "duplicate object id " + o.id);
    check_object(o, scene, 0);
  }
}

SceneSpec load_scene(const std::string& text) {
  SceneSpec scene;
  std::set<std::string> ids;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool saw_table = false;
  std::vector<std::pair<ObjSpec, int>> pending;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto tok = split_ws(body);
    if (tok[0] == "table") {
      if (tok.size() != 6) throw LoadError(line, "table needs <r> <g> <b> <w_in> <h_in>");
      if (saw_table) throw LoadError(line, "second table line");
      saw_table = true;
      scene.table_color = Rgb{static_cast<std::uint8_t>(parse_channel(tok[1], line)),
                              static_cast<std::uint8_t>(parse_channel(tok[2], line)),
                              static_cast<std::uint8_t>(parse_channel(tok[3], line))};
      scene.table_w = parse_number(tok[4], line, "table width");
      scene.table_h = parse_number(tok[5], line, "table height");
      if (!(scene.table_w > 0) || !(scene.table_h > 0)) throw LoadError(line, "table extent must be positive");
    } else if (tok[0] == "obj") {
      if (tok.size() != 10) throw LoadError(line, "obj needs 9 fields after the keyword");
      ObjSpec o;
      o.id = tok[1];
      if (!ids.insert(o.id).second) throw LoadError(line, "duplicate object id " + o.id);
      if (tok[2] == "rect") {
        o.shape = Shape::kRect;
      } else if (tok[2] == "ellipse") {
        o.shape = Shape::kEllipse;
      } else {
        throw LoadError(line, "unknown shape '" + tok[2] + "'");
      }
      o.cx = parse_number(tok[3], line, "center x");
      o.cy = parse_number(tok[4], line, "center y");
      o.long_in = parse_number(tok[5], line, "long axis");
      o.short_in = parse_number(tok[6], line, "short axis");
      o.deg = parse_number(tok[7], line, "orientation");
      o.height = parse_number(tok[8], line, "height");
      o.paint = parse_paint(tok[9], line);
      pending.emplace_back(std::move(o), line);
    } else {
      throw LoadError(line, "unknown directive '" + tok[0] + "'");
    }
  }
  // objects are checked against the table extent once it is known
  for (auto& [o, at] : pending) {
    check_object(o, scene, at);
    scene.objects.push_back(std::move(o));
  }
  return scene;
}

SceneSpec load_scene_file(const std::string& path) { return load_scene(read_file(path)); }

std::string save_scene(const SceneSpec& scene) {
  std::ostringstream out;
  out << "table " << int(scene.table_color.r) << ' ' << int(scene.table_color.g) << ' '
      << int(scene.table_color.b) << ' ' << format_number(scene.table_w) << ' '
      << format_number(scene.table_h) << '\n';
  for (const auto& o : scene.objects) {
    out << "obj " << o.id << ' ' << (o.shape == Shape::kRect ? "rect" : "ellipse") << ' '
        << format_number(o.cx) << ' ' << format_number(o.cy) << ' ' << format_number(o.long_in)
        << ' ' << format_number(o.short_in) << ' ' << format_number(o.deg) << ' '
        << format_number(o.height) << ' ';
    for (std::size_t i = 0; i < o.paint.size(); ++i) {
      const auto& p = o.paint[i];
      if (i) out << ';';
      out << int(p.color.r) << ',' << int(p.color.g) << ',' << int(p.color.b) << ':'
          << format_number(p.fraction);
    }
    out << '\n';
  }
  return out.str();
}

const std::vector<NamedPaint>& test_palette() {
  static const std::vector<NamedPaint> kPalette = {
      {"red", {200, 30, 30}},     {"orange", {230, 130, 30}}, {"yellow", {220, 200, 30}},
      {"green", {40, 160, 60}},   {"blue", {30, 60, 200}},    {"purple", {140, 40, 180}},
      {"black", {15, 15, 15}},    {"gray", {128, 128, 128}},  {"white", {240, 240, 240}},
  };
  return kPalette;
}

SceneSpec random_scene(std::mt19937_64& rng, const SceneGenParams& params) {
  SceneSpec scene;
  std::uniform_int_distribution<int> count(params.min_objects, params.max_objects);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& palette = test_palette();
  std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
  const int n = count(rng);
  int attempts = 0;
  while (static_cast<int>(scene.objects.size()) < n && attempts < 2000) {
    ++attempts;
    ObjSpec o;
    o.id = "o" + std::to_string(scene.objects.size() + 1);
    o.shape = unit(rng) < 0.5 ? Shape::kRect : Shape::kEllipse;
    o.short_in = params.min_short + unit(rng) * (params.max_short - params.min_short);
    o.long_in = std::min(6.0, o.short_in * (params.min_aspect +
                                            unit(rng) * (params.max_aspect - params.min_aspect)));
    o.deg = 20.0 + unit(rng) * 140.0;
    o.height = 1.0 + unit(rng) * 5.0;
    o.cx = params.margin + unit(rng) * (scene.table_w - 2 * params.margin);
    o.cy = params.margin + unit(rng) * (scene.table_h - 2 * params.margin);
    const auto b = o.bounds();
    if (b[0] < params.margin || b[1] < params.margin || b[2] > scene.table_w - params.margin ||
        b[3] > scene.table_h - params.margin) {
      continue;
    }
    bool clear = true;
    for (const auto& other : scene.objects) {
      const auto ob = other.bounds();
      if (b[0] < ob[2] + params.gap && ob[0] < b[2] + params.gap && b[1] < ob[3] + params.gap &&
          ob[1] < b[3] + params.gap) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    const auto first = pick(rng);
    if (unit(rng) < params.two_tone_rate) {
      auto second = pick(rng);
      while (second == first) second = pick(rng);
      o.paint = {{palette[first].color, 0.7}, {palette[second].color, 0.3}};
    } else {
      o.paint = {{palette[first].color, 1.0}};
    }
    scene.objects.push_back(std::move(o));
  }
  return scene;
}

}  // namespace eli::world
