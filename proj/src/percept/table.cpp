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

#include "eli/percept.hpp"

namespace eli::percept {

namespace {

// Opponent values span [-510, 510]; bins start at this offset.
constexpr int kLow = -512;
constexpr int kSpan = 1024;

struct Bracket {
  int lo;
  int hi;
};

Bracket bracket_peak(const std::vector<std::size_t>& counts, int bin, double fraction) {
  const auto peak_it = std::max_element(counts.begin(), counts.end());
  const auto peak = static_cast<std::size_t>(peak_it - counts.begin());
  const double floor_count = fraction * static_cast<double>(*peak_it);
  std::size_t lo = peak;
  while (lo > 0 && static_cast<double>(counts[lo - 1]) >= floor_count) --lo;
  std::size_t hi = peak;
  while (hi + 1 < counts.size() && static_cast<double>(counts[hi + 1]) >= floor_count) ++hi;
  return {kLow + static_cast<int>(lo) * bin, kLow + static_cast<int>(hi + 1) * bin - 1};
}

}  // namespace

TableColorModel fit_table_color(const Opponent& opp, const PerceptConfig& cfg) {
  const int h = opp.rg.height();
  const int w = opp.rg.width();
  const int r0 = h / 3;
  const int r1 = 2 * h / 3;
  if (w == 0 || r1 <= r0) throw PerceptError("table color band is empty");
  const int bin = std::max(1, cfg.hist_bin);
  const auto nbins = static_cast<std::size_t>(kSpan / bin + 1);
  std::vector<std::size_t> rg(nbins, 0);
  std::vector<std::size_t> yb(nbins, 0);
  for (int v = r0; v < r1; ++v) {
    for (int u = 0; u < w; ++u) {
      ++rg[static_cast<std::size_t>((opp.rg.at(u, v) - kLow) / bin)];
      ++yb[static_cast<std::size_t>((opp.yb.at(u, v) - kLow) / bin)];
    }
  }
  const auto a = bracket_peak(rg, bin, cfg.peak_fraction);
  const auto b = bracket_peak(yb, bin, cfg.peak_fraction);
  return {a.lo, a.hi, b.lo, b.hi};
}

Mask table_mask(const Opponent& opp, const TableColorModel& model) {
  Mask m(opp.rg.width(), opp.rg.height());
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = model.contains(opp.rg[i], opp.yb[i]) ? 255 : 0;
  }
  return m;
}

}  // namespace eli::percept
