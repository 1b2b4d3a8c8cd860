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

std::vector<ObjectPercept> perceive(const Frame& frame, const DepthFrame* depth,
                                    const PerceptConfig& cfg) {
  Mask table;
  if (depth != nullptr) {
    table = depth_table_mask(*depth, fit_plane(*depth, cfg));
  } else {
    const Opponent opp = opponent_channels(boost_colorfulness(frame));
    table = table_mask(opp, fit_table_color(opp, cfg));
  }
  auto blobs = extract_objects(table, cfg);
  std::stable_sort(blobs.begin(), blobs.end(), [](const ObjectBlob& a, const ObjectBlob& b) {
    if (a.base_pt.x != b.base_pt.x) return a.base_pt.x < b.base_pt.x;
    return a.base_pt.y < b.base_pt.y;
  });
  std::vector<ObjectPercept> out;
  out.reserve(blobs.size());
  int id = 1;
  for (auto& b : blobs) {
    ObjectPercept p;
    p.id = id++;
    // color classes come from the unboosted image
    p.hist = classify_colors(frame, b, cfg);
    p.dominant = describe_colors(p.hist);
    p.blob = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace eli::percept
