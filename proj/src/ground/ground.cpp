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

#include "eli/ground.hpp"

#include <algorithm>
#include <cmath>

#include "eli/gesture.hpp"

namespace eli::ground {

namespace {

using percept::ObjectPercept;

bool has_id(const std::vector<ObjectPercept>& ps, int id) {
  return std::any_of(ps.begin(), ps.end(), [id](const ObjectPercept& p) { return p.id == id; });
}

std::vector<ObjectPercept> keep_ids(const std::vector<ObjectPercept>& ps, const std::vector<int>& ids) {
  std::vector<ObjectPercept> out;
  for (const auto& p : ps) {
    if (std::find(ids.begin(), ids.end(), p.id) != ids.end()) out.push_back(p);
  }
  return out;
}

std::vector<int> ids_of(const std::vector<ObjectPercept>& ps) {
  std::vector<int> ids;
  for (const auto& p : ps) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Resolution from_set(const std::vector<ObjectPercept>& ps) {
  Resolution r;
  r.ids = ids_of(ps);
  if (r.ids.empty()) {
    r.outcome = Resolution::Outcome::kNone;
  } else if (r.ids.size() == 1) {
    r.outcome = Resolution::Outcome::kUnique;
  } else {
    r.outcome = Resolution::Outcome::kAmbiguous;
  }
  return r;
}

Resolution unique(int id) { return Resolution{Resolution::Outcome::kUnique, {id}}; }

}  // namespace

std::vector<ObjectPercept> filter_color(const std::vector<ObjectPercept>& percepts,
                                        const std::string& color, const GroundConfig& cfg) {
  const int cls = percept::color_index(color);
  std::vector<ObjectPercept> out;
  if (cls < 0) return out;
  const std::string canon = percept::color_name(cls);
  for (const auto& p : percepts) {
    const bool named = std::find(p.dominant.begin(), p.dominant.end(), canon) != p.dominant.end();
    if (named || p.hist[cls] > cfg.color_share) out.push_back(p);
  }
  return out;
}

std::optional<int> rank_position(const std::vector<ObjectPercept>& percepts, PosRank which) {
  if (percepts.empty()) return std::nullopt;
  // strict comparisons keep the earlier (smaller) id on ties
  auto sorted = percepts;
  std::sort(sorted.begin(), sorted.end(), [](const ObjectPercept& a, const ObjectPercept& b) { return a.id < b.id; });
  const ObjectPercept* lo = &sorted.front();
  const ObjectPercept* hi = &sorted.front();
  for (const auto& p : sorted) {
    if (p.blob.base_pt.x < lo->blob.base_pt.x) lo = &p;
    if (p.blob.base_pt.x > hi->blob.base_pt.x) hi = &p;
  }
  if (which == PosRank::kLeftmost) return lo->id;
  if (which == PosRank::kRightmost) return hi->id;
  const double mid = 0.5 * (lo->blob.base_pt.x + hi->blob.base_pt.x);
  const ObjectPercept* best = &sorted.front();
  for (const auto& p : sorted) {
    if (std::abs(p.blob.base_pt.x - mid) < std::abs(best->blob.base_pt.x - mid)) best = &p;
  }
  return best->id;
}

std::optional<int> rank_size(const std::vector<ObjectPercept>& percepts, SizeRank which) {
  if (percepts.empty()) return std::nullopt;
  auto sorted = percepts;
  std::sort(sorted.begin(), sorted.end(), [](const ObjectPercept& a, const ObjectPercept& b) { return a.id < b.id; });
  const ObjectPercept* best = &sorted.front();
  for (const auto& p : sorted) {
    const bool better = which == SizeRank::kBiggest ? p.blob.pixel_count > best->blob.pixel_count
                                                    : p.blob.pixel_count < best->blob.pixel_count;
    if (better) best = &p;
  }
  return best->id;
}

Resolution resolve(const ReferenceQuery& query, const std::vector<ObjectPercept>& percepts,
                   const DiscourseState& discourse, const lexmem::Lexicon& lexicon,
                   const GroundConfig& cfg) {
  std::vector<ObjectPercept> cands = percepts;
  if (query.name) cands = keep_ids(cands, lexicon.find_instances(*query.name, percepts));
  for (const auto& c : query.colors) cands = filter_color(cands, c, cfg);

  if (query.pointed) {
    // a gesture is the most recent cue and wins over discourse
    const auto sel = gesture::select_object(*query.pointed, cands);
    return sel ? unique(*sel) : Resolution{};
  }

  if (query.pronoun == Pronoun::kOther) {
    std::vector<int> rest;
    for (int id : discourse.last_candidates) {
      if (id != discourse.last_suggested && has_id(cands, id)) rest.push_back(id);
    }
    cands = keep_ids(cands, rest);
  } else if (query.pronoun == Pronoun::kIt || query.demonstrative) {
    if (percepts.size() == 1 && cands.size() == 1) return unique(cands.front().id);
    if (discourse.last_referent && has_id(cands, *discourse.last_referent)) {
      return unique(*discourse.last_referent);
    }
  }

  if (query.pos_rank) {
    const auto id = rank_position(cands, *query.pos_rank);
    return id ? unique(*id) : Resolution{};
  }
  if (query.size_rank) {
    const auto id = rank_size(cands, *query.size_rank);
    return id ? unique(*id) : Resolution{};
  }
  return from_set(cands);
}

void note(DiscourseState& discourse, const Resolution& res) {
  if (res.outcome == Resolution::Outcome::kUnique) {
    discourse.last_referent = res.id();
  } else if (res.outcome == Resolution::Outcome::kAmbiguous) {
    discourse.last_candidates = res.ids;
    discourse.last_suggested.reset();
  }
}

ReferenceQuery query_from_slots(const sgram::SlotSet& slots, int begin, int end,
                                const std::vector<std::string>& display) {
  ReferenceQuery q;
  auto text = [&](const sgram::Slot& s) {
    std::vector<std::string> words;
    for (int k = s.value_begin; k < s.value_end && k < static_cast<int>(display.size()); ++k) {
      words.push_back(display[static_cast<std::size_t>(k)]);
    }
    std::string out;
    for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
    return out;
  };
  for (const auto& s : slots) {
    if (s.begin < begin || s.end > end) continue;
    if (s.name == "NAME" || s.name == "DICT") {
      q.name = text(s);
    } else if (s.name == "COLOR" && s.value) {
      q.colors.push_back(*s.value);
    } else if (s.name == "SIZE" && s.value) {
      q.size_rank = *s.value == "smallest" ? SizeRank::kSmallest : SizeRank::kBiggest;
    } else if (s.name == "POSITION" && s.value) {
      q.pos_rank = *s.value == "left" ? PosRank::kLeftmost
                   : *s.value == "right" ? PosRank::kRightmost
                                         : PosRank::kMiddle;
    } else if (s.name == "PRON" && s.value) {
      q.pronoun = *s.value == "other" ? Pronoun::kOther : Pronoun::kIt;
    } else if (s.name == "POINT") {
      q.demonstrative = true;
    }
  }
  return q;
}

}  // namespace eli::ground
