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

// Referent resolution: noun phrase slots plus scene, gesture and discourse
// context to a set of candidate objects.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eli/lexmem.hpp"
#include "eli/percept.hpp"
#include "eli/sgram.hpp"

namespace eli::ground {

struct DiscourseState {
  std::optional<int> last_referent;
  std::vector<int> last_candidates;
  std::optional<int> last_suggested;
};

enum class SizeRank { kBiggest, kSmallest };
enum class PosRank { kLeftmost, kRightmost, kMiddle };
enum class Pronoun { kIt, kOther };

struct ReferenceQuery {
  std::optional<std::string> name;
  std::vector<std::string> colors;
  std::optional<SizeRank> size_rank;
  std::optional<PosRank> pos_rank;
  std::optional<Pronoun> pronoun;
  bool demonstrative = false;       // "this" / "that"
  std::optional<PointF> pointed;    // gesture click in image pixels
};

struct Resolution {
  enum class Outcome { kUnique, kAmbiguous, kNone };
  Outcome outcome = Outcome::kNone;
  std::vector<int> ids;  // one id when unique, the survivors when ambiguous

  bool unique() const { return outcome == Outcome::kUnique; }
  int id() const { return ids.front(); }
};

struct GroundConfig {
  double color_share = 0.15;  // hist bin that counts as "some" of a color
};

/// Objects whose description or histogram includes `color`.
std::vector<percept::ObjectPercept> filter_color(const std::vector<percept::ObjectPercept>& percepts,
                                                 const std::string& color,
                                                 const GroundConfig& cfg = {});

std::optional<int> rank_position(const std::vector<percept::ObjectPercept>& percepts, PosRank which);
std::optional<int> rank_size(const std::vector<percept::ObjectPercept>& percepts, SizeRank which);

Resolution resolve(const ReferenceQuery& query, const std::vector<percept::ObjectPercept>& percepts,
                   const DiscourseState& discourse, const lexmem::Lexicon& lexicon,
                   const GroundConfig& cfg = {});

/// Records the outcome of a resolution in the discourse state.
void note(DiscourseState& discourse, const Resolution& res);

/// Builds a query from the slots lying inside token span [begin, end).
/// `display` holds the utterance tokens with their original case.
ReferenceQuery query_from_slots(const sgram::SlotSet& slots, int begin, int end,
                                const std::vector<std::string>& display);

}  // namespace eli::ground
