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

// Motivation over situation/event/action memories.
//
// Situations are flat conjunctions of tokens ("pond&rock"). A memory is
// formed when an interesting event happens, and later latches that event
// as a directive, proposes its action, or makes its situation interesting.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace eli::drive {

/// Sorted, duplicate-free conjunction of tokens.
using Situation = std::vector<std::string>;

/// "pond&rock" -> {pond, rock}. Throws std::invalid_argument for empty tokens.
Situation parse_situation(const std::string& text);
std::string format_situation(const Situation& s);

/// Every conjunct of `need` is present in `have`.
bool satisfied(const Situation& need, const Situation& have);

struct TripleSEA {
  Situation s;
  std::string e;
  std::string a;

  friend bool operator==(const TripleSEA&, const TripleSEA&) = default;
};

using Store = std::vector<TripleSEA>;  // insertion order
using DirectiveSet = std::set<std::string>;

struct DriveConfig {
  double threshold = 0.5;
  int decay_ticks = 20;
};

struct InterestTable {
  std::map<std::string, double> events;     // event -> interest
  std::map<std::string, int> temporary;     // situation token -> ticks left

  double of(const std::string& event) const;
  /// Counts down the temporary set; returns the tokens that expired.
  std::vector<std::string> tick(int n = 1);
};

enum class Observed { kStored, kDuplicate, kDull };

/// Forms a memory when the event is interesting enough.
Observed observe(Store& store, const Situation& s, const std::string& e, const std::string& a,
                 double interest, const DriveConfig& cfg = {});

/// Latches D(E) for remembered situations that are present now. Returns
/// the newly latched events.
std::vector<std::string> afford(const Store& store, const Situation& current,
                                const InterestTable& interest, DirectiveSet& directives,
                                const DriveConfig& cfg = {});

/// Actions worth trying now, in store order.
std::vector<std::string> propose(const Store& store, const DirectiveSet& directives,
                                 const Situation& current);

/// Makes the situations behind wanted events temporarily interesting.
/// Returns the tokens added or refreshed.
std::vector<std::string> backchain(const Store& store, const DirectiveSet& directives,
                                   InterestTable& interest, const DriveConfig& cfg = {});

/// Runs an event-stream script and writes a trace, one line per decision.
///
///   s:<situation> e:<event> a:<action> i:<interest>   observe
///   s:<situation>                                     afford, propose, backchain
///   e:<event> i:<interest>                            set interest
///   tick:<n>                                          let time pass
///   clear:<event>                                     drop a directive
class Driver {
 public:
  explicit Driver(DriveConfig cfg = {}) : cfg_(cfg) {}

  /// Throws std::invalid_argument naming the problem for malformed records.
  std::vector<std::string> feed(const std::string& record);
  std::vector<std::string> run(const std::string& script);

  const Store& store() const { return store_; }
  const DirectiveSet& directives() const { return directives_; }
  const InterestTable& interest() const { return interest_; }

 private:
  DriveConfig cfg_;
  Store store_;
  DirectiveSet directives_;
  InterestTable interest_;
};

}  // namespace eli::drive
