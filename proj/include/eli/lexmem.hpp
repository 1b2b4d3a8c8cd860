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

// Learned lexicon: named appearance models and named action macros.
//
// File format, one record per line ('#' comments):
//
//   name <word> hist <9 floats> area <n> elong <f>
//   macro <word> <arity> <routine:param>[,...]
//   gram name <word>...
//   gram verb <word> <arity>
//
// Multi-word names are written with '_' between the words.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eli/percept.hpp"

namespace eli::lexmem {

struct VisualModel {
  std::string name;
  percept::ColorHist9 hist;
  double area = 1.0;   // pixels
  double elong = 1.0;  // long over short extent

  friend bool operator==(const VisualModel& a, const VisualModel& b) {
    return a.name == b.name && a.hist.bins == b.hist.bins && a.area == b.area &&
           a.elong == b.elong;
  }
};

/// Weighted appearance distance in [0, 1]; zero for equal descriptors.
double model_distance(const VisualModel& a, const VisualModel& b);

/// Descriptor of a perceived object under `name`.
VisualModel model_of(const std::string& name, const percept::ObjectPercept& p);

struct MacroStep {
  std::string routine;
  double param = 1.0;

  friend bool operator==(const MacroStep&, const MacroStep&) = default;
};

struct VerbMacro {
  std::string name;
  int arity = 0;
  std::vector<MacroStep> steps;

  friend bool operator==(const VerbMacro&, const VerbMacro&) = default;
};

/// "TablePoint 1.0, ExtendHand 1.0, ExtendHand -1.0"
std::string format_steps(const std::vector<MacroStep>& steps);

/// Grammar additions recorded alongside the models.
struct GramEntry {
  enum class Kind { kName, kVerb };
  Kind kind = Kind::kName;
  std::vector<std::string> words;  // lowercase tokens
  int arity = 0;

  friend bool operator==(const GramEntry&, const GramEntry&) = default;
};

struct LexConfig {
  double novelty = 0.15;  // a new view closer than this adds nothing
  double limit = 0.35;    // recognition radius
};

struct Recognition {
  std::string name;
  double distance = 0.0;
};

class Lexicon {
 public:
  explicit Lexicon(LexConfig cfg = {}) : cfg_(cfg) {}

  const LexConfig& config() const { return cfg_; }

  /// Stores a model for `name` unless an existing model of that name is
  /// within the novelty radius. Returns true when a model was added.
  bool learn_name(const std::string& name, const percept::ObjectPercept& p);
  /// Adds a prebuilt model with the same novelty rule.
  bool add_model(const VisualModel& m);

  /// Nearest model over all names, if within the limit.
  std::optional<Recognition> recognize(const percept::ObjectPercept& p) const;

  /// Ids of the percepts within the limit of some model of `name`.
  std::vector<int> find_instances(const std::string& name,
                                  const std::vector<percept::ObjectPercept>& percepts) const;

  bool knows(const std::string& name) const;
  /// Spelling the name was first taught with ("Tylenol" for "tylenol").
  std::string display_name(const std::string& name) const;
  std::vector<std::string> names() const;
  const std::vector<VisualModel>* models(const std::string& name) const;

  void put_macro(const VerbMacro& macro);
  const VerbMacro* get_macro(const std::string& name) const;
  const std::map<std::string, VerbMacro>& macros() const { return macros_; }

  /// Appends to the grammar journal; duplicates are dropped.
  void journal(const GramEntry& entry);
  const std::vector<GramEntry>& journal() const { return journal_; }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.models_ == b.models_ && a.macros_ == b.macros_ && a.journal_ == b.journal_;
  }

 private:
  LexConfig cfg_;
  std::vector<std::string> order_;                          // keys in teaching order
  std::map<std::string, std::vector<VisualModel>> models_;  // keyed by lowercase name
  std::map<std::string, VerbMacro> macros_;
  std::vector<GramEntry> journal_;
};

std::string save_lexicon(const Lexicon& lex);
/// Throws LoadError naming the line for malformed records.
Lexicon load_lexicon(const std::string& text, LexConfig cfg = {});
Lexicon load_lexicon_file(const std::string& path, LexConfig cfg = {});

}  // namespace eli::lexmem
