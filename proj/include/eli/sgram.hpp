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

// Semantic command grammar: loading, parsing, slot extraction, mutation.
//
// File format, one category per block:
//
//   =[hand_grab]
//   grab
//   pick up
//
// Elements in parentheses are optional, <x> references category x, '+' is
// a dictation of one or more words and '*' matches zero to five words.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eli::sgram {

struct Element {
  enum class Kind { kWord, kRef, kDict, kWild, kGroup };
  Kind kind = Kind::kWord;
  std::string text;               // word token or referenced category
  bool optional = false;
  std::vector<Element> children;  // kGroup only

  friend bool operator==(const Element&, const Element&) = default;
};

using Expansion = std::vector<Element>;

struct Category {
  std::string name;
  std::vector<Expansion> expansions;

  friend bool operator==(const Category&, const Category&) = default;
};

inline constexpr int kMaxWildcard = 5;

/// Categories that learning appends to; they always carry slot values.
inline const char* const kNameCategory = "NAME";
inline const char* const kVerb0Category = "ACT-0";
inline const char* const kVerb1Category = "ACT-1";

class Grammar {
 public:
  const Category* find(const std::string& name) const;
  const std::vector<Category>& categories() const { return cats_; }
  /// Tokens produced by the attention category.
  const std::vector<std::string>& attention_words() const { return attn_; }
  bool is_flag(const std::string& category) const;

  /// Appends (or creates) a category; used by the loader.
  Category& add_category(const std::string& name);
  /// Recomputes derived tables; throws LoadError on dangling references.
  void finalize();

  friend bool operator==(const Grammar& a, const Grammar& b) { return a.cats_ == b.cats_; }

 private:
  std::vector<Category> cats_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> attn_;
  std::vector<std::string> flags_;
};

/// Parses grammar text; throws LoadError naming the line and category.
Grammar load_grammar(const std::string& text);
Grammar load_grammar_file(const std::string& path);
std::string serialize(const Grammar& grammar);

/// Parse tree node: either a category expansion or a matched token span.
struct ParseNode {
  enum class Kind { kCategory, kWord, kDict, kWild };
  Kind kind = Kind::kCategory;
  std::string category;  // kCategory
  int expansion = -1;    // index into the category's expansions
  int begin = 0;
  int end = 0;           // token span [begin, end)
  std::vector<std::shared_ptr<const ParseNode>> children;
};

struct ParseResult {
  std::shared_ptr<const ParseNode> root;
  int cost = 0;  // tokens absorbed by dictation and wildcards
};

/// Best parse of the full token list under top_level, or nullopt when no
/// parse exists or no attention word sits at either end.
std::optional<ParseResult> parse(const Grammar& grammar, const std::vector<std::string>& tokens);

struct Slot {
  std::string name;
  std::optional<std::string> value;
  int begin = 0;  // token span of the slot's category node
  int end = 0;
  int value_begin = 0;  // token span the value text came from
  int value_end = 0;

  friend bool operator==(const Slot& a, const Slot& b) {
    return a.name == b.name && a.value == b.value;
  }
};

using SlotSet = std::vector<Slot>;

SlotSet extract_slots(const Grammar& grammar, const ParseNode& root,
                      const std::vector<std::string>& tokens);

/// "{CMD=hand_grab, COLOR=blue}"
std::string format_slots(const SlotSet& slots);

const Slot* find_slot(const SlotSet& slots, const std::string& name);

/// Adds a learned name (one or more words) to NAME. Returns false if present.
bool add_name(Grammar& grammar, const std::vector<std::string>& words);
/// Adds a learned verb to ACT-0 or ACT-1. Throws std::invalid_argument for other arities.
bool add_verb(Grammar& grammar, const std::string& word, int arity);

/// Debug rendering of a tree, one node per line.
std::string dump_tree(const Grammar& grammar, const ParseNode& root,
                      const std::vector<std::string>& tokens);

}  // namespace eli::sgram
