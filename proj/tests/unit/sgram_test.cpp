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


#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "eli/sgram.hpp"
#include "eli/text.hpp"
#include "test_support.hpp"

namespace eli::sgram {
namespace {

const Grammar& base() {
  static const Grammar g = load_grammar_file(testing::data_path("grammar/eli.sgm"));
  return g;
}

std::optional<std::string> slots_of(const Grammar& g, const std::string& utterance) {
  const auto tokens = tokenize(utterance);
  const auto p = parse(g, tokens);
  if (!p) return std::nullopt;
  return format_slots(extract_slots(g, *p->root, tokens));
}

struct GoldenLine {
  std::string utterance;
  std::string slots;
};

std::vector<GoldenLine> golden() {
  std::vector<GoldenLine> out;
  std::istringstream in(read_file(testing::data_path("golden/slots.txt")));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto at = line.find(" => ");
    out.push_back({line.substr(0, at), line.substr(at + 4)});
  }
  return out;
}

std::vector<std::string> expansion_text(const Category& c) {
  std::vector<std::string> out;
  for (const auto& e : c.expansions) {
    std::vector<std::string> words;
    for (const auto& el : e) words.push_back(el.text);
    out.push_back(join(words, " "));
  }
  return out;
}

TEST(Load, FragmentBlueExpansions) {
  const Grammar g = load_grammar_file(testing::data_path("grammar/fragment.sgm"));
  const Category* blue = g.find("blue");
  ASSERT_NE(blue, nullptr);
  EXPECT_EQ(expansion_text(*blue), (std::vector<std::string>{"blue", "dark blue", "light blue"}));
  EXPECT_EQ(slots_of(g, "Eli, please grab the blue bottle now."), "{CMD=hand_grab, COLOR=blue}");
}

TEST(Load, DanglingReferenceNamesCategory) {
  try {
    load_grammar("=[top_level]\n<attn> <x>\n=[attn]\neli\n=[x]\n<y>\n");
    FAIL() << "no error";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("y"), std::string::npos);
  }
}

TEST(Load, EmptyTextHasNoTopLevel) { EXPECT_THROW(load_grammar(""), LoadError); }

TEST(Load, OptionalDictationAndWildcardElements) {
  const Grammar g = load_grammar("=[top_level]\n<attn> (please) + *\n=[attn]\neli\n");
  const auto& e = g.find("top_level")->expansions.at(0);
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0].kind, Element::Kind::kRef);
  EXPECT_TRUE(e[1].optional);
  EXPECT_EQ(e[2].kind, Element::Kind::kDict);
  EXPECT_EQ(e[3].kind, Element::Kind::kWild);
}

TEST(Parse, AttentionWordRequired) {
  EXPECT_TRUE(parse(base(), tokenize("eli please grab the blue bottle now")));
  EXPECT_FALSE(parse(base(), tokenize("grab the blue bottle")));
  EXPECT_FALSE(parse(base(), tokenize("eli")));
  EXPECT_FALSE(parse(base(), tokenize("")));
}

TEST(Parse, WildcardNeverSwallowsTheAttentionWord) {
  EXPECT_TRUE(parse(base(), tokenize("grab the blue bottle robot")));
  EXPECT_FALSE(parse(base(), tokenize("grab the blue bottle robot and then some")));
  EXPECT_FALSE(parse(base(), tokenize("grab the robot blue bottle")));
}

TEST(Parse, WildcardTakesAtMostFiveWords) {
  // the fragment has no dictation that could absorb the extra words
  const Grammar g = load_grammar_file(testing::data_path("grammar/fragment.sgm"));
  EXPECT_TRUE(parse(g, tokenize("eli grab the bottle one two three four five")));
  EXPECT_FALSE(parse(g, tokenize("eli grab the bottle one two three four five six")));
}

TEST(Slots, WorkedExamples) {
  EXPECT_EQ(slots_of(base(), "Eli, please grab the blue bottle now."), "{CMD=hand_grab, COLOR=blue}");
  EXPECT_EQ(slots_of(base(), "Quickly pick up a dark blue thing, robot"), "{CMD=hand_grab, COLOR=blue}");
  EXPECT_EQ(slots_of(base(), "Eli, let me show you how to do something"), "{NEW-ACT}");
  EXPECT_EQ(slots_of(base(), "That is how you nudge something, Eli"), "{FINISH, ACT-1=nudge}");
}

TEST(Slots, ParaphraseGivesIdenticalSlotSet) {
  auto set = [](const std::string& u) {
    const auto t = tokenize(u);
    return extract_slots(base(), *parse(base(), t)->root, t);
  };
  EXPECT_EQ(set("Eli, please grab the blue bottle now."), set("Quickly pick up a dark blue thing, robot"));
}

TEST(Slots, PointSlotIsPresentWhenNaming) {
  const auto t = tokenize("This object is aspirin, Eli");
  const auto p = parse(base(), t);
  ASSERT_TRUE(p);
  const auto s = extract_slots(base(), *p->root, t);
  EXPECT_NE(find_slot(s, "POINT"), nullptr);
  ASSERT_NE(find_slot(s, "FACT"), nullptr);
  ASSERT_NE(find_slot(s, "DICT"), nullptr);
  EXPECT_EQ(find_slot(s, "DICT")->value, "aspirin");
}

TEST(Slots, GoldenCorpusIsByteExact) {
  const auto lines = golden();
  ASSERT_GE(lines.size(), 25u);
  for (const auto& g : lines) {
    EXPECT_EQ(slots_of(base(), g.utterance).value_or("no parse"), g.slots) << g.utterance;
  }
}

TEST(Mutation, AddNameMakesItANameSlot) {
  Grammar g = base();
  EXPECT_EQ(slots_of(g, "eli what is the aspirin"), "{QUERY=what_name, DICT=aspirin}");
  EXPECT_TRUE(add_name(g, {"aspirin"}));
  EXPECT_EQ(slots_of(g, "eli what is the aspirin"), "{QUERY=what_name, NAME=aspirin}");
  const Grammar once = g;
  EXPECT_FALSE(add_name(g, {"aspirin"}));
  EXPECT_EQ(g, once);
}

TEST(Mutation, MultiWordNameMatchesAsAUnit) {
  Grammar g = base();
  ASSERT_TRUE(add_name(g, {"dos", "equis"}));
  const auto t = tokenize("eli grab the dos equis");
  const auto p = parse(g, t);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->cost, 0);
  const auto s = extract_slots(g, *p->root, t);
  ASSERT_NE(find_slot(s, "NAME"), nullptr);
  EXPECT_EQ(find_slot(s, "NAME")->value, "dos equis");
}

TEST(Mutation, AddVerb) {
  Grammar g = base();
  EXPECT_FALSE(slots_of(g, "eli shove the red object").value_or("").find("ACT-1=shove") != std::string::npos);
  EXPECT_TRUE(add_verb(g, "shove", 1));
  EXPECT_EQ(slots_of(g, "eli shove the red object"), "{ACT-1=shove, COLOR=red}");
  EXPECT_FALSE(add_verb(g, "wave", 0));  // already listed
  EXPECT_THROW(add_verb(g, "juggle", 2), std::invalid_argument);
}

TEST(Mutation, EarlierParsesSurvive) {
  std::mt19937 rng(3);
  const char* syllables[] = {"ka", "lo", "mi", "zu", "ter", "vox", "pel"};
  std::uniform_int_distribution<int> pick(0, 6);
  Grammar g = base();
  const auto lines = golden();
  for (int round = 0; round < 20; ++round) {
    const std::string word = std::string(syllables[pick(rng)]) + syllables[pick(rng)] + syllables[pick(rng)];
    if (round % 3 == 0) {
      add_verb(g, word, round % 2);
    } else {
      add_name(g, {word});
    }
    for (const auto& l : lines) {
      ASSERT_EQ(slots_of(g, l.utterance).value_or("no parse"), l.slots) << "after adding " << word;
    }
  }
}

TEST(RoundTrip, SerializeThenLoadIsEqual) {
  const Grammar& g = base();
  const Grammar again = load_grammar(serialize(g));
  EXPECT_EQ(again, g);
  EXPECT_EQ(serialize(again), serialize(g));
  Grammar grown = g;
  add_name(grown, {"dos", "equis"});
  add_verb(grown, "shove", 1);
  EXPECT_EQ(load_grammar(serialize(grown)), grown);
}

TEST(Tokenize, PunctuationAndCase) {
  EXPECT_EQ(tokenize("Eli, PICK up!"), (std::vector<std::string>{"eli", "pick", "up"}));
  EXPECT_EQ(tokenize("that's"), (std::vector<std::string>{"thats"}));
}

TEST(Debug, DumpTreeMentionsCategories) {
  const auto t = tokenize("eli grab the blue bottle");
  const auto p = parse(base(), t);
  ASSERT_TRUE(p);
  const std::string d = dump_tree(base(), *p->root, t);
  EXPECT_NE(d.find("hand_grab"), std::string::npos);
  EXPECT_NE(d.find("COLOR"), std::string::npos);
}

}  // namespace
}  // namespace eli::sgram
