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

#include <random>

#include "eli/lexmem.hpp"
#include "eli/text.hpp"
#include "eli/worldsim.hpp"
#include "test_support.hpp"

namespace eli::lexmem {
namespace {

std::vector<percept::ObjectPercept> corpus(int scenes, std::uint64_t seed) {
  world::WorldConfig cfg;
  std::mt19937_64 rng(seed);
  std::vector<percept::ObjectPercept> out;
  for (int i = 0; i < scenes; ++i) {
    const auto s = world::random_scene(rng);
    for (auto& p : percept::perceive(world::render_rgb(world::make_world(s, cfg), cfg, i))) {
      out.push_back(std::move(p));
    }
  }
  return out;
}

VisualModel random_model(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VisualModel m;
  double total = 0;
  for (auto& b : m.hist.bins) total += (b = u(rng));
  for (auto& b : m.hist.bins) b /= total;
  m.area = 200 + 4000 * u(rng);
  m.elong = 1 + 3 * u(rng);
  return m;
}

TEST(Distance, SymmetricBoundedAndZeroOnlyWhenEqual) {
  std::mt19937 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_model(rng);
    const auto b = random_model(rng);
    const double d = model_distance(a, b);
    EXPECT_DOUBLE_EQ(d, model_distance(b, a));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_EQ(model_distance(a, a), 0.0);
    EXPECT_GT(d, 0.0);
  }
}

TEST(Learn, SelfRecognition) {
  for (const auto& p : corpus(8, 31)) {
    Lexicon lex;
    ASSERT_TRUE(lex.learn_name("thing", p));
    const auto r = lex.recognize(p);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->name, "thing");
    EXPECT_EQ(r->distance, 0.0);
  }
}

TEST(Learn, NearDuplicateViewAddsNothing) {
  const auto ps = corpus(1, 9);
  ASSERT_FALSE(ps.empty());
  Lexicon lex;
  EXPECT_TRUE(lex.learn_name("Thing", ps[0]));
  EXPECT_FALSE(lex.learn_name("thing", ps[0]));
  EXPECT_EQ(lex.models("thing")->size(), 1u);
  EXPECT_EQ(lex.display_name("thing"), "Thing");
}

TEST(Learn, SecondDistinctViewIsKept) {
  world::WorldConfig cfg;
  const auto scene = world::load_scene_file(testing::scene_path("noun_teaching"));
  const auto ps = percept::perceive(world::render_rgb(world::make_world(scene, cfg), cfg, 1));
  ASSERT_EQ(ps.size(), 4u);
  Lexicon lex;
  EXPECT_TRUE(lex.learn_name("advil", ps[1]));
  EXPECT_TRUE(lex.learn_name("advil", ps[2]));
  EXPECT_EQ(lex.models("advil")->size(), 2u);
  EXPECT_EQ(lex.find_instances("advil", ps), (std::vector<int>{2, 3}));
}

TEST(Recognize, UnknownOutsideLimit) {
  world::WorldConfig cfg;
  const auto scene = world::load_scene_file(testing::scene_path("pronoun4"));
  const auto ps = percept::perceive(world::render_rgb(world::make_world(scene, cfg), cfg, 1));
  Lexicon lex;
  lex.learn_name("blue thing", ps[0]);
  EXPECT_FALSE(lex.recognize(ps[2]));
  EXPECT_TRUE(Lexicon{}.find_instances("anything", ps).empty());
}

TEST(Macros, PutAndGet) {
  Lexicon lex;
  lex.put_macro({"wave", 0, {{"ExtendHand", 1.0}, {"ExtendHand", -1.0}}});
  ASSERT_NE(lex.get_macro("wave"), nullptr);
  EXPECT_EQ(lex.get_macro("wave")->steps.size(), 2u);
  EXPECT_EQ(lex.get_macro("poke"), nullptr);
  EXPECT_EQ(format_steps(lex.get_macro("wave")->steps), "ExtendHand 1.0, ExtendHand -1.0");
}

TEST(Journal, DuplicatesDropped) {
  Lexicon lex;
  lex.journal({GramEntry::Kind::kName, {"dos", "equis"}, 0});
  lex.journal({GramEntry::Kind::kName, {"dos", "equis"}, 0});
  lex.journal({GramEntry::Kind::kVerb, {"poke"}, 1});
  EXPECT_EQ(lex.journal().size(), 2u);
}

TEST(Persistence, RoundTripPreservesRecognition) {
  const auto ps = corpus(12, 55);
  Lexicon lex;
  for (std::size_t i = 0; i < ps.size(); i += 3) lex.learn_name("n" + std::to_string(i), ps[i]);
  lex.put_macro({"poke", 1, {{"TablePoint", 1.0}, {"ExtendHand", 1.0}, {"ExtendHand", -1.0}}});
  lex.journal({GramEntry::Kind::kName, {"dos", "equis"}, 0});
  const Lexicon back = load_lexicon(save_lexicon(lex));
  EXPECT_EQ(back, lex);
  EXPECT_EQ(save_lexicon(back), save_lexicon(lex));
  for (const auto& p : ps) {
    const auto a = lex.recognize(p);
    const auto b = back.recognize(p);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_EQ(a->name, b->name);
    }
  }
}

TEST(Persistence, ShippedBaseLexiconLoads) {
  const Lexicon lex = load_lexicon_file(testing::data_path("lexicon/base.lex"));
  EXPECT_TRUE(lex.knows("tylenol"));
  EXPECT_EQ(lex.display_name("tylenol"), "Tylenol");
  ASSERT_NE(lex.get_macro("wave"), nullptr);
  EXPECT_EQ(lex.get_macro("wave")->arity, 0);
}

TEST(Persistence, MalformedRecordNamesTheLine) {
  try {
    load_lexicon("# header\nname x hist 1 0 0 0 0 0 0 0 0 area 100 elong 2\nmacro poke one TablePoint:1\n");
    FAIL() << "no error";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(load_lexicon("frobnicate\n"), LoadError);
}

}  // namespace
}  // namespace eli::lexmem
