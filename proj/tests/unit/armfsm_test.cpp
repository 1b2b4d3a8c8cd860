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

#include <cmath>
#include <random>

#include "eli/armfsm.hpp"
#include "eli/text.hpp"
#include "test_support.hpp"

namespace eli::arm {
namespace {

ArmContext context_for(const world::SceneSpec& s) {
  ArmContext ctx;
  ctx.h = camera_homography(world::camera_for(s, ctx.world));
  return ctx;
}

struct Fixture {
  world::SceneSpec scene;
  world::WorldState world;
  ArmContext ctx;
  std::vector<percept::ObjectPercept> percepts;
};

Fixture load(const std::string& name) {
  Fixture f;
  f.scene = world::load_scene_file(testing::scene_path(name));
  f.ctx = context_for(f.scene);
  f.world = world::make_world(f.scene, f.ctx.world);
  f.percepts = percept::perceive(world::render_rgb(f.world, f.ctx.world, 1));
  return f;
}

// a percept standing at a table point with a given axis
percept::ObjectPercept standing_at(double x, double y, double axis_deg, const world::Camera& cam) {
  percept::ObjectPercept p;
  p.id = 1;
  p.blob.base_pt = cam.to_image(x, y);
  p.blob.centroid = p.blob.base_pt;
  p.blob.axis_deg = axis_deg;
  p.blob.extent_across = 20;
  return p;
}

TEST(Homography, HeldOutFifthPoint) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Matrix3d m;
    m << 0.05 + 0.01 * u(rng), 0.004 * u(rng), 3 * u(rng),
         0.004 * u(rng), -0.05 + 0.01 * u(rng), 20 + 3 * u(rng),
         1e-5 * u(rng), 1e-5 * u(rng), 1.0;
    const Homography truth(m);
    const std::array<PointF, 4> img{PointF{100, 80}, PointF{540, 90}, PointF{530, 400}, PointF{110, 390}};
    std::array<PointF, 4> tab;
    for (int i = 0; i < 4; ++i) tab[static_cast<std::size_t>(i)] = truth.map(img[static_cast<std::size_t>(i)]);
    const Homography h = calibrate(img, tab);
    const PointF fifth{320 + 100 * u(rng), 240 + 100 * u(rng)};
    const PointF want = truth.map(fifth);
    const PointF got = h.map(fifth);
    EXPECT_LT(std::hypot(got.x - want.x, got.y - want.y), 1e-6);
  }
}

TEST(Homography, CollinearPointsRejected) {
  const std::array<PointF, 4> img{PointF{0, 0}, PointF{1, 1}, PointF{2, 2}, PointF{0, 5}};
  const std::array<PointF, 4> tab{PointF{0, 0}, PointF{1, 0}, PointF{1, 1}, PointF{0, 1}};
  EXPECT_THROW(calibrate(img, tab), ArmError);
  EXPECT_THROW(calibrate(tab, img), ArmError);
}

TEST(Homography, InverseRoundTrip) {
  const world::Camera cam;
  const Homography h = camera_homography(cam);
  const Homography inv = h.inverse();
  for (int v = 0; v < cam.height; v += 13) {
    for (int u = 0; u < cam.width; u += 13) {
      const PointF back = inv.map(h.map({double(u), double(v)}));
      ASSERT_NEAR(back.x, u, 1e-9);
      ASSERT_NEAR(back.y, v, 1e-9);
    }
  }
}

TEST(Homography, CameraCalibrationAgreesWithTheCamera) {
  const world::Camera cam;
  const Homography h = camera_homography(cam);
  for (const PointF p : {PointF{0, 0}, PointF{639, 479}, PointF{123.5, 301.25}}) {
    const PointF a = image_to_table(h, p);
    const PointF b = cam.to_table(p.x, p.y);
    EXPECT_NEAR(a.x, b.x, 1e-9);
    EXPECT_NEAR(a.y, b.y, 1e-9);
  }
}

TEST(PlanGrasp, AxisZero) {
  const world::SceneSpec s;
  const ArmContext ctx = context_for(s);
  const auto plan = plan_grasp(standing_at(10, 5, 0, world::camera_for(s, ctx.world)), ctx);
  EXPECT_EQ(plan.grasp.z, 1.5);
  EXPECT_NEAR(plan.grasp.x, 10, 1e-9);
  EXPECT_NEAR(plan.via.x, 6.5, 1e-9);
  EXPECT_NEAR(plan.via.y, 5, 1e-9);
  EXPECT_EQ(plan.via.z, 1.5);
  EXPECT_DOUBLE_EQ(std::hypot(plan.via.x - plan.grasp.x, plan.via.y - plan.grasp.y), 3.5);
  EXPECT_EQ(plan.via.grip, ctx.world.max_open);
}

TEST(PlanGrasp, AxisNinety) {
  const world::SceneSpec s;
  const ArmContext ctx = context_for(s);
  const auto plan = plan_grasp(standing_at(10, 5, 90, world::camera_for(s, ctx.world)), ctx);
  EXPECT_NEAR(plan.via.x, 10, 1e-9);
  EXPECT_NEAR(plan.via.y, 1.5, 1e-9);
  EXPECT_NEAR(plan.grasp.heading, 90, 1e-9);
}

TEST(PlanGrasp, ViaDistanceOverCorpus) {
  world::WorldConfig cfg;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) {
    const auto s = world::random_scene(rng);
    const ArmContext ctx = context_for(s);
    for (const auto& p : percept::perceive(world::render_rgb(world::make_world(s, cfg), cfg, i))) {
      try {
        const auto plan = plan_grasp(p, ctx);
        EXPECT_NEAR(std::hypot(plan.via.x - plan.grasp.x, plan.via.y - plan.grasp.y), 3.5, 1e-12);
        EXPECT_EQ(plan.grasp.z, 1.5);
      } catch (const ArmError&) {
        // out of reach is allowed here
      }
    }
  }
}

TEST(PlanGrasp, BeyondReachFails) {
  const world::SceneSpec s;
  const ArmContext ctx = context_for(s);
  EXPECT_THROW(plan_grasp(standing_at(16, 23.5, 90, world::camera_for(s, ctx.world)), ctx), ArmError);
}

TEST(Feasibility, LettuceTooBigBottleFine) {
  const auto f = load("whites");
  ASSERT_EQ(f.percepts.size(), 3u);
  EXPECT_EQ(feasibility(f.percepts[0], f.ctx), Feasibility::kOk);
  EXPECT_EQ(feasibility(f.percepts[2], f.ctx), Feasibility::kTooBig);
  EXPECT_NEAR(width_inches(f.percepts[2], f.ctx.h), 5.5, 0.3);
}

TEST(Feasibility, FarObjectOutOfReach) {
  world::SceneSpec s;
  s.table_w = 60;
  s.table_h = 44;
  world::ObjSpec o;
  o.id = "far";
  o.cx = 56;
  o.cy = 40;
  o.long_in = 3;
  o.short_in = 1;
  o.deg = 90;
  o.paint = {{{200, 30, 30}, 1.0}};
  s.objects.push_back(o);
  ArmContext ctx = context_for(s);
  ctx.world.camera.in_per_px = 0.1;
  ctx.h = camera_homography(world::camera_for(s, ctx.world));
  const auto ps = percept::perceive(world::render_rgb(world::make_world(s, ctx.world), ctx.world, 1));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(feasibility(ps[0], ctx), Feasibility::kOutOfReach);
}

TEST(Routines, ExtendPairReturnsHome) {
  auto f = load("pronoun1");
  const world::ArmPose start = f.world.arm;
  auto a = make_routine("ExtendHand", 1.0, std::nullopt);
  ASSERT_EQ(run_routine(*a, f.world, f.ctx).status, Status::kDone);
  EXPECT_NEAR(std::hypot(f.world.arm.x - start.x, f.world.arm.y - start.y), 3.0, 0.1);
  auto b = make_routine("ExtendHand", -1.0, std::nullopt);
  ASSERT_EQ(run_routine(*b, f.world, f.ctx).status, Status::kDone);
  EXPECT_NEAR(f.world.arm.x, start.x, 0.1);
  EXPECT_NEAR(f.world.arm.y, start.y, 0.1);
  EXPECT_NEAR(f.world.arm.z, start.z, 0.1);
}

TEST(Routines, GrabCycleLiftsAndPutsBack) {
  auto f = load("pronoun1");
  ASSERT_EQ(f.percepts.size(), 1u);
  const auto before = *f.world.scene.find(f.scene.objects[0].id);
  auto r = make_routine("GrabCycle", 1.0, f.percepts[0]);
  ASSERT_EQ(run_routine(*r, f.world, f.ctx).status, Status::kDone);
  EXPECT_FALSE(f.world.held);
  EXPECT_EQ(f.world.arm.x, f.ctx.world.home.x);
  EXPECT_EQ(f.world.arm.y, f.ctx.world.home.y);
  const auto after = *f.world.scene.find(before.id);
  EXPECT_NEAR(after.cx, before.cx, 0.5);
  EXPECT_NEAR(after.cy, before.cy, 0.5);
}

TEST(Routines, CloseHandOnAirEmpty) {
  auto f = load("empty");
  auto r = make_routine("CloseHand", 1.0, std::nullopt);
  ASSERT_EQ(run_routine(*r, f.world, f.ctx).status, Status::kDone);
  EXPECT_NEAR(f.world.arm.grip, 0.0, 0.11);
  EXPECT_FALSE(f.world.held);
}

TEST(Routines, UnknownNameAndMissingFocus) {
  EXPECT_THROW(make_routine("Juggle", 1.0, std::nullopt), ArmError);
  EXPECT_THROW(make_routine("TablePoint", 1.0, std::nullopt), ArmError);
  EXPECT_TRUE(is_indexical("GrabCycle"));
  EXPECT_FALSE(is_indexical("ExtendHand"));
}

TEST(Routines, EveryRoutineTerminatesWithinBudget) {
  for (const char* scene : {"pronoun4", "whites", "noun_teaching", "supervisor", "verb_teaching"}) {
    const auto f = load(scene);
    for (const auto& name : routine_names()) {
      for (const auto& p : f.percepts) {
        auto w = f.world;
        auto r = make_routine(name, 1.0, p);
        int ticks = 0;
        const auto st = run_routine(*r, w, f.ctx, &ticks);
        EXPECT_NE(st.status, Status::kRunning);
        EXPECT_LE(ticks, f.ctx.arm.tick_budget) << scene << " " << name;
        if (!is_indexical(name)) break;
      }
    }
  }
}

TEST(Routines, BudgetStopsALivelock) {
  struct Spin : Routine {
    RoutineStatus step(world::WorldState&, const ArmContext&) override { return RoutineStatus::running(); }
  } spin;
  auto f = load("empty");
  f.ctx.arm.tick_budget = 50;
  int ticks = 0;
  const auto st = run_routine(spin, f.world, f.ctx, &ticks);
  EXPECT_EQ(st.status, Status::kFailed);
  EXPECT_EQ(ticks, 50);
}

TEST(Macro, RecorderLifecycle) {
  lexmem::Lexicon lex;
  MacroRecorder rec;
  EXPECT_FALSE(macro_append(rec, {"ExtendHand", 1.0}));
  EXPECT_TRUE(rec.steps.empty());
  macro_begin(rec);
  EXPECT_THROW(macro_finish(rec, "nothing", lex), ArmError);
  macro_begin(rec, "poke");
  EXPECT_EQ(rec.pending_name, "poke");
  EXPECT_TRUE(macro_append(rec, {"TablePoint", 1.0}));
  EXPECT_TRUE(macro_append(rec, {"ExtendHand", 1.0}));
  EXPECT_TRUE(macro_append(rec, {"ExtendHand", -1.0}));
  const auto m = macro_finish(rec, "poke", lex);
  EXPECT_EQ(m.arity, 1);
  EXPECT_EQ(lexmem::format_steps(m.steps), "TablePoint 1.0, ExtendHand 1.0, ExtendHand -1.0");
  EXPECT_FALSE(rec.open);
}

TEST(Macro, ArityFollowsIndexicalSteps) {
  lexmem::Lexicon lex;
  EXPECT_EQ(macro_arity({{"ExtendHand", 1.0}, {"ExtendHand", -1.0}}, lex), 0);
  lex.put_macro({"poke", 1, {{"TablePoint", 1.0}, {"ExtendHand", 1.0}, {"ExtendHand", -1.0}}});
  EXPECT_EQ(macro_arity({{"poke", 1.0}, {"OpenHand", 1.0}}, lex), 1);
}

TEST(Macro, ArityOneWithoutFocusFails) {
  auto f = load("pronoun1");
  lexmem::Lexicon lex;
  const lexmem::VerbMacro poke{"poke", 1, {{"TablePoint", 1.0}, {"ExtendHand", 1.0}, {"ExtendHand", -1.0}}};
  EXPECT_EQ(play_macro(poke, std::nullopt, f.world, f.ctx, lex).status.status, Status::kFailed);
}

TEST(Macro, NestedMacroReplaysLikeItsExpansion) {
  auto f = load("verb_teaching");
  lexmem::Lexicon lex;
  lex.put_macro({"poke", 1, {{"TablePoint", 1.0}, {"ExtendHand", 1.0}, {"ExtendHand", -1.0}}});
  const lexmem::VerbMacro double_poke{"jab", 1, {{"poke", 1.0}, {"OpenHand", 1.0}, {"poke", 1.0}}};
  const auto flat = expand_macro(double_poke, lex);
  ASSERT_EQ(flat.size(), 7u);

  auto w1 = f.world;
  const auto r = play_macro(double_poke, f.percepts[1], w1, f.ctx, lex);
  ASSERT_EQ(r.status.status, Status::kDone);
  auto w2 = f.world;
  for (const auto& s : flat) {
    auto rt = make_routine(s.routine, s.param, f.percepts[1]);
    ASSERT_EQ(run_routine(*rt, w2, f.ctx).status, Status::kDone);
  }
  EXPECT_EQ(w1.arm, w2.arm);
  EXPECT_EQ(world::save_scene(w1.scene), world::save_scene(w2.scene));
}

TEST(Macro, RunawayNestingRejected) {
  lexmem::Lexicon lex;
  lex.put_macro({"loop", 0, {{"loop", 1.0}}});
  EXPECT_THROW(expand_macro(*lex.get_macro("loop"), lex), ArmError);
  EXPECT_THROW(expand_macro({"bad", 0, {{"Juggle", 1.0}}}, lex), ArmError);
}

}  // namespace
}  // namespace eli::arm
