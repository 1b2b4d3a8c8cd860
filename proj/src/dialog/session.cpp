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
#include <stdexcept>

#include "eli/dialog.hpp"
#include "eli/text.hpp"

namespace eli::dialog {

std::string default_data_dir() {
#ifdef ELI_DATA_DIR
  return ELI_DATA_DIR;
#else
  return "data";
#endif
}

std::string render(const Response& r) {
  std::vector<std::string> parts;
  if (!r.say.empty()) parts.push_back(r.say);
  if (r.point_at) parts.push_back("[point " + std::to_string(*r.point_at) + "]");
  if (r.executed) parts.push_back("[" + *r.executed + "]");
  return join(parts, " ");
}

Session::Session(SessionConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) {
  base_grammar_ = sgram::load_grammar_file(cfg_.data_dir + "/grammar/eli.sgm");
  grammar_ = base_grammar_;
  lex_ = lexmem::Lexicon(cfg_.lex);
  if (cfg_.lexicon_path) set_lexicon(lexmem::load_lexicon_file(*cfg_.lexicon_path, cfg_.lex));
  set_supervisor(cfg_.supervisor);
  load_scene(world::SceneSpec{});
}

void Session::load_scene(const world::SceneSpec& scene) {
  scene_ = scene;
  world_ = world::make_world(scene, cfg_.world);
  ctx_ = arm::ArmContext{cfg_.world, cfg_.arm,
                         arm::camera_homography(world::camera_for(scene, cfg_.world))};
  perceived_at_ = -1;
  discourse_ = {};
  pending_click_.reset();
  pending_.reset();
  handoff_ = {};
  handoff_place_.reset();
  handoff_object_.reset();
  background_ = {frame(), world_.clock};
}

void Session::load_scene_named(const std::string& name) {
  load_scene(world::load_scene_file(cfg_.data_dir + "/scenes/" + name + ".scene"));
}

void Session::reset() {
  recorder_ = {};
  load_scene(scene_);
}

void Session::set_lexicon(lexmem::Lexicon lex) {
  lex_ = std::move(lex);
  grammar_ = base_grammar_;
  for (const auto& g : lex_.journal()) {
    if (g.kind == lexmem::GramEntry::Kind::kName) {
      sgram::add_name(grammar_, g.words);
    } else if (g.words.size() == 1) {
      sgram::add_verb(grammar_, g.words.front(), g.arity);
    }
  }
}

void Session::load_lexicon_named(const std::string& name) {
  set_lexicon(lexmem::load_lexicon_file(cfg_.data_dir + "/lexicon/" + name + ".lex", cfg_.lex));
}

void Session::set_supervisor(SupervisorMode mode) {
  cfg_.supervisor = mode;
  local_supervisor_.reset();
  client_.reset();
  if (mode == SupervisorMode::kLocal) {
    local_supervisor_ = overseer::Supervisor::from_dir(cfg_.data_dir + "/supervisor");
  } else if (mode == SupervisorMode::kRemote) {
    client_ = std::make_unique<overseer::SupervisorClient>(cfg_.client);
  }
}

Frame Session::frame() const {
  return world::render_rgb(world_, cfg_.world,
                           cfg_.seed * 1000003ULL + static_cast<std::uint64_t>(world_.clock));
}

void Session::perceive() {
  if (perceived_at_ == world_.clock) return;
  percepts_ = percept::perceive(frame(), nullptr, cfg_.percept);
  perceived_at_ = world_.clock;
}

const std::vector<percept::ObjectPercept>& Session::percepts() {
  perceive();
  return percepts_;
}

const percept::ObjectPercept* Session::find_percept(int id) {
  perceive();
  for (const auto& p : percepts_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::string Session::name_of(const percept::ObjectPercept& p) const {
  const auto r = lex_.recognize(p);
  return r ? lex_.display_name(r->name) : std::string();
}

std::vector<std::string> Session::scene_names() {
  std::vector<std::string> out;
  for (const auto& p : percepts()) {
    const std::string n = name_of(p);
    if (!n.empty() && std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

double Session::now_seconds() const {
  return static_cast<double>(world_.clock) / cfg_.frames_per_second;
}

MacroView Session::macro_state() const {
  return {recorder_.open, recorder_.pending_name, recorder_.steps};
}

std::optional<overseer::LifeLog> Session::supervisor_log() const {
  if (!local_supervisor_) return std::nullopt;
  return local_supervisor_->log();
}

std::optional<overseer::Verdict> Session::submit(const overseer::ActionSpec& action) {
  if (cfg_.supervisor == SupervisorMode::kOff) return std::nullopt;
  overseer::Proposal p;
  p.id = "p" + std::to_string(action.act);
  p.now = now_seconds();
  p.triples = overseer::encode_proposal(action, scene_names());
  if (local_supervisor_) return local_supervisor_->handle(p);
  return client_->submit(p);
}

arm::RoutineStatus Session::run_step(const std::string& routine, double param,
                                     const std::optional<percept::ObjectPercept>& focus) {
  arm::RoutineStatus st;
  try {
    auto r = arm::make_routine(routine, param, focus);
    st = arm::run_routine(*r, world_, ctx_);
  } catch (const arm::ArmError& e) {
    st = arm::RoutineStatus::failed(e.what());
  }
  if (st.status == arm::Status::kDone) arm::macro_append(recorder_, {routine, param});
  return st;
}

std::vector<Response> Session::handle_utterance(const std::string& text) {
  std::vector<std::string> tokens = tokenize(text);
  std::vector<std::string> display = tokenize_keep_case(text);
  if (tokens.empty()) return {};
  if (cfg_.mishear > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const auto it = cfg_.mishear_table.find(tokens[i]);
      if (it != cfg_.mishear_table.end() && coin(rng_) < cfg_.mishear) {
        tokens[i] = it->second;
        display[i] = it->second;
      }
    }
  }
  background_ = {frame(), world_.clock};

  const auto parsed = sgram::parse(grammar_, tokens);
  if (!parsed) {
    const auto& attn = grammar_.attention_words();
    const bool addressed = std::any_of(tokens.begin(), tokens.end(), [&](const std::string& t) {
      return std::find(attn.begin(), attn.end(), t) != attn.end();
    });
    if (!addressed) return {};
    pending_click_.reset();
    return {Response{"Please rephrase."}};
  }
  const auto slots = sgram::extract_slots(grammar_, *parsed->root, tokens);
  auto out = route(slots, display);
  pending_click_.reset();
  return out;
}

std::vector<Response> Session::click(PointF at) {
  const Frame bg = frame();
  gesture::PointerTrack track;
  std::optional<gesture::GestureEvent> event;
  for (const auto& f : gesture::synth_reach(bg, at)) {
    ++world_.clock;
    const auto mask = gesture::motion_mask(bg, f, cfg_.gesture);
    auto tr = gesture::track_pointer(track, mask, world_.clock, cfg_.gesture);
    track = std::move(tr.track);
    if (tr.event && !event) event = tr.event;
  }
  if (!event) return {};
  if (handoff_.active && cfg_.gesture.transfer_zone.contains(event->at.x, event->at.y)) {
    return handoff(*event);
  }
  pending_click_ = PointF{static_cast<double>(event->at.x), static_cast<double>(event->at.y)};
  return {};
}

std::vector<Response> Session::point_at_object(int id) {
  const auto* p = find_percept(id);
  if (!p) throw std::invalid_argument("no object " + std::to_string(id) + " in view");
  const BBox& b = p->blob.bbox;
  return click(PointF{0.5 * (b.x0 + b.x1), 0.5 * (b.y0 + b.y1)});
}

std::vector<Response> Session::transfer_click() {
  const BBox& z = cfg_.gesture.transfer_zone;
  return click(PointF{0.5 * (z.x0 + z.x1), 0.5 * (z.y0 + z.y1)});
}

std::vector<Response> Session::wait(double seconds) {
  world_.clock += static_cast<std::int64_t>(seconds * cfg_.frames_per_second);
  if (gesture::handoff_step(handoff_, std::nullopt, world_.clock, cfg_.gesture) ==
      gesture::HandoffPhase::kAbort) {
    handoff_place_.reset();
    handoff_object_.reset();
    return {Response{"Okay, keep it."}};
  }
  return {};
}

std::vector<Response> Session::handoff(const gesture::GestureEvent& ev) {
  const auto phase = gesture::handoff_step(handoff_, ev, world_.clock, cfg_.gesture);
  if (phase == gesture::HandoffPhase::kRelease) {
    auto r = arm::make_routine("OpenHand", 1.0, std::nullopt);
    const auto st = arm::run_routine(*r, world_, ctx_);
    if (st.status != arm::Status::kDone) return {Response{"Sorry, I couldn't let go."}};
    return {Response{"", std::nullopt, "release"}};
  }
  if (phase == gesture::HandoffPhase::kRegrasp && handoff_place_) {
    auto r = arm::make_regrasp(*handoff_place_);
    const auto st = arm::run_routine(*r, world_, ctx_);
    const int id = handoff_object_.value_or(0);
    handoff_place_.reset();
    handoff_object_.reset();
    if (st.status != arm::Status::kDone) return {Response{"Sorry, I couldn't take it back."}};
    return {Response{"Thanks.", std::nullopt, "replace " + std::to_string(id)}};
  }
  return {};
}

}  // namespace eli::dialog
