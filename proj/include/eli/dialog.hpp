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

// Conversation sessions: utterances in, spoken and physical responses out.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eli/armfsm.hpp"
#include "eli/gesture.hpp"
#include "eli/ground.hpp"
#include "eli/lexmem.hpp"
#include "eli/overseer.hpp"
#include "eli/percept.hpp"
#include "eli/sgram.hpp"
#include "eli/worldsim.hpp"

namespace eli::dialog {

/// Directory holding the bundled grammar, scenes, lexicon and supervisor data.
std::string default_data_dir();

struct Response {
  std::string say;
  std::optional<int> point_at{};
  std::optional<std::string> executed{};  // "GrabCycle 3", "ExtendHand 1.0", "poke 2"
  std::optional<std::string> asks{};      // "which" or "confirm"

  friend bool operator==(const Response&, const Response&) = default;
};

/// "Do you mean this one? [point 2]", "Here you go. [GiveCycle 4]".
std::string render(const Response& r);

enum class SupervisorMode { kOff, kLocal, kRemote };

struct SessionConfig {
  std::string data_dir = default_data_dir();
  world::WorldConfig world;
  arm::ArmConfig arm;
  percept::PerceptConfig percept;
  gesture::GestureConfig gesture;
  ground::GroundConfig ground;
  lexmem::LexConfig lex;
  std::optional<std::string> lexicon_path;  // loaded at construction
  std::uint64_t seed = 1;
  double mishear = 0.0;  // chance that a listed word is heard as its stand-in
  std::map<std::string, std::string> mishear_table{{"aspirin", "offering"}};
  SupervisorMode supervisor = SupervisorMode::kOff;
  overseer::ClientConfig client;  // kRemote
  double frames_per_second = 30.0;
};

/// What a resolved referent is wanted for.
struct Intent {
  enum class Kind { kCommand, kAct, kTeach, kQuery };
  Kind kind = Kind::kCommand;
  std::string verb;  // CMD value, learned verb, name being taught or QUERY value
};

/// Open clarification or offer awaiting a yes/no answer.
struct Pending {
  Intent intent;
  std::vector<int> candidates;
  std::optional<int> suggested;
  std::optional<std::string> offer;  // counter-proposed name
};

struct MacroView {
  bool recording = false;
  std::optional<std::string> name;
  std::vector<lexmem::MacroStep> steps;
};

class Session {
 public:
  explicit Session(SessionConfig cfg = {});
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Replaces the table contents; discourse and pending gestures reset.
  void load_scene(const world::SceneSpec& scene);
  /// Loads `<data_dir>/scenes/<name>.scene`.
  void load_scene_named(const std::string& name);
  /// Puts the last loaded scene back and clears the conversation state.
  void reset();
  /// Replaces the lexicon and rebuilds the grammar from its journal.
  void set_lexicon(lexmem::Lexicon lex);
  /// Loads `<data_dir>/lexicon/<name>.lex`.
  void load_lexicon_named(const std::string& name);
  void set_supervisor(SupervisorMode mode);

  std::vector<Response> handle_utterance(const std::string& text);

  /// A human reach toward an image point, run through the gesture tracker.
  std::vector<Response> click(PointF at);
  /// Reach toward the centre of percept `id`'s box.
  std::vector<Response> point_at_object(int id);
  /// Reach into the handoff zone.
  std::vector<Response> transfer_click();
  /// Lets simulated time pass.
  std::vector<Response> wait(double seconds);

  const world::WorldState& world() const { return world_; }
  const std::vector<percept::ObjectPercept>& percepts();
  Frame frame() const;
  const lexmem::Lexicon& lexicon() const { return lex_; }
  const sgram::Grammar& grammar() const { return grammar_; }
  const ground::DiscourseState& discourse() const { return discourse_; }
  MacroView macro_state() const;
  /// Learned name of a percept, or empty.
  std::string name_of(const percept::ObjectPercept& p) const;
  double now_seconds() const;
  bool handoff_active() const { return handoff_.active; }
  std::optional<overseer::LifeLog> supervisor_log() const;

 private:
  void perceive();
  const percept::ObjectPercept* find_percept(int id);
  std::vector<std::string> scene_names();

  std::vector<Response> route(const sgram::SlotSet& slots, const std::vector<std::string>& display);
  std::vector<Response> teach_name(const sgram::SlotSet& slots,
                                   const std::vector<std::string>& display);
  std::vector<Response> finish_macro(const sgram::SlotSet& slots,
                                     const std::vector<std::string>& display);
  std::vector<Response> answer_query(const sgram::SlotSet& slots,
                                     const std::vector<std::string>& display);
  std::vector<Response> answer_clarification(const sgram::SlotSet& slots,
                                             const std::vector<std::string>& display);
  std::vector<Response> command(const Intent& intent, const sgram::SlotSet& slots,
                                ground::ReferenceQuery q);
  std::vector<Response> act_on(const Intent& intent, std::optional<int> id,
                               const std::optional<std::string>& requested, bool pointed);
  std::vector<Response> move(const std::string& which);
  std::vector<Response> clarify(const Intent& intent, const ground::Resolution& res);
  std::vector<Response> offer_alternative(const overseer::Verdict& v);
  std::optional<overseer::Verdict> submit(const overseer::ActionSpec& action);
  /// Runs one routine; on success it joins an open recording.
  arm::RoutineStatus run_step(const std::string& routine, double param,
                              const std::optional<percept::ObjectPercept>& focus);
  std::vector<Response> handoff(const gesture::GestureEvent& ev);

  SessionConfig cfg_;
  sgram::Grammar base_grammar_;
  sgram::Grammar grammar_;
  lexmem::Lexicon lex_;
  world::WorldState world_;
  arm::ArmContext ctx_;
  std::vector<percept::ObjectPercept> percepts_;
  std::int64_t perceived_at_ = -1;
  ground::DiscourseState discourse_;
  arm::MacroRecorder recorder_;
  world::SceneSpec scene_;
  gesture::BackgroundModel background_;
  std::optional<PointF> pending_click_;
  gesture::HandoffMonitor handoff_;
  std::optional<world::ArmPose> handoff_place_;
  std::optional<int> handoff_object_;
  std::optional<Pending> pending_;
  std::unique_ptr<overseer::Supervisor> local_supervisor_;
  std::unique_ptr<overseer::SupervisorClient> client_;
  int next_act_ = 1;
  std::mt19937_64 rng_;
};

// ---- golden scripts ----

/// One scripted exchange and what the session said back.
struct ScriptStep {
  int line = 0;
  std::string input;                  // "U: ..." or "!point 3"
  std::vector<std::string> expected;  // rendered responses
  std::vector<std::string> actual;
};

struct ScriptResult {
  std::vector<ScriptStep> steps;
  int mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

/// Replays a golden script:
///
///   # comment
///   #scene <name>          load a bundled scene
///   #lexicon <name>        start from a bundled lexicon
///   #supervisor local|off  switch vetting
///   U: <utterance>
///   R: <rendered response> one line per expected response
///   !point <id> | !click <x> <y> | !transfer | !wait <seconds>
///
/// Other `#` lines are comments. Throws LoadError for malformed lines.
ScriptResult run_script(Session& session, const std::string& text);
std::string format_result(const ScriptResult& result);

// ---- session wire protocol ----

/// Handles one client JSON line and returns the engine's JSON lines.
/// Client messages: utter{text}, click{x,y}, transfer_click, reset,
/// load_scene{name}. Engine messages: say, ask, point{id}, macro_state,
/// state{frame,percepts}, error{message}.
std::vector<std::string> handle_wire_line(Session& session, const std::string& line);
/// The `state` message for the current frame.
std::string state_message(Session& session);

/// Serves one session per connection until stop() is called on the
/// returned server.
std::unique_ptr<net::LineServer> serve_sessions(const std::string& host, int port,
                                                SessionConfig cfg,
                                                std::optional<std::string> scene = std::nullopt);

}  // namespace eli::dialog
