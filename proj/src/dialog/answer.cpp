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

// Utterance routing and the response templates.

#include <algorithm>

#include "eli/dialog.hpp"
#include "eli/text.hpp"

namespace eli::dialog {

namespace {

using Kind = Intent::Kind;

Response say(std::string text) { return Response{std::move(text)}; }

bool has(const sgram::SlotSet& slots, const char* name) { return sgram::find_slot(slots, name) != nullptr; }

std::string value_of(const sgram::SlotSet& slots, const char* name) {
  const auto* s = sgram::find_slot(slots, name);
  return s && s->value ? *s->value : std::string();
}

std::string span_text(const std::vector<std::string>& display, int begin, int end) {
  std::vector<std::string> words;
  for (int k = begin; k < end && k < static_cast<int>(display.size()); ++k) {
    words.push_back(display[static_cast<std::size_t>(k)]);
  }
  return join(words, " ");
}

// Supervisor verb for an intent.
std::string action_verb(const Intent& intent) {
  if (intent.kind == Kind::kAct) return intent.verb;
  if (intent.verb == "hand_grab") return "grab";
  if (intent.verb == "hand_give") return "give";
  if (intent.verb == "hand_indicate") return "point";
  return "look";
}

const std::map<std::string, std::pair<std::string, double>>& move_steps() {
  static const std::map<std::string, std::pair<std::string, double>> m{
      {"hand_extend", {"ExtendHand", 1.0}},
      {"hand_retract", {"ExtendHand", -1.0}},
      {"hand_open", {"OpenHand", 1.0}},
      {"hand_close", {"CloseHand", 1.0}},
  };
  return m;
}

std::string step_label(const std::string& routine, double param) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", param);
  return routine + " " + buf;
}

const Response kTrouble{"Sorry, I couldn't finish that."};

}  // namespace

std::vector<Response> Session::route(const sgram::SlotSet& slots,
                                     const std::vector<std::string>& display) {
  perceive();
  if (!has(slots, "ANSWER")) pending_.reset();
  const int n = static_cast<int>(display.size());
  auto query = [&] {
    auto q = ground::query_from_slots(slots, 0, n, display);
    q.pointed = pending_click_;
    return q;
  };

  if (has(slots, "FACT")) return teach_name(slots, display);
  if (has(slots, "NEW-ACT")) {
    std::optional<std::string> verb;
    if (has(slots, "ACT-1")) verb = value_of(slots, "ACT-1");
    if (has(slots, "ACT-0")) verb = value_of(slots, "ACT-0");
    arm::macro_begin(recorder_, verb);
    return {say("Okay, show me.")};
  }
  if (has(slots, "FINISH")) return finish_macro(slots, display);
  if (has(slots, "QUERY")) return answer_query(slots, display);
  if (has(slots, "ANSWER")) return answer_clarification(slots, display);
  if (has(slots, "CMD")) return command({Kind::kCommand, value_of(slots, "CMD")}, slots, query());
  if (has(slots, "MOVE")) return move(value_of(slots, "MOVE"));
  if (has(slots, "ACT-0")) return command({Kind::kAct, value_of(slots, "ACT-0")}, slots, {});
  if (has(slots, "ACT-1")) return command({Kind::kAct, value_of(slots, "ACT-1")}, slots, query());
  return {say("Please rephrase.")};
}

std::vector<Response> Session::teach_name(const sgram::SlotSet& slots,
                                          const std::vector<std::string>& display) {
  const auto* fact = sgram::find_slot(slots, "FACT");
  const sgram::Slot* named = nullptr;
  for (const auto& s : slots) {
    if ((s.name == "NAME" || s.name == "DICT") && s.begin >= fact->end) {
      named = &s;
      break;
    }
  }
  if (!named) return {say("Please rephrase.")};
  const std::string name = span_text(display, named->value_begin, named->value_end);
  if (percepts_.empty()) return {say("I don't see anything.")};

  auto q = ground::query_from_slots(slots, 0, fact->begin, display);
  q.pointed = pending_click_;
  const Intent intent{Kind::kTeach, name};
  const auto res = ground::resolve(q, percepts_, discourse_, lex_, cfg_.ground);
  if (res.outcome == ground::Resolution::Outcome::kNone) return {say("I don't see that.")};
  if (!res.unique()) return clarify(intent, res);
  return act_on(intent, res.id(), std::nullopt, q.pointed.has_value());
}

std::vector<Response> Session::finish_macro(const sgram::SlotSet& slots,
                                            const std::vector<std::string>& display) {
  std::optional<std::string> name;
  if (has(slots, "ACT-1")) name = value_of(slots, "ACT-1");
  if (has(slots, "ACT-0")) name = value_of(slots, "ACT-0");
  if (const auto* d = sgram::find_slot(slots, "DICT"); !name && d) {
    name = to_lower(span_text(display, d->value_begin, d->value_end));
  }
  if (!name) name = recorder_.pending_name;
  if (!recorder_.open || recorder_.steps.empty()) return {say("You haven't shown me anything.")};
  if (!name || name->empty()) return {say("What is it called?")};

  const auto macro = arm::macro_finish(recorder_, *name, lex_);
  lex_.put_macro(macro);
  const auto words = tokenize(macro.name);
  if (words.size() == 1) sgram::add_verb(grammar_, words.front(), macro.arity);
  return {say("Okay. Now I know how to now " + macro.name + (macro.arity == 1 ? " something." : "."))};
}

std::vector<Response> Session::answer_query(const sgram::SlotSet& slots,
                                            const std::vector<std::string>& display) {
  const std::string kind = value_of(slots, "QUERY");
  if (percepts_.empty()) return {say("I don't see anything.")};
  auto q = ground::query_from_slots(slots, 0, static_cast<int>(display.size()), display);
  q.pointed = pending_click_;
  if (q.name && !lex_.knows(*q.name)) return {say("I don't know what " + *q.name + " looks like.")};

  if (kind == "how_many") {
    auto cands = percepts_;
    if (q.name) {
      const auto ids = lex_.find_instances(*q.name, percepts_);
      std::erase_if(cands, [&](const percept::ObjectPercept& p) {
        return std::find(ids.begin(), ids.end(), p.id) == ids.end();
      });
    }
    for (const auto& c : q.colors) cands = ground::filter_color(cands, c, cfg_.ground);
    if (cands.empty()) return {say("I don't see any.")};
    return {say("I see " + count_word(cands.size()) + ".")};
  }

  const Intent intent{Kind::kQuery, kind};
  const auto res = ground::resolve(q, percepts_, discourse_, lex_, cfg_.ground);
  if (res.outcome == ground::Resolution::Outcome::kNone) return {say("I don't see that.")};
  if (!res.unique()) return clarify(intent, res);
  return act_on(intent, res.id(), q.name, q.pointed.has_value());
}

std::vector<Response> Session::answer_clarification(const sgram::SlotSet& slots,
                                                    const std::vector<std::string>& display) {
  if (!pending_) return {say("Okay.")};
  const Pending p = *pending_;
  pending_.reset();
  const bool yes = value_of(slots, "ANSWER") == "yes";

  if (p.offer) {
    if (!yes) return {say("Okay.")};
    ground::ReferenceQuery q;
    q.name = *p.offer;
    return command(p.intent, slots, q);
  }
  if (yes) {
    if (!p.suggested) return {say("Please point to it.")};
    return act_on(p.intent, *p.suggested, std::nullopt, false);
  }

  auto q = ground::query_from_slots(slots, 0, static_cast<int>(display.size()), display);
  q.pointed = pending_click_;
  const bool described = q.name || !q.colors.empty() || q.size_rank || q.pos_rank || q.pronoun ||
                         q.demonstrative || q.pointed;
  if (!described) {
    std::vector<int> rest;
    for (int id : p.candidates) {
      if (id != p.suggested) rest.push_back(id);
    }
    if (rest.size() != 1) return {say("Please point to it.")};
    return act_on(p.intent, rest.front(), std::nullopt, false);
  }
  const auto res = ground::resolve(q, percepts_, discourse_, lex_, cfg_.ground);
  if (res.outcome == ground::Resolution::Outcome::kNone) return {say("I don't see that.")};
  if (!res.unique()) return clarify(p.intent, res);
  return act_on(p.intent, res.id(), q.name, q.pointed.has_value());
}

std::vector<Response> Session::clarify(const Intent& intent, const ground::Resolution& res) {
  ground::note(discourse_, res);
  Pending p{intent, res.ids, std::nullopt, std::nullopt};
  Response r;
  if (res.ids.size() == 2) {
    p.suggested = res.ids.front();
    discourse_.last_suggested = p.suggested;
    r = Response{"Do you mean this one?", p.suggested, std::nullopt, "confirm"};
  } else {
    r = Response{"I'm confused. Which of the " + std::to_string(res.ids.size()) +
                     " things do you mean?",
                 std::nullopt, std::nullopt, "which"};
  }
  pending_ = p;
  return {r};
}

std::vector<Response> Session::offer_alternative(const overseer::Verdict& v) {
  pending_ = Pending{{Kind::kCommand, "hand_give"}, {}, std::nullopt, v.alternative};
  return {Response{"Do you want " + v.reason + ", " + v.alternative + "?", std::nullopt,
                   std::nullopt, "confirm"}};
}

std::vector<Response> Session::command(const Intent& intent, const sgram::SlotSet& slots,
                                       ground::ReferenceQuery q) {
  const bool give = intent.kind == Kind::kCommand && intent.verb == "hand_give";
  if (intent.kind == Kind::kAct && !lex_.get_macro(intent.verb)) {
    const bool needs_object = has(slots, "ACT-1");
    arm::macro_begin(recorder_, intent.verb);
    if (needs_object && !percepts_.empty()) {
      const auto res = ground::resolve(q, percepts_, discourse_, lex_, cfg_.ground);
      if (res.unique()) ground::note(discourse_, res);
    }
    return {say("I don't know how to " + intent.verb + (needs_object ? " something." : "."))};
  }
  if (intent.kind == Kind::kAct && lex_.get_macro(intent.verb)->arity == 0) {
    return act_on(intent, std::nullopt, std::nullopt, false);
  }
  if (percepts_.empty()) return {say("I don't see anything.")};

  std::vector<Response> out;
  auto ask_supervisor = [&](const std::string& name) {
    // the supervisor may know of a substitute the robot cannot find itself
    const auto v = submit({next_act_++, "give", std::nullopt, name, true});
    if (v && v->kind == overseer::Verdict::Kind::kCounter) {
      for (auto& r : offer_alternative(*v)) out.push_back(std::move(r));
    }
  };
  if (q.name && !lex_.knows(*q.name)) {
    out.push_back(say("I don't know what " + *q.name + " looks like."));
    if (give) ask_supervisor(*q.name);
    return out;
  }
  const auto res = ground::resolve(q, percepts_, discourse_, lex_, cfg_.ground);
  if (res.outcome == ground::Resolution::Outcome::kNone) {
    if (!q.name) return {say("I don't see that.")};
    out.push_back(say("I don't see any " + lex_.display_name(*q.name) + "."));
    if (give) ask_supervisor(lex_.display_name(*q.name));
    return out;
  }
  if (!res.unique()) return clarify(intent, res);
  return act_on(intent, res.id(), q.name, q.pointed.has_value());
}

std::vector<Response> Session::act_on(const Intent& intent, std::optional<int> id,
                                      const std::optional<std::string>& requested, bool pointed) {
  std::optional<percept::ObjectPercept> focus;
  if (id) {
    const auto* p = find_percept(*id);
    if (!p) return {say("I don't see that.")};
    focus = *p;
    ground::note(discourse_, ground::Resolution{ground::Resolution::Outcome::kUnique, {*id}});
  }

  if (intent.kind == Kind::kTeach) {
    lex_.learn_name(intent.verb, *focus);
    sgram::add_name(grammar_, tokenize(intent.verb));
    const std::string shown = lex_.display_name(intent.verb);
    if (pointed) return {say("Okay. That is " + shown + ".")};
    return {Response{"Okay. This is " + shown + ".", id}};
  }

  if (intent.kind == Kind::kQuery) {
    if (intent.verb == "where_is") return {Response{"Here.", id}};
    if (intent.verb == "what_name") {
      const std::string n = name_of(*focus);
      return {say(n.empty() ? "I don't know." : "It's " + n + ".")};
    }
    const auto& d = focus->dominant;
    if (d.empty()) return {say("I can't tell.")};
    if (d.size() == 1) return {say("It's " + d[0] + ".")};
    return {say("It's " + d[0] + " with a little " + d[1] + ".")};
  }

  if (intent.kind == Kind::kCommand && intent.verb == "hand_select") return {Response{"", id}};

  const bool carries = intent.kind == Kind::kCommand &&
                       (intent.verb == "hand_grab" || intent.verb == "hand_give");
  if (carries && world_.held) return {say("My hand is full.")};
  if (focus) {
    const auto f = arm::feasibility(*focus, ctx_);
    if (f == arm::Feasibility::kTooBig && carries) return {say("Sorry, that's too big for me.")};
    if (f == arm::Feasibility::kOutOfReach) return {say("Sorry, I can't reach that.")};
  }

  std::optional<std::string> name;
  if (requested) name = lex_.display_name(*requested);
  else if (focus && !name_of(*focus).empty()) name = name_of(*focus);
  const bool give = intent.kind == Kind::kCommand && intent.verb == "hand_give";
  if (const auto v = submit({next_act_++, action_verb(intent), id, name, give})) {
    switch (v->kind) {
      case overseer::Verdict::Kind::kAccept:
        break;
      case overseer::Verdict::Kind::kVeto:
        if (v->reason == "recent dose") return {say("You just had " + name.value_or("that") + ".")};
        return {say("But " + v->reason + ".")};
      case overseer::Verdict::Kind::kCounter:
        return offer_alternative(*v);
      case overseer::Verdict::Kind::kError:
        return {say("Sorry, I can't check that right now.")};
    }
  }

  const std::string ref = id ? " " + std::to_string(*id) : "";
  if (intent.kind == Kind::kAct) {
    const auto* macro = lex_.get_macro(intent.verb);
    const auto played = arm::play_macro(*macro, focus, world_, ctx_, lex_);
    if (played.status.status != arm::Status::kDone) return {kTrouble};
    arm::macro_append(recorder_, {macro->name, 1.0});
    return {Response{"", std::nullopt, macro->name + ref}};
  }
  if (intent.verb == "hand_indicate") {
    if (run_step("TablePoint", 1.0, focus).status != arm::Status::kDone) return {kTrouble};
    return {Response{"", id, step_label("TablePoint", 1.0)}};
  }
  if (intent.verb == "hand_grab") {
    if (run_step("GrabCycle", 1.0, focus).status != arm::Status::kDone) return {kTrouble};
    return {Response{"", std::nullopt, "GrabCycle" + ref}};
  }
  // hand_give: carry it over, then wait for the human hand
  const auto place = arm::plan_grasp(*focus, ctx_).grasp;
  if (run_step("GiveCycle", 1.0, focus).status != arm::Status::kDone) return {kTrouble};
  handoff_ = gesture::HandoffMonitor{true, false, world_.clock, 0};
  handoff_place_ = place;
  handoff_object_ = id;
  return {Response{"Here you go.", std::nullopt, "GiveCycle" + ref}};
}

std::vector<Response> Session::move(const std::string& which) {
  const auto it = move_steps().find(which);
  if (it == move_steps().end()) return {say("Please rephrase.")};
  const auto& [routine, param] = it->second;
  if (run_step(routine, param, std::nullopt).status != arm::Status::kDone) return {kTrouble};
  return {Response{"", std::nullopt, step_label(routine, param)}};
}

}  // namespace eli::dialog
