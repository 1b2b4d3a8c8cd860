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

#include "eli/armfsm.hpp"

namespace eli::arm {

namespace {

constexpr int kMaxNesting = 8;

bool step_indexical(const lexmem::MacroStep& s, const lexmem::Lexicon& lex) {
  if (is_routine(s.routine)) return is_indexical(s.routine);
  const auto* m = lex.get_macro(s.routine);
  return m && m->arity == 1;
}

void expand_into(const lexmem::VerbMacro& macro, const lexmem::Lexicon& lex, int depth,
                 std::vector<lexmem::MacroStep>& out) {
  if (depth > kMaxNesting) throw ArmError("macro nesting too deep at '" + macro.name + "'");
  for (const auto& s : macro.steps) {
    if (is_routine(s.routine)) {
      out.push_back(s);
    } else if (const auto* inner = lex.get_macro(s.routine)) {
      expand_into(*inner, lex, depth + 1, out);
    } else {
      throw ArmError("unknown step '" + s.routine + "'");
    }
  }
}

}  // namespace

void macro_begin(MacroRecorder& rec, std::optional<std::string> name) {
  rec.open = true;
  rec.pending_name = std::move(name);
  rec.steps.clear();
}

bool macro_append(MacroRecorder& rec, const lexmem::MacroStep& step) {
  if (!rec.open) return false;
  rec.steps.push_back(step);
  return true;
}

int macro_arity(const std::vector<lexmem::MacroStep>& steps, const lexmem::Lexicon& lex) {
  return std::any_of(steps.begin(), steps.end(),
                     [&](const lexmem::MacroStep& s) { return step_indexical(s, lex); })
             ? 1
             : 0;
}

lexmem::VerbMacro macro_finish(MacroRecorder& rec, const std::string& name,
                               const lexmem::Lexicon& lex) {
  if (!rec.open || rec.steps.empty()) throw ArmError("no steps were recorded");
  lexmem::VerbMacro m{name, macro_arity(rec.steps, lex), rec.steps};
  rec = MacroRecorder{};
  return m;
}

std::vector<lexmem::MacroStep> expand_macro(const lexmem::VerbMacro& macro,
                                            const lexmem::Lexicon& lex) {
  std::vector<lexmem::MacroStep> out;
  expand_into(macro, lex, 0, out);
  return out;
}

PlayResult play_macro(const lexmem::VerbMacro& macro,
                      const std::optional<percept::ObjectPercept>& focus, world::WorldState& w,
                      const ArmContext& ctx, const lexmem::Lexicon& lex) {
  PlayResult out;
  if (macro.arity == 1 && !focus) {
    out.status = RoutineStatus::failed(macro.name + " needs an object");
    return out;
  }
  std::vector<lexmem::MacroStep> steps;
  try {
    steps = expand_macro(macro, lex);
  } catch (const ArmError& e) {
    out.status = RoutineStatus::failed(e.what());
    return out;
  }
  for (const auto& s : steps) {
    std::unique_ptr<Routine> r;
    try {
      r = make_routine(s.routine, s.param, focus);
    } catch (const ArmError& e) {
      out.status = RoutineStatus::failed(e.what());
      out.stream.push_back(out.status);
      return out;
    }
    const RoutineStatus st = run_routine(*r, w, ctx);
    out.stream.push_back(st);
    if (st.status != Status::kDone) {
      out.status = st;
      return out;
    }
  }
  out.status = RoutineStatus::done();
  return out;
}

}  // namespace eli::arm
