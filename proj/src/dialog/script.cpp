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

#include <sstream>
#include <stdexcept>

#include "eli/dialog.hpp"
#include "eli/text.hpp"

namespace eli::dialog {

namespace {

std::vector<std::string> rendered(const std::vector<Response>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(render(r));
  return out;
}

std::vector<Response> gesture_command(Session& s, const std::vector<std::string>& tok, int line) {
  auto number = [&](std::size_t i) {
    if (tok.size() <= i) throw LoadError(line, tok[0] + ": missing argument");
    const auto v = parse_double(tok[i]);
    if (!v) throw LoadError(line, tok[0] + ": bad number '" + tok[i] + "'");
    return *v;
  };
  if (tok[0] == "!point") {
    try {
      return s.point_at_object(static_cast<int>(number(1)));
    } catch (const std::invalid_argument& e) {
      return {Response{std::string("<") + e.what() + ">"}};
    }
  }
  if (tok[0] == "!click") return s.click(PointF{number(1), number(2)});
  if (tok[0] == "!transfer") return s.transfer_click();
  if (tok[0] == "!wait") return s.wait(number(1));
  throw LoadError(line, "unknown gesture command '" + tok[0] + "'");
}

}  // namespace

ScriptResult run_script(Session& session, const std::string& text) {
  ScriptResult result;
  std::optional<ScriptStep> step;
  auto flush = [&] {
    if (!step) return;
    if (step->expected != step->actual) ++result.mismatches;
    result.steps.push_back(std::move(*step));
    step.reset();
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw);
    if (body.empty()) continue;
    if (starts_with(body, "#scene ")) {
      flush();
      session.load_scene_named(trim(body.substr(7)));
    } else if (starts_with(body, "#lexicon ")) {
      flush();
      session.load_lexicon_named(trim(body.substr(9)));
    } else if (starts_with(body, "#supervisor ")) {
      flush();
      const std::string mode = trim(body.substr(12));
      if (mode == "local") {
        session.set_supervisor(SupervisorMode::kLocal);
      } else if (mode == "off") {
        session.set_supervisor(SupervisorMode::kOff);
      } else {
        throw LoadError(line, "supervisor mode must be local or off");
      }
    } else if (body[0] == '#') {
      continue;
    } else if (starts_with(body, "U:")) {
      flush();
      step = ScriptStep{line, body, {}, rendered(session.handle_utterance(trim(body.substr(2))))};
    } else if (starts_with(body, "R:")) {
      if (!step) throw LoadError(line, "response without a preceding input");
      step->expected.push_back(trim(body.substr(2)));
    } else if (body[0] == '!') {
      flush();
      step = ScriptStep{line, body, {}, rendered(gesture_command(session, split_ws(body), line))};
    } else {
      throw LoadError(line, "expected U:, R:, a ! command or a # directive");
    }
  }
  flush();
  return result;
}

std::string format_result(const ScriptResult& result) {
  std::ostringstream out;
  for (const auto& s : result.steps) {
    const bool ok = s.expected == s.actual;
    out << (ok ? "  ok    " : "  FAIL  ") << "line " << s.line << "  " << s.input << '\n';
    if (ok) continue;
    for (const auto& e : s.expected) out << "          want: " << e << '\n';
    for (const auto& a : s.actual) out << "          got:  " << a << '\n';
  }
  out << (result.ok() ? "script passed" : "script failed: " + std::to_string(result.mismatches) +
                                              " mismatched step(s)")
      << '\n';
  return out.str();
}

}  // namespace eli::dialog
