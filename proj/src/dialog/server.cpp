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

#include <stdexcept>

#include "eli/dialog.hpp"
#include "eli/png_io.hpp"
#include "eli/text.hpp"
#include "json.hpp"

namespace eli::dialog {

namespace {

using nlohmann::json;

// client text can carry invalid UTF-8; never let it break a reply
std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

std::string error_message(const std::string& what) {
  return dump(json{{"type", "error"}, {"message", what}});
}

void append_responses(std::vector<std::string>& out, const std::vector<Response>& rs) {
  for (const auto& r : rs) {
    if (r.asks) {
      out.push_back(dump(json{{"type", "ask"}, {"text", r.say}, {"kind", *r.asks}}));
    } else if (!r.say.empty() || r.executed) {
      json m{{"type", "say"}, {"text", r.say}};
      m["executed"] = r.executed ? json(*r.executed) : json(nullptr);
      out.push_back(dump(m));
    }
    if (r.point_at) out.push_back(dump(json{{"type", "point"}, {"id", *r.point_at}}));
  }
}

std::string macro_message(const Session& s) {
  const auto m = s.macro_state();
  json steps = json::array();
  for (const auto& st : m.steps) steps.push_back(json{{"routine", st.routine}, {"param", st.param}});
  return dump(json{{"type", "macro_state"},
                   {"recording", m.recording},
                   {"name", m.name ? json(*m.name) : json(nullptr)},
                   {"steps", steps}});
}

bool safe_scene_name(const std::string& name) {
  return !name.empty() && name.find('/') == std::string::npos &&
         name.find('\\') == std::string::npos && name.find("..") == std::string::npos;
}

}  // namespace

std::string state_message(Session& session) {
  json percepts = json::array();
  for (const auto& p : session.percepts()) {
    const auto& b = p.blob.bbox;
    const std::string name = session.name_of(p);
    percepts.push_back(json{{"id", p.id},
                            {"bbox", {b.x0, b.y0, b.x1, b.y1}},
                            {"base_pt", {p.blob.base_pt.x, p.blob.base_pt.y}},
                            {"dominant", p.dominant},
                            {"name", name.empty() ? json(nullptr) : json(name)}});
  }
  return dump(json{{"type", "state"},
                   {"clock", session.world().clock},
                   {"frame", base64_encode(encode_png(session.frame()))},
                   {"percepts", percepts}});
}

std::vector<std::string> handle_wire_line(Session& session, const std::string& line) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::exception& e) {
    return {error_message(std::string("malformed JSON: ") + e.what())};
  }
  if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
    return {error_message("message needs a string 'type'")};
  }
  const std::string type = msg["type"];
  std::vector<std::string> out;
  try {
    if (type == "utter") {
      if (!msg.contains("text") || !msg["text"].is_string()) return {error_message("utter needs 'text'")};
      append_responses(out, session.handle_utterance(msg["text"].get<std::string>()));
    } else if (type == "click") {
      if (!msg.contains("x") || !msg.contains("y") || !msg["x"].is_number() || !msg["y"].is_number()) {
        return {error_message("click needs numeric 'x' and 'y'")};
      }
      append_responses(out, session.click(PointF{msg["x"].get<double>(), msg["y"].get<double>()}));
    } else if (type == "transfer_click") {
      append_responses(out, session.transfer_click());
    } else if (type == "reset") {
      session.reset();
    } else if (type == "load_scene") {
      if (!msg.contains("name") || !msg["name"].is_string()) return {error_message("load_scene needs 'name'")};
      const std::string name = msg["name"];
      if (!safe_scene_name(name)) return {error_message("bad scene name '" + name + "'")};
      session.load_scene_named(name);
    } else {
      return {error_message("unknown message type '" + type + "'")};
    }
  } catch (const std::exception& e) {
    return {error_message(e.what())};
  }
  out.push_back(macro_message(session));
  out.push_back(state_message(session));
  return out;
}

std::unique_ptr<net::LineServer> serve_sessions(const std::string& host, int port,
                                                SessionConfig cfg,
                                                std::optional<std::string> scene) {
  return std::make_unique<net::LineServer>(host, port, [cfg, scene](net::LineSocket& sock) {
    Session session(cfg);
    if (scene) session.load_scene_named(*scene);
    if (!sock.send_line(state_message(session))) return;
    while (auto line = sock.read_line(std::chrono::milliseconds(-1))) {
      for (const auto& reply : handle_wire_line(session, *line)) {
        if (!sock.send_line(reply)) return;
      }
    }
  });
}

}  // namespace eli::dialog
