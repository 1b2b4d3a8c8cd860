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
#include <set>
#include <sstream>

#include "eli/overseer.hpp"
#include "eli/text.hpp"

namespace eli::overseer {

std::string to_token(const std::string& value) {
  std::string s = trim(value);
  std::replace(s.begin(), s.end(), ' ', '_');
  return s.empty() ? "unknown" : s;
}

std::string from_token(const std::string& token) {
  std::string s = token;
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

std::vector<Triple> encode_proposal(const ActionSpec& action,
                                    const std::vector<std::string>& scene_names) {
  std::vector<Triple> out;
  const std::string act = "act-" + std::to_string(action.act);
  out.push_back({act, "type", to_token(action.verb)});
  if (action.object || action.name) {
    const std::string obj = "obj-" + std::to_string(action.object.value_or(0));
    out.push_back({act, "object", obj});
    out.push_back({obj, "name", action.name ? to_token(*action.name) : "unknown"});
  }
  if (action.to_user) out.push_back({act, "recipient", "user"});
  for (const auto& n : scene_names) out.push_back({"scene", "contains", to_token(n)});
  return out;
}

PatientDB load_patient_db(const std::string& text) {
  PatientDB db;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto space = body.find_first_of(" \t");
    if (space == std::string::npos) throw LoadError(line, "expected: <substance> <reason>");
    db.restrictions[to_lower(from_token(body.substr(0, space)))] = trim(body.substr(space));
  }
  return db;
}

void LifeLog::append(double time, const std::string& event, const std::string& detail) {
  if (!entries.empty()) time = std::max(time, entries.back().time);
  entries.push_back({time, event, detail});
}

std::optional<double> LifeLog::last(const std::string& event, const std::string& detail) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (it->event == event && to_lower(it->detail) == to_lower(detail)) return it->time;
  }
  return std::nullopt;
}

std::vector<std::string> Taxonomy::chain(const std::string& term) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::string cur = to_lower(from_token(term));
  while (true) {
    const auto it = parent.find(cur);
    if (it == parent.end() || !seen.insert(it->second).second) break;
    out.push_back(it->second);
    cur = it->second;
  }
  return out;
}

Taxonomy load_taxonomy(const std::string& text) {
  Taxonomy tax;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto tok = split_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (tok.empty()) continue;
    if (tok.size() != 2) throw LoadError(line, "expected: <term> <parent>");
    tax.parent[to_lower(from_token(tok[0]))] = to_lower(from_token(tok[1]));
  }
  return tax;
}

}  // namespace eli::overseer
