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

#include "eli/drive.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "eli/text.hpp"

namespace eli::drive {

Situation parse_situation(const std::string& text) {
  Situation s;
  for (const auto& tok : split(text, '&')) {
    const std::string t = trim(tok);
    if (t.empty()) throw std::invalid_argument("empty token in situation '" + text + "'");
    s.push_back(t);
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string format_situation(const Situation& s) { return join(s, "&"); }

bool satisfied(const Situation& need, const Situation& have) {
  return std::all_of(need.begin(), need.end(), [&](const std::string& t) {
    return std::find(have.begin(), have.end(), t) != have.end();
  });
}

double InterestTable::of(const std::string& event) const {
  const auto it = events.find(event);
  return it == events.end() ? 0.0 : it->second;
}

std::vector<std::string> InterestTable::tick(int n) {
  std::vector<std::string> expired;
  for (auto it = temporary.begin(); it != temporary.end();) {
    it->second -= n;
    if (it->second <= 0) {
      expired.push_back(it->first);
      it = temporary.erase(it);
    } else {
      ++it;
    }
  }
  return expired;
}

Observed observe(Store& store, const Situation& s, const std::string& e, const std::string& a,
                 double interest, const DriveConfig& cfg) {
  if (interest < cfg.threshold) return Observed::kDull;
  const TripleSEA t{s, e, a};
  if (std::find(store.begin(), store.end(), t) != store.end()) return Observed::kDuplicate;
  store.push_back(t);
  return Observed::kStored;
}

std::vector<std::string> afford(const Store& store, const Situation& current,
                                const InterestTable& interest, DirectiveSet& directives,
                                const DriveConfig& cfg) {
  std::vector<std::string> latched;
  for (const auto& t : store) {
    if (!satisfied(t.s, current) || interest.of(t.e) < cfg.threshold) continue;
    if (directives.insert(t.e).second) latched.push_back(t.e);
  }
  return latched;
}

std::vector<std::string> propose(const Store& store, const DirectiveSet& directives,
                                 const Situation& current) {
  std::vector<std::string> actions;
  for (const auto& t : store) {
    if (directives.count(t.e) && satisfied(t.s, current)) actions.push_back(t.a);
  }
  return actions;
}

std::vector<std::string> backchain(const Store& store, const DirectiveSet& directives,
                                   InterestTable& interest, const DriveConfig& cfg) {
  std::vector<std::string> touched;
  for (const auto& t : store) {
    if (!directives.count(t.e)) continue;
    for (const auto& tok : t.s) {
      interest.temporary[tok] = cfg.decay_ticks;
      if (std::find(touched.begin(), touched.end(), tok) == touched.end()) touched.push_back(tok);
    }
  }
  return touched;
}

namespace {

std::map<std::string, std::string> fields_of(const std::string& record) {
  std::map<std::string, std::string> f;
  for (const auto& tok : split_ws(record)) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
      throw std::invalid_argument("expected key:value, got '" + tok + "'");
    }
    const std::string key = tok.substr(0, colon);
    if (!f.emplace(key, tok.substr(colon + 1)).second) {
      throw std::invalid_argument("repeated field '" + key + "'");
    }
  }
  return f;
}

double interest_value(const std::string& text) {
  const auto v = parse_double(text);
  if (!v || *v < 0.0 || *v > 1.0) throw std::invalid_argument("interest must lie in [0, 1]: " + text);
  return *v;
}

bool has_exactly(const std::map<std::string, std::string>& f, std::initializer_list<const char*> keys) {
  if (f.size() != keys.size()) return false;
  return std::all_of(keys.begin(), keys.end(), [&](const char* k) { return f.count(k) > 0; });
}

}  // namespace

std::vector<std::string> Driver::feed(const std::string& record) {
  const std::string body = trim(record);
  if (body.empty() || body[0] == '#') return {};
  const auto f = fields_of(body);
  std::vector<std::string> out;

  if (has_exactly(f, {"s", "e", "a", "i"})) {
    const Situation s = parse_situation(f.at("s"));
    const double i = interest_value(f.at("i"));
    interest_.events[f.at("e")] = i;
    const auto r = observe(store_, s, f.at("e"), f.at("a"), i, cfg_);
    const char* verdict = r == Observed::kStored ? "stored" : r == Observed::kDuplicate ? "already known" : "too dull";
    out.push_back("observe <" + format_situation(s) + ", " + f.at("e") + ", " + f.at("a") + "> i=" +
                  format_double(i) + ": " + verdict);
  } else if (has_exactly(f, {"s"})) {
    const Situation now = parse_situation(f.at("s"));
    const std::string at = "[" + format_situation(now) + "]";
    for (const auto& e : afford(store_, now, interest_, directives_, cfg_)) {
      out.push_back("afford " + at + ": latch D(" + e + ")");
    }
    for (const auto& t : store_) {
      if (!directives_.count(t.e)) continue;
      if (satisfied(t.s, now)) {
        out.push_back("propose " + at + ": " + t.a + " for " + t.e);
      } else {
        Situation missing;
        for (const auto& tok : t.s) {
          if (!satisfied({tok}, now)) missing.push_back(tok);
        }
        out.push_back("propose " + at + ": hold " + t.a + ", missing " + format_situation(missing));
      }
    }
    const auto touched = backchain(store_, directives_, interest_, cfg_);
    if (!touched.empty()) {
      out.push_back("backchain: interested in " + join(touched, ", ") + " for " +
                    std::to_string(cfg_.decay_ticks) + " ticks");
    }
    if (out.empty()) out.push_back("situation " + at + ": nothing to do");
  } else if (has_exactly(f, {"e", "i"})) {
    const double i = interest_value(f.at("i"));
    interest_.events[f.at("e")] = i;
    out.push_back("interest " + f.at("e") + " = " + format_double(i));
  } else if (has_exactly(f, {"tick"})) {
    const auto n = parse_double(f.at("tick"));
    if (!n || *n < 1 || *n != static_cast<int>(*n)) throw std::invalid_argument("tick needs a positive count");
    const auto expired = interest_.tick(static_cast<int>(*n));
    out.push_back("tick " + f.at("tick") +
                  (expired.empty() ? std::string() : ": no longer interested in " + join(expired, ", ")));
  } else if (has_exactly(f, {"clear"})) {
    const bool had = directives_.erase(f.at("clear")) > 0;
    out.push_back("clear D(" + f.at("clear") + ")" + (had ? "" : ": not latched"));
  } else {
    throw std::invalid_argument("unrecognized record '" + body + "'");
  }
  return out;
}

std::vector<std::string> Driver::run(const std::string& script) {
  std::vector<std::string> trace;
  std::istringstream in(script);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    try {
      for (auto& t : feed(line)) trace.push_back(std::move(t));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(n) + ": " + e.what());
    }
  }
  return trace;
}

}  // namespace eli::drive
