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

#include "eli/lexmem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eli/text.hpp"

namespace eli::lexmem {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string key_of(const std::string& name) { return join(tokenize(name), " "); }

std::string to_field(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

std::string from_field(const std::string& field) {
  std::string s = field;
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

double number(const std::string& tok, int line, const char* what) {
  const auto v = parse_double(tok);
  if (!v) throw LoadError(line, std::string("bad ") + what + " '" + tok + "'");
  return *v;
}

void check_model(const VisualModel& m, int line) {
  double sum = 0.0;
  for (double b : m.hist.bins) {
    if (b < 0.0) throw LoadError(line, "negative histogram bin");
    sum += b;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw LoadError(line, "histogram does not sum to 1");
  if (!(m.area > 0.0)) throw LoadError(line, "area must be positive");
  if (!(m.elong >= 1.0)) throw LoadError(line, "elongation must be at least 1");
}

}  // namespace

double model_distance(const VisualModel& a, const VisualModel& b) {
  double l1 = 0.0;
  for (int i = 0; i < percept::kNumColors; ++i) l1 += std::abs(a.hist[i] - b.hist[i]);
  const double log4 = std::log(4.0);
  const double color = clamp01(l1 / 2.0);
  const double size = clamp01(std::abs(std::log(a.area / b.area)) / log4);
  const double shape = clamp01(std::abs(std::log(a.elong / b.elong)) / log4);
  return 0.7 * color + 0.2 * size + 0.1 * shape;
}

VisualModel model_of(const std::string& name, const percept::ObjectPercept& p) {
  VisualModel m;
  m.name = name;
  m.hist = p.hist;
  m.area = std::max<double>(1.0, static_cast<double>(p.blob.pixel_count));
  const double lo = std::max(1.0, std::min(p.blob.extent_along, p.blob.extent_across));
  const double hi = std::max(p.blob.extent_along, p.blob.extent_across);
  m.elong = std::max(1.0, hi / lo);
  return m;
}

std::string format_steps(const std::vector<MacroStep>& steps) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out << ", ";
    out << steps[i].routine << ' ' << steps[i].param;
  }
  return out.str();
}

bool Lexicon::add_model(const VisualModel& m) {
  const std::string key = key_of(m.name);
  if (key.empty()) throw std::invalid_argument("model name is empty");
  auto it = models_.find(key);
  if (it != models_.end()) {
    for (const auto& old : it->second) {
      if (model_distance(old, m) <= cfg_.novelty) return false;
    }
    VisualModel copy = m;
    copy.name = it->second.front().name;  // keep the first spelling
    it->second.push_back(copy);
    return true;
  }
  models_[key].push_back(m);
  order_.push_back(key);
  return true;
}

bool Lexicon::learn_name(const std::string& name, const percept::ObjectPercept& p) {
  const bool added = add_model(model_of(name, p));
  journal(GramEntry{GramEntry::Kind::kName, tokenize(name), 0});
  return added;
}

std::optional<Recognition> Lexicon::recognize(const percept::ObjectPercept& p) const {
  const VisualModel probe = model_of("", p);
  std::optional<Recognition> best;
  for (const auto& key : order_) {
    for (const auto& m : models_.at(key)) {
      const double d = model_distance(probe, m);
      if (!best || d < best->distance) best = Recognition{m.name, d};
    }
  }
  if (!best || best->distance > cfg_.limit) return std::nullopt;
  return best;
}

std::vector<int> Lexicon::find_instances(const std::string& name,
                                         const std::vector<percept::ObjectPercept>& percepts) const {
  std::vector<int> ids;
  const auto it = models_.find(key_of(name));
  if (it == models_.end()) return ids;
  for (const auto& p : percepts) {
    const VisualModel probe = model_of("", p);
    const bool hit = std::any_of(it->second.begin(), it->second.end(), [&](const VisualModel& m) {
      return model_distance(probe, m) <= cfg_.limit;
    });
    if (hit) ids.push_back(p.id);
  }
  return ids;
}

bool Lexicon::knows(const std::string& name) const { return models_.count(key_of(name)) > 0; }

std::string Lexicon::display_name(const std::string& name) const {
  const auto it = models_.find(key_of(name));
  return it == models_.end() ? name : it->second.front().name;
}

std::vector<std::string> Lexicon::names() const {
  std::vector<std::string> out;
  for (const auto& key : order_) out.push_back(models_.at(key).front().name);
  return out;
}

const std::vector<VisualModel>* Lexicon::models(const std::string& name) const {
  const auto it = models_.find(key_of(name));
  return it == models_.end() ? nullptr : &it->second;
}

void Lexicon::put_macro(const VerbMacro& macro) {
  if (macro.name.empty()) throw std::invalid_argument("macro name is empty");
  if (macro.arity != 0 && macro.arity != 1) throw std::invalid_argument("macro arity must be 0 or 1");
  macros_[to_lower(macro.name)] = macro;
  journal(GramEntry{GramEntry::Kind::kVerb, tokenize(macro.name), macro.arity});
}

const VerbMacro* Lexicon::get_macro(const std::string& name) const {
  const auto it = macros_.find(to_lower(name));
  return it == macros_.end() ? nullptr : &it->second;
}

void Lexicon::journal(const GramEntry& entry) {
  if (entry.words.empty()) return;
  if (std::find(journal_.begin(), journal_.end(), entry) == journal_.end()) journal_.push_back(entry);
}

std::string save_lexicon(const Lexicon& lex) {
  std::ostringstream out;
  for (const auto& name : lex.names()) {
    for (const auto& m : *lex.models(name)) {
      out << "name " << to_field(m.name) << " hist";
      for (double b : m.hist.bins) out << ' ' << format_double(b);
      out << " area " << format_double(m.area) << " elong " << format_double(m.elong) << '\n';
    }
  }
  for (const auto& [key, macro] : lex.macros()) {
    out << "macro " << to_field(macro.name) << ' ' << macro.arity << ' ';
    for (std::size_t i = 0; i < macro.steps.size(); ++i) {
      if (i) out << ',';
      out << macro.steps[i].routine << ':' << format_double(macro.steps[i].param);
    }
    out << '\n';
  }
  for (const auto& g : lex.journal()) {
    if (g.kind == GramEntry::Kind::kName) {
      out << "gram name " << join(g.words, " ") << '\n';
    } else {
      out << "gram verb " << join(g.words, " ") << ' ' << g.arity << '\n';
    }
  }
  return out.str();
}

Lexicon load_lexicon(const std::string& text, LexConfig cfg) {
  std::vector<std::pair<int, VisualModel>> views;
  std::vector<VerbMacro> macros;
  std::vector<GramEntry> grams;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto tok = split_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (tok.empty()) continue;
    if (tok[0] == "name") {
      if (tok.size() != 16 || tok[2] != "hist" || tok[12] != "area" || tok[14] != "elong") {
        throw LoadError(line, "expected: name <word> hist <9 floats> area <n> elong <f>");
      }
      VisualModel m;
      m.name = from_field(tok[1]);
      for (std::size_t i = 0; i < percept::kNumColors; ++i) {
        m.hist.bins[i] = number(tok[3 + i], line, "histogram bin");
      }
      m.area = number(tok[13], line, "area");
      m.elong = number(tok[15], line, "elongation");
      check_model(m, line);
      views.emplace_back(line, m);
    } else if (tok[0] == "macro") {
      if (tok.size() != 4) throw LoadError(line, "expected: macro <word> <arity> <routine:param>[,...]");
      VerbMacro mac;
      mac.name = from_field(tok[1]);
      if (tok[2] != "0" && tok[2] != "1") throw LoadError(line, "macro arity must be 0 or 1");
      mac.arity = tok[2] == "1" ? 1 : 0;
      for (const auto& part : split(tok[3], ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos || colon == 0) throw LoadError(line, "macro step needs routine:param");
        mac.steps.push_back({part.substr(0, colon), number(part.substr(colon + 1), line, "macro parameter")});
      }
      if (mac.steps.empty()) throw LoadError(line, "macro has no steps");
      macros.push_back(std::move(mac));
    } else if (tok[0] == "gram") {
      if (tok.size() >= 3 && tok[1] == "name") {
        grams.push_back({GramEntry::Kind::kName, {tok.begin() + 2, tok.end()}, 0});
      } else if (tok.size() == 4 && tok[1] == "verb" && (tok[3] == "0" || tok[3] == "1")) {
        grams.push_back({GramEntry::Kind::kVerb, {tok[2]}, tok[3] == "1" ? 1 : 0});
      } else {
        throw LoadError(line, "expected: gram name <word>... | gram verb <word> <arity>");
      }
    } else {
      throw LoadError(line, "unknown record '" + tok[0] + "'");
    }
  }
  // journal first so its order survives a save/load cycle
  Lexicon lex(cfg);
  for (const auto& g : grams) lex.journal(g);
  for (const auto& [at, m] : views) {
    if (!lex.add_model(m)) throw LoadError(at, "view of '" + m.name + "' duplicates an earlier one");
  }
  for (const auto& mac : macros) lex.put_macro(mac);
  return lex;
}

Lexicon load_lexicon_file(const std::string& path, LexConfig cfg) {
  return load_lexicon(read_file(path), cfg);
}

}  // namespace eli::lexmem
