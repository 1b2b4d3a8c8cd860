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
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "eli/sgram.hpp"
#include "eli/text.hpp"

namespace eli::sgram {

namespace {

bool is_special(char c) { return c == '(' || c == ')' || c == '<' || c == '>' || c == '+' || c == '*'; }

bool capitalized(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

bool open_class(const std::string& name) {
  return name == kNameCategory || name == kVerb0Category || name == kVerb1Category;
}

struct PendingRef {
  std::string name;
  int line;
};

void collect_refs(const Expansion& exp, int line, std::vector<PendingRef>& out) {
  for (const auto& e : exp) {
    if (e.kind == Element::Kind::kRef) out.push_back({e.text, line});
    if (e.kind == Element::Kind::kGroup) collect_refs(e.children, line, out);
  }
}

Expansion parse_expansion(const std::string& body, int line) {
  std::vector<Expansion> stack(1);
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      stack.emplace_back();
      ++i;
    } else if (c == ')') {
      if (stack.size() < 2) throw LoadError(line, "unbalanced ')'");
      Expansion inner = std::move(stack.back());
      stack.pop_back();
      if (inner.empty()) throw LoadError(line, "empty optional group");
      if (inner.size() == 1) {
        inner[0].optional = true;
        stack.back().push_back(std::move(inner[0]));
      } else {
        Element g;
        g.kind = Element::Kind::kGroup;
        g.optional = true;
        g.children = std::move(inner);
        stack.back().push_back(std::move(g));
      }
      ++i;
    } else if (c == '<') {
      const auto close = body.find('>', i);
      if (close == std::string::npos) throw LoadError(line, "unterminated '<'");
      const std::string name = trim(body.substr(i + 1, close - i - 1));
      if (name.empty()) throw LoadError(line, "empty category reference");
      Element e;
      e.kind = Element::Kind::kRef;
      e.text = name;
      stack.back().push_back(std::move(e));
      i = close + 1;
    } else if (c == '>') {
      throw LoadError(line, "stray '>'");
    } else if (c == '+' || c == '*') {
      Element e;
      e.kind = c == '+' ? Element::Kind::kDict : Element::Kind::kWild;
      stack.back().push_back(std::move(e));
      ++i;
    } else {
      std::size_t j = i;
      while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j])) && !is_special(body[j])) ++j;
      for (auto& tok : tokenize(body.substr(i, j - i))) {
        Element e;
        e.kind = Element::Kind::kWord;
        e.text = tok;
        stack.back().push_back(std::move(e));
      }
      i = j;
    }
  }
  if (stack.size() != 1) throw LoadError(line, "unbalanced '('");
  return std::move(stack.front());
}

void write_element(std::ostringstream& out, const Element& e) {
  if (e.optional) out << '(';
  switch (e.kind) {
    case Element::Kind::kWord:
      out << e.text;
      break;
    case Element::Kind::kRef:
      out << '<' << e.text << '>';
      break;
    case Element::Kind::kDict:
      out << '+';
      break;
    case Element::Kind::kWild:
      out << '*';
      break;
    case Element::Kind::kGroup:
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        if (k) out << ' ';
        write_element(out, e.children[k]);
      }
      break;
  }
  if (e.optional) out << ')';
}

}  // namespace

const Category* Grammar::find(const std::string& name) const {
  const auto it = index_.find(name);
  return it == index_.end() ? nullptr : &cats_[it->second];
}

bool Grammar::is_flag(const std::string& category) const {
  return std::find(flags_.begin(), flags_.end(), category) != flags_.end();
}

Category& Grammar::add_category(const std::string& name) {
  const auto it = index_.find(name);
  if (it != index_.end()) return cats_[it->second];
  index_[name] = cats_.size();
  cats_.push_back(Category{name, {}});
  return cats_.back();
}

void Grammar::finalize() {
  if (!find("top_level")) throw LoadError(0, "grammar has no top_level category");
  std::vector<PendingRef> refs;
  for (const auto& c : cats_) {
    for (const auto& e : c.expansions) collect_refs(e, 0, refs);
  }
  for (const auto& r : refs) {
    if (!find(r.name)) throw LoadError(0, "undefined category <" + r.name + ">");
  }
  attn_.clear();
  if (const auto* a = find("attn")) {
    for (const auto& e : a->expansions) {
      for (const auto& el : e) {
        if (el.kind == Element::Kind::kWord) attn_.push_back(el.text);
      }
    }
  }
  // a capitalized category with no single-element expansion only marks presence
  flags_.clear();
  for (const auto& c : cats_) {
    if (!capitalized(c.name) || open_class(c.name) || c.expansions.empty()) continue;
    const bool any_single = std::any_of(c.expansions.begin(), c.expansions.end(),
                                        [](const Expansion& e) { return e.size() == 1; });
    if (!any_single) flags_.push_back(c.name);
  }
}

Grammar load_grammar(const std::string& text) {
  Grammar g;
  std::vector<PendingRef> refs;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  Category* current = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    if (body[0] == '=') {
      const std::string rest = trim(body.substr(1));
      if (rest.size() < 3 || !((rest.front() == '[' && rest.back() == ']') ||
                               (rest.front() == '<' && rest.back() == '>'))) {
        throw LoadError(line, "malformed category header '" + body + "'");
      }
      const std::string name = trim(rest.substr(1, rest.size() - 2));
      if (name.empty()) throw LoadError(line, "empty category name");
      current = &g.add_category(name);
      continue;
    }
    if (!current) throw LoadError(line, "expansion before any category header");
    Expansion exp = parse_expansion(body, line);
    if (exp.empty()) continue;
    collect_refs(exp, line, refs);
    current->expansions.push_back(std::move(exp));
  }
  for (const auto& r : refs) {
    if (!g.find(r.name)) throw LoadError(r.line, "undefined category <" + r.name + ">");
  }
  g.finalize();
  return g;
}

Grammar load_grammar_file(const std::string& path) { return load_grammar(read_file(path)); }

std::string serialize(const Grammar& grammar) {
  std::ostringstream out;
  bool first = true;
  for (const auto& c : grammar.categories()) {
    if (!first) out << '\n';
    first = false;
    out << "=[" << c.name << "]\n";
    for (const auto& e : c.expansions) {
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (k) out << ' ';
        write_element(out, e[k]);
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

Expansion words_expansion(const std::vector<std::string>& words) {
  Expansion exp;
  for (const auto& w : words) {
    for (auto& tok : tokenize(w)) {
      Element e;
      e.text = tok;
      exp.push_back(std::move(e));
    }
  }
  return exp;
}

bool append_unique(Grammar& g, const std::string& category, Expansion exp) {
  if (exp.empty()) throw std::invalid_argument("learned word is empty");
  Category& c = g.add_category(category);
  if (std::find(c.expansions.begin(), c.expansions.end(), exp) != c.expansions.end()) return false;
  c.expansions.push_back(std::move(exp));
  g.finalize();
  return true;
}

}  // namespace

bool add_name(Grammar& grammar, const std::vector<std::string>& words) {
  return append_unique(grammar, kNameCategory, words_expansion(words));
}

bool add_verb(Grammar& grammar, const std::string& word, int arity) {
  if (arity != 0 && arity != 1) throw std::invalid_argument("verb arity must be 0 or 1");
  return append_unique(grammar, arity == 0 ? kVerb0Category : kVerb1Category,
                       words_expansion({word}));
}

}  // namespace eli::sgram
