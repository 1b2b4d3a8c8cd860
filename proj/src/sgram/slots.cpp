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

#include <cctype>

#include "eli/sgram.hpp"

namespace eli::sgram {

namespace {

bool capitalized(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

std::string surface(const std::vector<std::string>& tokens, int b, int e) {
  std::string s;
  for (int k = b; k < e; ++k) {
    if (k > b) s += ' ';
    s += tokens[static_cast<std::size_t>(k)];
  }
  return s;
}

void visit(const Grammar& g, const ParseNode& node, const std::vector<std::string>& tokens,
           SlotSet& out) {
  if (node.kind != ParseNode::Kind::kCategory) return;
  if (capitalized(node.category)) {
    Slot s;
    s.name = node.category;
    s.begin = node.begin;
    s.end = node.end;
    if (!g.is_flag(node.category)) {
      const Category* c = g.find(node.category);
      const Expansion* exp = nullptr;
      if (c && node.expansion >= 0 && static_cast<std::size_t>(node.expansion) < c->expansions.size()) {
        exp = &c->expansions[static_cast<std::size_t>(node.expansion)];
      }
      const bool leads_with_ref = exp && !exp->empty() && exp->front().kind == Element::Kind::kRef &&
                                  !node.children.empty() &&
                                  node.children.front()->kind == ParseNode::Kind::kCategory &&
                                  node.children.front()->category == exp->front().text;
      if (leads_with_ref) {
        const auto& child = *node.children.front();
        s.value = child.category;
        s.value_begin = child.begin;
        s.value_end = child.end;
      } else {
        s.value = surface(tokens, node.begin, node.end);
        s.value_begin = node.begin;
        s.value_end = node.end;
      }
    }
    out.push_back(std::move(s));
  }
  for (const auto& c : node.children) visit(g, *c, tokens, out);
}

}  // namespace

SlotSet extract_slots(const Grammar& grammar, const ParseNode& root,
                      const std::vector<std::string>& tokens) {
  SlotSet out;
  visit(grammar, root, tokens, out);
  return out;
}

std::string format_slots(const SlotSet& slots) {
  std::string s = "{";
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (k) s += ", ";
    s += slots[k].name;
    if (slots[k].value) s += "=" + *slots[k].value;
  }
  return s + "}";
}

const Slot* find_slot(const SlotSet& slots, const std::string& name) {
  for (const auto& s : slots) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace eli::sgram
