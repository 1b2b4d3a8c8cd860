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

// Chart parser over the semantic grammar. Every (category, start) pair is
// solved once and keeps, for each reachable end position, the cheapest
// derivation; cost counts tokens swallowed by '+' and '*'. Among equal
// costs the first derivation found wins, and derivations are enumerated in
// expansion order, optional-present before absent, shorter spans first.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "eli/sgram.hpp"

namespace eli::sgram {

namespace {

using NodePtr = std::shared_ptr<const ParseNode>;

struct Option {
  int end = 0;
  int cost = 0;
  std::vector<NodePtr> nodes;
};

using Table = std::map<int, Option>;

void offer(Table& t, Option o) {
  const auto it = t.find(o.end);
  if (it == t.end() || o.cost < it->second.cost) t[o.end] = std::move(o);
}

class Parser {
 public:
  Parser(const Grammar& g, const std::vector<std::string>& toks)
      : g_(g), toks_(toks), n_(static_cast<int>(toks.size())) {
    for (const auto& w : g.attention_words()) attn_.insert(w);
  }

  Table category(const std::string& name, int i) {
    const auto key = std::make_pair(name, i);
    if (const auto it = cat_memo_.find(key); it != cat_memo_.end()) return it->second;
    if (active_.count(key)) return {};  // left recursion guard
    active_.insert(key);
    Table out;
    const Category* c = g_.find(name);
    if (c) {
      for (std::size_t idx = 0; idx < c->expansions.size(); ++idx) {
        const Table t = sequence(c->expansions[idx], 0, i);
        for (const auto& [end, o] : t) {
          auto node = std::make_shared<ParseNode>();
          node->kind = ParseNode::Kind::kCategory;
          node->category = name;
          node->expansion = static_cast<int>(idx);
          node->begin = i;
          node->end = end;
          node->children = o.nodes;
          offer(out, Option{end, o.cost, {node}});
        }
      }
    }
    active_.erase(key);
    cat_memo_[key] = out;
    return out;
  }

 private:
  Table sequence(const Expansion& exp, std::size_t k, int i) {
    if (k == exp.size()) return Table{{i, Option{i, 0, {}}}};
    const auto key = std::make_tuple(static_cast<const void*>(&exp), k, i);
    if (const auto it = seq_memo_.find(key); it != seq_memo_.end()) return it->second;
    Table out;
    for (const auto& head : options(exp[k], i)) {
      const Table rest = sequence(exp, k + 1, head.end);
      for (const auto& [end, tail] : rest) {
        Option o{end, head.cost + tail.cost, head.nodes};
        o.nodes.insert(o.nodes.end(), tail.nodes.begin(), tail.nodes.end());
        offer(out, std::move(o));
      }
    }
    seq_memo_[key] = out;
    return out;
  }

  NodePtr span(ParseNode::Kind kind, int b, int e) const {
    auto node = std::make_shared<ParseNode>();
    node->kind = kind;
    node->begin = b;
    node->end = e;
    return node;
  }

  bool free_token(int j) const { return !attn_.count(toks_[static_cast<std::size_t>(j)]); }

  std::vector<Option> options(const Element& e, int i) {
    std::vector<Option> out;
    switch (e.kind) {
      case Element::Kind::kWord:
        if (i < n_ && toks_[static_cast<std::size_t>(i)] == e.text) {
          out.push_back({i + 1, 0, {span(ParseNode::Kind::kWord, i, i + 1)}});
        }
        break;
      case Element::Kind::kRef:
        for (auto& [end, o] : category(e.text, i)) out.push_back(o);
        break;
      case Element::Kind::kDict:
        for (int len = 1; i + len <= n_ && free_token(i + len - 1); ++len) {
          out.push_back({i + len, len, {span(ParseNode::Kind::kDict, i, i + len)}});
        }
        break;
      case Element::Kind::kWild:
        out.push_back({i, 0, {span(ParseNode::Kind::kWild, i, i)}});
        for (int len = 1; len <= kMaxWildcard && i + len <= n_ && free_token(i + len - 1); ++len) {
          out.push_back({i + len, len, {span(ParseNode::Kind::kWild, i, i + len)}});
        }
        break;
      case Element::Kind::kGroup:
        for (auto& [end, o] : sequence(e.children, 0, i)) out.push_back(o);
        break;
    }
    if (e.optional) out.push_back({i, 0, {}});
    return out;
  }

  const Grammar& g_;
  const std::vector<std::string>& toks_;
  int n_;
  std::set<std::string> attn_;
  std::map<std::pair<std::string, int>, Table> cat_memo_;
  std::set<std::pair<std::string, int>> active_;
  std::map<std::tuple<const void*, std::size_t, int>, Table> seq_memo_;
};

bool attention_at_edge(const ParseNode& node, int n) {
  if (node.kind == ParseNode::Kind::kCategory && node.category == "attn" &&
      node.end > node.begin && (node.begin == 0 || node.end == n)) {
    return true;
  }
  for (const auto& c : node.children) {
    if (attention_at_edge(*c, n)) return true;
  }
  return false;
}

void dump(std::ostringstream& out, const Grammar& g, const ParseNode& node,
          const std::vector<std::string>& toks, int depth) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  std::string text;
  for (int k = node.begin; k < node.end; ++k) {
    if (k > node.begin) text += ' ';
    text += toks[static_cast<std::size_t>(k)];
  }
  switch (node.kind) {
    case ParseNode::Kind::kCategory:
      out << '<' << node.category << "> #" << node.expansion;
      (void)g;
      break;
    case ParseNode::Kind::kWord:
      out << "word";
      break;
    case ParseNode::Kind::kDict:
      out << '+';
      break;
    case ParseNode::Kind::kWild:
      out << '*';
      break;
  }
  out << " \"" << text << "\"\n";
  for (const auto& c : node.children) dump(out, g, *c, toks, depth + 1);
}

}  // namespace

std::optional<ParseResult> parse(const Grammar& grammar, const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::nullopt;
  Parser p(grammar, tokens);
  const Table top = p.category("top_level", 0);
  const auto it = top.find(static_cast<int>(tokens.size()));
  if (it == top.end()) return std::nullopt;
  const NodePtr root = it->second.nodes.front();
  if (!attention_at_edge(*root, static_cast<int>(tokens.size()))) return std::nullopt;
  return ParseResult{root, it->second.cost};
}

std::string dump_tree(const Grammar& grammar, const ParseNode& root,
                      const std::vector<std::string>& tokens) {
  std::ostringstream out;
  dump(out, grammar, root, tokens, 0);
  return out.str();
}

}  // namespace eli::sgram
