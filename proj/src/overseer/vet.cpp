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

#include "eli/overseer.hpp"
#include "eli/text.hpp"

namespace eli::overseer {

namespace {

struct Decoded {
  std::string act;
  std::string verb;
  std::optional<std::string> name;
  bool to_user = false;
  std::vector<std::string> visible;
};

std::optional<Decoded> decode(const Proposal& p) {
  Decoded d;
  for (const auto& t : p.triples) {
    if (t.p == "type" && starts_with(t.s, "act-")) {
      if (!d.act.empty()) return std::nullopt;  // one action per proposal
      d.act = t.s;
      d.verb = t.o;
    }
  }
  if (d.act.empty()) return std::nullopt;
  std::string obj;
  for (const auto& t : p.triples) {
    if (t.s == d.act && t.p == "object") obj = t.o;
    if (t.s == d.act && t.p == "recipient" && t.o == "user") d.to_user = true;
    if (t.s == "scene" && t.p == "contains") d.visible.push_back(from_token(t.o));
  }
  for (const auto& t : p.triples) {
    if (!obj.empty() && t.s == obj && t.p == "name" && t.o != "unknown") d.name = from_token(t.o);
  }
  return d;
}

bool contains_ci(const std::vector<std::string>& v, const std::string& s) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& x) { return to_lower(x) == to_lower(s); });
}

}  // namespace

Verdict vet(const Proposal& proposal, const PatientDB& db, LifeLog& log, const Taxonomy& tax,
            const VetConfig& cfg) {
  const auto d = decode(proposal);
  if (!d) return {Verdict::Kind::kError, "", "proposal has no single action type"};
  // only handing something to the user touches the patient's records
  if (!d->to_user || !d->name) return {Verdict::Kind::kAccept, "", ""};
  const std::string& name = *d->name;

  if (const auto it = db.restrictions.find(to_lower(name)); it != db.restrictions.end()) {
    return {Verdict::Kind::kVeto, "", it->second};
  }
  if (const auto t = log.last("dose", name); t && proposal.now - *t < cfg.min_interval) {
    return {Verdict::Kind::kVeto, "", "recent dose"};
  }
  if (!contains_ci(d->visible, name)) {
    const auto kinds = tax.chain(name);
    if (!kinds.empty()) {
      for (const auto& v : d->visible) {
        const auto vk = tax.chain(v);
        if (std::find(vk.begin(), vk.end(), kinds.front()) != vk.end()) {
          return {Verdict::Kind::kCounter, v, "another " + kinds.front()};
        }
      }
    }
  }
  const auto kinds = tax.chain(name);
  if (contains_ci(d->visible, name) &&
      std::find(kinds.begin(), kinds.end(), cfg.dose_class) != kinds.end()) {
    log.append(proposal.now, "dose", name);
  }
  return {Verdict::Kind::kAccept, "", ""};
}

}  // namespace eli::overseer
