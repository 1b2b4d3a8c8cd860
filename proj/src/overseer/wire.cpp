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

#include "eli/overseer.hpp"
#include "eli/text.hpp"

namespace eli::overseer {

std::vector<std::string> format_proposal(const Proposal& proposal) {
  std::vector<std::string> lines;
  lines.push_back("PROPOSE " + proposal.id + " " + format_double(proposal.now));
  for (const auto& t : proposal.triples) lines.push_back("T " + t.s + " " + t.p + " " + t.o);
  lines.push_back("END");
  return lines;
}

std::string format_verdict(const std::string& id, const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::kAccept:
      return v.reason.empty() ? "ACCEPT " + id : "ACCEPT " + id + " " + v.reason;
    case Verdict::Kind::kVeto:
      return "VETO " + id + " " + v.reason;
    case Verdict::Kind::kCounter:
      return "COUNTER " + id + " " + to_token(v.alternative) + " " + v.reason;
    case Verdict::Kind::kError:
      break;
  }
  return "ERROR " + v.reason;
}

std::pair<std::string, Verdict> parse_verdict(const std::string& line) {
  const auto tok = split_ws(line);
  if (tok.empty()) throw std::invalid_argument("empty verdict");
  auto rest = [&](std::size_t from) {
    return join(std::vector<std::string>(tok.begin() + static_cast<long>(std::min(from, tok.size())),
                                         tok.end()),
                " ");
  };
  if (tok[0] == "ERROR") return {"", {Verdict::Kind::kError, "", rest(1)}};
  if (tok.size() < 2) throw std::invalid_argument("verdict without id: " + line);
  if (tok[0] == "ACCEPT") return {tok[1], {Verdict::Kind::kAccept, "", rest(2)}};
  if (tok[0] == "VETO") {
    if (tok.size() < 3) throw std::invalid_argument("VETO without reason");
    return {tok[1], {Verdict::Kind::kVeto, "", rest(2)}};
  }
  if (tok[0] == "COUNTER") {
    if (tok.size() < 4) throw std::invalid_argument("COUNTER needs an alternative and a reason");
    return {tok[1], {Verdict::Kind::kCounter, from_token(tok[2]), rest(3)}};
  }
  throw std::invalid_argument("unknown verdict: " + tok[0]);
}

std::optional<Proposal> ProposalReader::feed(const std::string& line, std::string& error) {
  error.clear();
  const auto tok = split_ws(line);
  if (tok.empty()) return std::nullopt;
  auto fail = [&](std::string msg) -> std::optional<Proposal> {
    pending_.reset();
    error = std::move(msg);
    return std::nullopt;
  };
  if (tok[0] == "PROPOSE") {
    if (pending_) return fail("PROPOSE before END");
    if (tok.size() < 2 || tok.size() > 3) return fail("expected: PROPOSE <id> [<now>]");
    Proposal p;
    p.id = tok[1];
    if (tok.size() == 3) {
      const auto now = parse_double(tok[2]);
      if (!now) return fail("bad time '" + tok[2] + "'");
      p.now = *now;
    }
    pending_ = std::move(p);
    return std::nullopt;
  }
  if (tok[0] == "T") {
    if (!pending_) return fail("triple outside a proposal");
    if (tok.size() != 4) return fail("expected: T <subject> <predicate> <object>");
    pending_->triples.push_back({tok[1], tok[2], tok[3]});
    return std::nullopt;
  }
  if (tok[0] == "END") {
    if (!pending_ || tok.size() != 1) return fail("unexpected END");
    auto done = std::move(pending_);
    pending_.reset();
    return done;
  }
  return fail("unknown frame '" + tok[0] + "'");
}

std::unique_ptr<Supervisor> Supervisor::from_dir(const std::string& dir, VetConfig cfg) {
  return std::make_unique<Supervisor>(load_patient_db(read_file(dir + "/patient.db")),
                                      load_taxonomy(read_file(dir + "/taxonomy.txt")), cfg);
}

Verdict Supervisor::handle(const Proposal& p) {
  std::lock_guard lock(mu_);
  return vet(p, db_, log_, tax_, cfg_);
}

LifeLog Supervisor::log() const {
  std::lock_guard lock(mu_);
  return log_;
}

void Supervisor::serve_connection(net::LineSocket& sock) {
  ProposalReader reader;
  std::string error;
  while (auto line = sock.read_line(std::chrono::milliseconds(-1))) {
    const auto p = reader.feed(*line, error);
    if (!error.empty()) {
      if (!sock.send_line("ERROR " + error)) return;
    } else if (p) {
      if (!sock.send_line(format_verdict(p->id, handle(*p)))) return;
    }
  }
}

Verdict SupervisorClient::submit(const Proposal& p) {
  used_fallback_ = false;
  auto fallback = [&] {
    sock_.close();
    used_fallback_ = true;
    return cfg_.fallback;
  };
  if (!sock_.valid() || sock_.closed()) {
    sock_ = net::LineSocket::connect(cfg_.host, cfg_.port, cfg_.timeout);
    if (!sock_.valid()) return fallback();
  }
  for (const auto& line : format_proposal(p)) {
    if (!sock_.send_line(line)) return fallback();
  }
  while (auto reply = sock_.read_line(cfg_.timeout)) {
    try {
      auto [id, verdict] = parse_verdict(*reply);
      if (verdict.kind == Verdict::Kind::kError || id == p.id) return verdict;
    } catch (const std::invalid_argument&) {
      return fallback();
    }
  }
  return fallback();
}

}  // namespace eli::overseer
