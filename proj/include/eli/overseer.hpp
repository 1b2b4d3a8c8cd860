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

// Action vetting by a supervisor that reasons over semantic triples.
//
// Wire format, newline delimited:
//
//   PROPOSE <id> [<now-seconds>]
//   T <subject> <predicate> <object>
//   ...
//   END
//
// answered by one of
//
//   ACCEPT <id> [<note>...]
//   VETO <id> <reason>...
//   COUNTER <id> <alternative> <reason>...
//   ERROR <message>...

#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eli/line_socket.hpp"

namespace eli::overseer {

struct Triple {
  std::string s, p, o;

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct Proposal {
  std::string id;
  double now = 0.0;  // simulated seconds
  std::vector<Triple> triples;

  friend bool operator==(const Proposal&, const Proposal&) = default;
};

struct Verdict {
  enum class Kind { kAccept, kVeto, kCounter, kError };
  Kind kind = Kind::kAccept;
  std::string alternative;  // kCounter
  std::string reason;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// What the robot is about to do, before encoding.
struct ActionSpec {
  int act = 1;                      // sequence number, becomes act-N
  std::string verb;
  std::optional<int> object;        // session object id, becomes obj-K
  std::optional<std::string> name;  // recognized or requested name
  bool to_user = false;             // give-style actions
};

/// Encodes an action and the recognized visible items as triples.
std::vector<Triple> encode_proposal(const ActionSpec& action,
                                    const std::vector<std::string>& scene_names);

/// Multi-word values travel with '_' between words.
std::string to_token(const std::string& value);
std::string from_token(const std::string& token);

struct PatientDB {
  std::map<std::string, std::string> restrictions;  // lowercase substance -> reason
};
/// "<substance> <reason...>" per line.
PatientDB load_patient_db(const std::string& text);

struct LifeLog {
  struct Entry {
    double time;
    std::string event;
    std::string detail;
  };
  std::vector<Entry> entries;

  /// Appends; times earlier than the last entry are raised to it.
  void append(double time, const std::string& event, const std::string& detail);
  std::optional<double> last(const std::string& event, const std::string& detail) const;
};

struct Taxonomy {
  std::map<std::string, std::string> parent;  // lowercase term -> lowercase parent

  /// Ancestors, nearest first.
  std::vector<std::string> chain(const std::string& term) const;
};
/// "<term> <parent>" per line.
Taxonomy load_taxonomy(const std::string& text);

struct VetConfig {
  double min_interval = 4.0 * 3600.0;  // seconds between doses
  std::string dose_class = "medication";
};

/// Decides on a proposal. Accepted doses are appended to `log`.
Verdict vet(const Proposal& proposal, const PatientDB& db, LifeLog& log, const Taxonomy& tax,
            const VetConfig& cfg = {});

std::vector<std::string> format_proposal(const Proposal& proposal);
std::string format_verdict(const std::string& id, const Verdict& v);
/// Throws std::invalid_argument for malformed replies.
std::pair<std::string, Verdict> parse_verdict(const std::string& line);

/// Incremental frame reader for the server side.
class ProposalReader {
 public:
  /// Feeds one line. Returns a finished proposal, or sets `error` for a
  /// malformed frame (the reader then resets).
  std::optional<Proposal> feed(const std::string& line, std::string& error);

 private:
  std::optional<Proposal> pending_;
};

/// Reference supervisor: databases plus a lifelog shared by connections.
class Supervisor {
 public:
  Supervisor(PatientDB db, Taxonomy tax, VetConfig cfg = {})
      : db_(std::move(db)), tax_(std::move(tax)), cfg_(cfg) {}

  /// Reads `patient.db` and `taxonomy.txt` from `dir`.
  static std::unique_ptr<Supervisor> from_dir(const std::string& dir, VetConfig cfg = {});

  Verdict handle(const Proposal& p);
  LifeLog log() const;
  /// Serves one connection until the peer closes.
  void serve_connection(net::LineSocket& sock);

 private:
  PatientDB db_;
  Taxonomy tax_;
  VetConfig cfg_;
  mutable std::mutex mu_;
  LifeLog log_;
};

struct ClientConfig {
  std::string host = "127.0.0.1";
  int port = 0;
  std::chrono::milliseconds timeout{2000};
  Verdict fallback{Verdict::Kind::kAccept, "", "local-only mode"};
};

class SupervisorClient {
 public:
  explicit SupervisorClient(ClientConfig cfg) : cfg_(std::move(cfg)) {}

  /// Sends a proposal and waits for the verdict; the fallback verdict
  /// stands in when the supervisor is unreachable or silent.
  Verdict submit(const Proposal& p);
  bool used_fallback() const { return used_fallback_; }

 private:
  ClientConfig cfg_;
  net::LineSocket sock_;
  bool used_fallback_ = false;
};

}  // namespace eli::overseer
