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


#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "eli/overseer.hpp"
#include "eli/text.hpp"
#include "test_support.hpp"

namespace eli::overseer {
namespace {

using Kind = Verdict::Kind;

struct Databases {
  PatientDB db = load_patient_db(read_file(testing::data_path("supervisor/patient.db")));
  Taxonomy tax = load_taxonomy(read_file(testing::data_path("supervisor/taxonomy.txt")));
};

Proposal give(const std::string& id, int act, const std::string& name, std::vector<std::string> visible,
              double now, std::optional<int> object = 1) {
  ActionSpec a;
  a.act = act;
  a.verb = "hand_give";
  a.object = object;
  a.name = name;
  a.to_user = true;
  return {id, now, encode_proposal(a, visible)};
}

// the four supervisor cases in order, sharing one lifelog
std::vector<Proposal> session_cases() {
  const std::vector<std::string> visible{"Tylenol", "Tums"};
  return {give("p1", 1, "aspirin", visible, 10.0), give("p2", 2, "Tylenol", visible, 20.0),
          give("p3", 3, "Roloids", visible, 30.0, std::nullopt), give("p4", 4, "Tylenol", visible, 40.0)};
}

TEST(Encode, GiveHasFourActionTriplesPlusScene) {
  const auto t = encode_proposal({1, "hand_give", 2, "Tylenol", true}, {"Tylenol", "Tums"});
  const std::vector<Triple> want{{"act-1", "type", "hand_give"},    {"act-1", "object", "obj-2"},
                                 {"obj-2", "name", "Tylenol"},      {"act-1", "recipient", "user"},
                                 {"scene", "contains", "Tylenol"}, {"scene", "contains", "Tums"}};
  EXPECT_EQ(t, want);
}

TEST(Encode, WaveIsASingleTriple) {
  EXPECT_EQ(encode_proposal({3, "wave", std::nullopt, std::nullopt, false}, {}),
            (std::vector<Triple>{{"act-3", "type", "wave"}}));
}

TEST(Encode, UnnamedObjectIsUnknown) {
  const auto t = encode_proposal({1, "hand_grab", 4, std::nullopt, false}, {});
  EXPECT_EQ(t.at(2), (Triple{"obj-4", "name", "unknown"}));
}

TEST(Encode, MultiWordNamesTravelAsOneToken) {
  EXPECT_EQ(to_token("dos equis"), "dos_equis");
  EXPECT_EQ(from_token("dos_equis"), "dos equis");
  EXPECT_EQ(to_token(""), "unknown");
}

TEST(Vet, SupervisorCases) {
  Databases d;
  LifeLog log;
  const auto cases = session_cases();
  const Verdict v1 = vet(cases[0], d.db, log, d.tax);
  EXPECT_EQ(v1.kind, Kind::kVeto);
  EXPECT_EQ(v1.reason, "that will hurt your stomach");
  const Verdict v2 = vet(cases[1], d.db, log, d.tax);
  EXPECT_EQ(v2.kind, Kind::kAccept);
  ASSERT_EQ(log.entries.size(), 1u);
  EXPECT_EQ(log.entries[0].detail, "Tylenol");
  const Verdict v3 = vet(cases[2], d.db, log, d.tax);
  EXPECT_EQ(v3.kind, Kind::kCounter);
  EXPECT_EQ(v3.alternative, "Tums");
  EXPECT_EQ(v3.reason, "another antacid");
  const Verdict v4 = vet(cases[3], d.db, log, d.tax);
  EXPECT_EQ(v4.kind, Kind::kVeto);
  EXPECT_EQ(v4.reason, "recent dose");
  EXPECT_EQ(log.entries.size(), 1u);
}

TEST(Vet, DoseAllowedAgainAfterInterval) {
  Databases d;
  LifeLog log;
  EXPECT_EQ(vet(give("a", 1, "Tylenol", {"Tylenol"}, 0.0), d.db, log, d.tax).kind, Kind::kAccept);
  EXPECT_EQ(vet(give("b", 2, "Tylenol", {"Tylenol"}, 3600.0), d.db, log, d.tax).kind, Kind::kVeto);
  EXPECT_EQ(vet(give("c", 3, "Tylenol", {"Tylenol"}, 5 * 3600.0), d.db, log, d.tax).kind, Kind::kAccept);
}

TEST(Vet, NonGiveActionsPass) {
  Databases d;
  LifeLog log;
  ActionSpec grab{1, "hand_grab", 1, "aspirin", false};
  EXPECT_EQ(vet({"g", 0, encode_proposal(grab, {"aspirin"})}, d.db, log, d.tax).kind, Kind::kAccept);
  EXPECT_TRUE(log.entries.empty());
}

TEST(Vet, MalformedProposalIsAnError) {
  Databases d;
  LifeLog log;
  EXPECT_EQ(vet({"x", 0, {}}, d.db, log, d.tax).kind, Kind::kError);
  Proposal two{"y", 0, {{"act-1", "type", "wave"}, {"act-2", "type", "wave"}}};
  EXPECT_EQ(vet(two, d.db, log, d.tax).kind, Kind::kError);
}

TEST(LifeLogTest, StaysMonotone) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> t(0.0, 1e5);
  LifeLog log;
  for (int i = 0; i < 500; ++i) log.append(t(rng), "dose", "x");
  for (std::size_t i = 1; i < log.entries.size(); ++i) {
    ASSERT_GE(log.entries[i].time, log.entries[i - 1].time);
  }
  EXPECT_TRUE(log.last("dose", "X"));
  EXPECT_FALSE(log.last("dose", "y"));
}

TEST(LifeLogTest, MonotoneUnderVetting) {
  Databases d;
  LifeLog log;
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> t(0.0, 1e5);
  const char* names[] = {"Tylenol", "Tums", "aspirin", "Advil", "Coke"};
  for (int i = 0; i < 300; ++i) {
    vet(give("p", i + 1, names[i % 5], {"Tylenol", "Tums", "Advil"}, t(rng)), d.db, log, d.tax);
  }
  for (std::size_t i = 1; i < log.entries.size(); ++i) ASSERT_GE(log.entries[i].time, log.entries[i - 1].time);
}

TEST(Taxonomy, ChainNearestFirst) {
  Databases d;
  EXPECT_EQ(d.tax.chain("Tums"), (std::vector<std::string>{"antacid", "medication"}));
  EXPECT_TRUE(d.tax.chain("plutonium").empty());
  Taxonomy loop;
  loop.parent = {{"a", "b"}, {"b", "a"}};
  EXPECT_LE(loop.chain("a").size(), 2u);
}

TEST(Loaders, ErrorsNameTheLine) {
  try {
    load_patient_db("# x\naspirin\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(load_taxonomy("a b c\n"), LoadError);
}

TEST(Wire, FormatAndParse) {
  const auto lines = format_proposal(session_cases()[1]);
  EXPECT_EQ(lines.front(), "PROPOSE p2 20");
  EXPECT_EQ(lines[1], "T act-2 type hand_give");
  EXPECT_EQ(lines.back(), "END");
  const Verdict counter{Kind::kCounter, "Tums", "another antacid"};
  EXPECT_EQ(format_verdict("p3", counter), "COUNTER p3 Tums another antacid");
  EXPECT_EQ(parse_verdict("COUNTER p3 Tums another antacid"), (std::pair<std::string, Verdict>{"p3", counter}));
  EXPECT_EQ(parse_verdict("VETO p1 recent dose").second.reason, "recent dose");
  EXPECT_EQ(parse_verdict("ACCEPT p9").second.kind, Kind::kAccept);
  EXPECT_EQ(parse_verdict("ERROR bad frame").second.kind, Kind::kError);
  EXPECT_THROW(parse_verdict("MAYBE p1"), std::invalid_argument);
  EXPECT_THROW(parse_verdict("COUNTER p1 Tums"), std::invalid_argument);
  EXPECT_THROW(parse_verdict(""), std::invalid_argument);
}

TEST(Wire, ReaderRoundTrip) {
  for (const auto& p : session_cases()) {
    ProposalReader r;
    std::string err;
    std::optional<Proposal> got;
    for (const auto& l : format_proposal(p)) {
      got = r.feed(l, err);
      ASSERT_TRUE(err.empty()) << err;
    }
    ASSERT_TRUE(got);
    EXPECT_EQ(*got, p);
  }
}

TEST(Wire, ReaderRejectsGarbage) {
  const std::vector<std::vector<std::string>> bad{
      {"T a b c"}, {"PROPOSE x", "PROPOSE y"}, {"PROPOSE x notatime"}, {"PROPOSE x", "T a b"},
      {"END"},     {"HELLO"},                  {"PROPOSE"}};
  for (const auto& frame : bad) {
    ProposalReader r;
    std::string err;
    bool saw = false;
    for (const auto& l : frame) {
      r.feed(l, err);
      saw = saw || !err.empty();
    }
    EXPECT_TRUE(saw) << join(frame, " | ");
  }
}

std::vector<Verdict> direct_verdicts() {
  Databases d;
  LifeLog log;
  std::vector<Verdict> out;
  for (const auto& p : session_cases()) out.push_back(vet(p, d.db, log, d.tax));
  return out;
}

TEST(Loopback, SameVerdictsAsDirectVetting) {
  auto sup = Supervisor::from_dir(testing::data_path("supervisor"));
  net::LineServer server("127.0.0.1", 0, [&](net::LineSocket& s) { sup->serve_connection(s); });
  SupervisorClient client({"127.0.0.1", server.port(), std::chrono::milliseconds(2000)});
  const auto want = direct_verdicts();
  const auto cases = session_cases();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(client.submit(cases[i]), want[i]) << cases[i].id;
    EXPECT_FALSE(client.used_fallback());
  }
  EXPECT_EQ(sup->log().entries.size(), 1u);
}

TEST(Loopback, GarbledFramesGetErrorsAndTheConnectionSurvives) {
  auto sup = Supervisor::from_dir(testing::data_path("supervisor"));
  net::LineServer server("127.0.0.1", 0, [&](net::LineSocket& s) { sup->serve_connection(s); });
  auto sock = net::LineSocket::connect("127.0.0.1", server.port(), std::chrono::milliseconds(1000));
  ASSERT_TRUE(sock.valid());
  const std::chrono::milliseconds wait(2000);
  for (const char* junk : {"HELLO THERE", "T a b c", "PROPOSE x y z w", "END", "\x01\x02\x03"}) {
    ASSERT_TRUE(sock.send_line(junk));
    const auto reply = sock.read_line(wait);
    ASSERT_TRUE(reply) << junk;
    EXPECT_TRUE(starts_with(*reply, "ERROR")) << *reply;
  }
  for (const auto& l : format_proposal(session_cases()[1])) sock.send_line(l);
  const auto reply = sock.read_line(wait);
  ASSERT_TRUE(reply);
  EXPECT_EQ(*reply, "ACCEPT p2");
}

TEST(Loopback, SilentSupervisorTriggersFallback) {
  net::LineServer server("127.0.0.1", 0, [](net::LineSocket& s) {
    while (s.read_line(std::chrono::milliseconds(-1))) {
    }
  });
  SupervisorClient client({"127.0.0.1", server.port(), std::chrono::milliseconds(200)});
  const auto start = std::chrono::steady_clock::now();
  const Verdict v = client.submit(session_cases()[0]);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(2));
  EXPECT_TRUE(client.used_fallback());
  EXPECT_EQ(v, (Verdict{Kind::kAccept, "", "local-only mode"}));
}

TEST(Loopback, UnreachableSupervisorTriggersFallback) {
  int port = 0;
  {
    net::LineServer probe("127.0.0.1", 0, [](net::LineSocket&) {});
    port = probe.port();
  }
  ClientConfig cfg{"127.0.0.1", port, std::chrono::milliseconds(200)};
  cfg.fallback = Verdict{Kind::kVeto, "", "supervisor unavailable"};
  SupervisorClient client(cfg);
  EXPECT_EQ(client.submit(session_cases()[1]).reason, "supervisor unavailable");
  EXPECT_TRUE(client.used_fallback());
}

}  // namespace
}  // namespace eli::overseer
