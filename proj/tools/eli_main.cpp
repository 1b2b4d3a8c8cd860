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

// eli: conversation REPL, golden script replay, supervisor and session
// servers, the motivation tracer and a perception dump.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "eli/dialog.hpp"
#include "eli/drive.hpp"
#include "eli/png_io.hpp"
#include "eli/text.hpp"

namespace {

using namespace eli;

volatile std::sig_atomic_t g_stop = 0;

void wait_for_signal() {
  std::signal(SIGINT, [](int) { g_stop = 1; });
  std::signal(SIGTERM, [](int) { g_stop = 1; });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

world::SceneSpec scene_arg(const std::string& arg, const std::string& data_dir) {
  if (std::filesystem::exists(arg)) return world::load_scene_file(arg);
  return world::load_scene_file(data_dir + "/scenes/" + arg + ".scene");
}

void configure_supervisor(dialog::SessionConfig& cfg, const std::string& arg) {
  if (arg == "off") {
    cfg.supervisor = dialog::SupervisorMode::kOff;
  } else if (arg == "local") {
    cfg.supervisor = dialog::SupervisorMode::kLocal;
  } else {
    const auto [host, port] = net::parse_endpoint(arg);
    cfg.supervisor = dialog::SupervisorMode::kRemote;
    cfg.client.host = host;
    cfg.client.port = port;
  }
}

int repl(dialog::Session& session) {
  std::string line;
  std::cout << "eli ready; '!point <id>', '!transfer', ':save <file>', ':quit'\n";
  while (std::cout << "you> " << std::flush, std::getline(std::cin, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line == ":quit") break;
    if (starts_with(line, ":save ")) {
      std::ofstream(trim(line.substr(6))) << lexmem::save_lexicon(session.lexicon());
      continue;
    }
    try {
      std::vector<std::string> said;
      if (line[0] == '!') {
        for (const auto& s : dialog::run_script(session, line).steps) said = s.actual;
      } else {
        for (const auto& r : session.handle_utterance(line)) said.push_back(dialog::render(r));
      }
      for (const auto& s : said) std::cout << "eli> " << s << '\n';
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabletop robot that learns nouns and verbs from conversation"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  dialog::SessionConfig cfg;
  std::string scene, lexicon, supervisor = "off", script;
  app.add_option("--data-dir", cfg.data_dir, "Bundled data directory");
  app.add_option("--scene", scene, "Scene file or bundled scene name");
  app.add_option("--lexicon", lexicon, "Lexicon file to start from");
  app.add_option("--supervisor", supervisor, "host:port, local or off");
  app.add_option("--script", script, "Replay a golden script and exit");
  app.add_option("--seed", cfg.seed, "Render noise seed");
  app.add_option("--mishear", cfg.mishear, "Chance of hearing 'aspirin' as 'offering'")
      ->check(CLI::Range(0.0, 1.0));

  auto* supervise = app.add_subcommand("supervise", "Run the reference supervisor");
  std::string sup_listen = "127.0.0.1:7070";
  supervise->add_option("--listen", sup_listen, "host:port");

  auto* serve = app.add_subcommand("serve", "Serve the session wire protocol");
  std::string serve_listen = "127.0.0.1:7071";
  serve->add_option("--listen", serve_listen, "host:port");

  auto* drive = app.add_subcommand("drive", "Trace the motivation rules over an event script");
  std::string drive_script, drive_expect;
  drive->add_option("script", drive_script, "Event script")->required()->check(CLI::ExistingFile);
  drive->add_option("--expect", drive_expect, "Golden trace to compare against")->check(CLI::ExistingFile);

  auto* perceive = app.add_subcommand("perceive", "Print percepts for a scene as JSON");
  std::string overlay_out;
  perceive->add_option("--overlay", overlay_out, "Write an annotated PNG");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*drive) {
      const auto trace = drive::Driver().run(read_file(drive_script));
      const std::string text = join(trace, "\n") + "\n";
      std::cout << text;
      if (!drive_expect.empty() && drop_comment_lines(read_file(drive_expect)) != drop_comment_lines(text)) {
        std::cerr << "trace differs from " << drive_expect << '\n';
        return 1;
      }
      return 0;
    }
    if (*supervise) {
      auto sup = overseer::Supervisor::from_dir(cfg.data_dir + "/supervisor");
      const auto [host, port] = net::parse_endpoint(sup_listen);
      net::LineServer server(host, port, [&](net::LineSocket& s) { sup->serve_connection(s); });
      std::cout << "supervisor on " << host << ":" << server.port() << std::endl;
      wait_for_signal();
      server.stop();
      return 0;
    }

    configure_supervisor(cfg, supervisor);
    if (!lexicon.empty()) cfg.lexicon_path = lexicon;

    if (*perceive) {
      world::WorldState w = world::make_world(scene_arg(scene.empty() ? "pronoun4" : scene, cfg.data_dir),
                                              cfg.world);
      const Frame f = world::render_rgb(w, cfg.world, cfg.seed);
      const auto ps = percept::perceive(f, nullptr, cfg.percept);
      std::cout << percept::report_json(ps) << '\n';
      if (!overlay_out.empty()) write_png(overlay_out, percept::overlay(f, ps));
      return 0;
    }
    if (*serve) {
      const auto [host, port] = net::parse_endpoint(serve_listen);
      std::optional<std::string> start;
      if (!scene.empty()) start = scene;
      auto server = dialog::serve_sessions(host, port, cfg, start);
      std::cout << "sessions on " << host << ":" << server->port() << std::endl;
      wait_for_signal();
      server->stop();
      return 0;
    }

    dialog::Session session(cfg);
    if (!scene.empty()) session.load_scene(scene_arg(scene, cfg.data_dir));
    if (!script.empty()) {
      const auto result = dialog::run_script(session, read_file(script));
      std::cout << dialog::format_result(result);
      return result.ok() ? 0 : 1;
    }
    return repl(session);
  } catch (const std::exception& e) {
    std::cerr << "eli: " << e.what() << '\n';
    return 2;
  }
}
