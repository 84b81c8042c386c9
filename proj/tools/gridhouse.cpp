// gridhouse command-line tool. Exit codes: 0 goal reached / replay match,
// 1 usage or resolution error, 2 episode truncated, 3 replay mismatch.
#include <csignal>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>

#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "gridhouse/agents.hpp"
#include "gridhouse/bench.hpp"
#include "gridhouse/demo.hpp"
#include "gridhouse/json_io.hpp"
#include "gridhouse/render.hpp"
#include "gridhouse/server.hpp"
#include "gridhouse/session.hpp"

using namespace gridhouse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTruncated = 2;
constexpr int kExitMismatch = 3;

struct EnvFlags {
  std::string task = "installing_printer";
  std::uint64_t seed = 0;
  int grid_size = 0;
  int rooms = 0;
  std::string action_mode = "primitive";
  std::string obs_mode = "partial";
  std::string reward_mode = "sparse";
  int max_steps = 1000;

  void add_to(CLI::App* app) {
    app->add_option("--task", task, "task name or path to a .task file");
    app->add_option("--seed", seed, "procedural generation seed");
    app->add_option("--grid-size", grid_size, "override the task grid (n x n)");
    app->add_option("--rooms", rooms, "override the room count");
    app->add_option("--action-mode", action_mode, "primitive | cartesian");
    app->add_option("--obs-mode", obs_mode, "partial | full");
    app->add_option("--reward-mode", reward_mode, "sparse | dense");
    app->add_option("--max-steps", max_steps, "episode time limit");
  }

  EnvConfig config() const {
    EnvConfig c;
    c.task = task;
    c.seed = seed;
    if (grid_size > 0) c.grid_size = grid_size;
    if (rooms > 0) c.rooms = rooms;
    c.action_mode = parse_action_mode(action_mode);
    c.obs_mode = parse_obs_mode(obs_mode);
    c.reward_mode = parse_reward_mode(reward_mode);
    c.max_steps = max_steps;
    return c;
  }
};

const std::map<std::string, std::string>& script_aliases() {
  static const std::map<std::string, std::string> m{
      {"printer", "installing_printer"},
      {"dishes", "putting_away_dishes"},
      {"pots", "washing_pots_and_pans"},
  };
  return m;
}

int finish_code(const Environment& env) { return env.terminated() ? kExitOk : kExitTruncated; }

void print_summary(const Environment& env) {
  std::cout << "task " << env.task().name << " seed " << env.config().seed << ": " << env.world().step_count() << " steps, reward "
            << env.episode_reward() << ", " << (env.terminated() ? "terminated (goal met)" : env.truncated() ? "truncated (time limit)" : "unfinished")
            << "\nfinal hash " << hex64(env.state_hash()) << "\n";
}

int cmd_run(const EnvFlags& flags, const std::string& agent, const std::string& record, bool log) {
  EnvConfig cfg = flags.config();
  cfg.atom_deltas = false;
  Environment env(cfg);
  env.reset();

  std::vector<int> plan;
  std::optional<RandomAgent> random;
  std::string controller;
  if (agent == "random" || agent == "random-valid") {
    random.emplace(cfg.seed ^ 0x9e3779b97f4a7c15ULL, agent == "random-valid");
    controller = "random";
  } else if (agent == "scripted" || agent.starts_with("scripted:")) {
    std::string name = agent == "scripted" ? env.task().name : agent.substr(9);
    if (auto it = script_aliases().find(name); it != script_aliases().end()) name = it->second;
    if (!has_script(name)) throw std::invalid_argument("no scripted agent '" + name + "'");
    if (name != env.task().name) throw std::invalid_argument("scripted agent '" + name + "' does not solve task " + env.task().name);
    if (cfg.action_mode != ActionMode::Primitive) throw std::invalid_argument("scripted agents emit primitive actions");
    std::string why;
    auto sol = scripted_solution(env.world(), env.task(), &why);
    if (!sol) throw std::runtime_error("scripted agent failed: " + why);
    plan = std::move(*sol);
    controller = "scripted";
  } else if (agent == "bfs") {
    auto sol = bfs_solve(env);
    if (!sol) throw std::runtime_error("bfs: search space exceeded");
    plan = std::move(*sol);
    controller = "bfs";
  } else {
    throw std::invalid_argument("unknown agent '" + agent + "' (random, random-valid, scripted[:name], bfs)");
  }

  DemoRecorder rec(env.config(), controller);
  std::size_t next = 0;
  while (!env.finished()) {
    int a = 0;
    if (random) a = random->act(env);
    else if (next < plan.size()) a = plan[next++];
    else break;
    const auto r = env.step(a);
    rec.record(a, r);
    if (log) {
      std::cout << std::setw(5) << env.world().step_count() << " " << env.action_label(a) << (r.info.outcome.succeeded ? "" : " (failed: ")
                << (r.info.outcome.succeeded ? "" : std::string(to_string(r.info.outcome.reason)) + ")") << " r=" << r.reward << "\n";
    }
  }
  print_summary(env);
  if (!record.empty()) {
    save_demo(rec.finish(env), record);
    std::cout << "demo written to " << record << "\n";
  }
  return finish_code(env);
}

int cmd_bench(const EnvFlags& flags, std::uint64_t steps, int instances, bool json) {
  if (steps < 1000) throw std::invalid_argument("--steps must be at least 1000");
  EnvConfig cfg = flags.config();
  if (cfg.grid_size.value_or(0) == 0) cfg.grid_size = 10;
  std::vector<BenchReport> rows{run_bench(cfg, steps, 1)};
  if (instances > 1) rows.push_back(run_bench(cfg, steps, instances));
  for (const auto& r : rows) {
    if (json) {
      Json j;
      j["task"] = r.task;
      j["grid_size"] = r.grid_size;
      j["action_mode"] = std::string(to_string(r.action_mode));
      j["steps"] = r.steps;
      j["wall_seconds"] = r.wall_seconds;
      j["steps_per_second"] = r.steps_per_second;
      j["instances"] = r.instances;
      j["threads"] = r.threads;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << r.task << " " << r.grid_size << "x" << r.grid_size << " " << to_string(r.action_mode) << " instances=" << r.instances
                << " threads=" << r.threads << " steps=" << r.steps << " wall=" << std::fixed << std::setprecision(3) << r.wall_seconds
                << "s steps/s=" << std::setprecision(0) << r.steps_per_second << std::defaultfloat << "\n";
    }
  }
  return kExitOk;
}

int cmd_replay(const std::string& path) {
  DemoRecord d;
  try {
    d = load_demo(path);
  } catch (const DemoError& e) {
    std::cerr << (e.kind() == DemoErrorKind::VersionMismatch ? "VersionMismatch: " : "malformed demo: ") << e.what() << "\n";
    return kExitError;
  }
  const auto r = replay_demo(d);
  if (r.ok()) {
    std::cout << "match: " << d.steps.size() << " steps, final hash " << hex64(r.replayed_hash) << "\n";
    return kExitOk;
  }
  std::cout << (r.status == ReplayStatus::HashMismatch ? "HashMismatch" : std::string(to_string(r.status))) << " at step " << r.step << ": "
            << r.detail << "\n";
  return kExitMismatch;
}

// Raw single-key input when stdin is a terminal; plain byte reads otherwise,
// so a key script can be piped in.
class KeyReader {
 public:
  KeyReader() {
    if (isatty(STDIN_FILENO) && tcgetattr(STDIN_FILENO, &saved_) == 0) {
      termios raw = saved_;
      raw.c_lflag &= static_cast<tcflag_t>(~(ICANON | ECHO));
      raw.c_cc[VMIN] = 1;
      raw.c_cc[VTIME] = 0;
      raw_ = tcsetattr(STDIN_FILENO, TCSANOW, &raw) == 0;
    }
  }
  ~KeyReader() {
    if (raw_) tcsetattr(STDIN_FILENO, TCSANOW, &saved_);
  }
  // Returns the key, 'U'/'L'/'R' for arrows, 0 at end of input.
  char next() {
    char c = 0;
    if (read(STDIN_FILENO, &c, 1) != 1) return 0;
    if (c != '\x1b') return c;
    char seq[2];
    if (read(STDIN_FILENO, &seq[0], 1) != 1 || read(STDIN_FILENO, &seq[1], 1) != 1) return 0;
    if (seq[0] != '[') return '?';
    switch (seq[1]) {
      case 'A': return 'U';
      case 'D': return 'L';
      case 'C': return 'R';
      default: return '?';
    }
  }

 private:
  termios saved_{};
  bool raw_ = false;
};

void print_legend() {
  std::cout << "keys: up arrow forward, left/right arrows turn, q quit\n";
  for (int i = 0; i < kNumPrimitiveActions; ++i) {
    const auto a = static_cast<PrimitiveAction>(i);
    std::cout << "  " << action_key(a) << " " << to_string(a) << "\n";
  }
}

int cmd_manual(const EnvFlags& flags, const std::string& record) {
  EnvConfig cfg = flags.config();
  cfg.action_mode = ActionMode::Primitive;
  cfg.atom_deltas = false;
  Environment env(cfg);
  env.reset();
  DemoRecorder rec(env.config(), "human");
  KeyReader keys;
  print_legend();
  std::cout << render_ascii(env.world()) << render_closeup(env.world()) << std::flush;
  while (!env.finished()) {
    const char k = keys.next();
    if (k == 0 || k == 'q') break;
    if (k == '\n' || k == '\r' || k == ' ') continue;
    std::optional<PrimitiveAction> a;
    if (k == 'U') a = PrimitiveAction::Forward;
    else if (k == 'L') a = PrimitiveAction::TurnLeft;
    else if (k == 'R') a = PrimitiveAction::TurnRight;
    else a = action_for_key(k);
    if (!a) {
      std::cout << "warning: key '" << k << "' is not bound to an action\n" << std::flush;
      continue;
    }
    const auto r = env.step(static_cast<int>(*a));
    rec.record(static_cast<int>(*a), r);
    std::cout << "\n" << to_string(*a);
    if (!r.info.outcome.succeeded) std::cout << " failed: " << to_string(r.info.outcome.reason);
    std::cout << "  reward " << r.reward << "  step " << env.world().step_count() << "\n";
    std::cout << render_ascii(env.world()) << render_closeup(env.world()) << std::flush;
  }
  print_summary(env);
  if (!record.empty()) {
    save_demo(rec.finish(env), record);
    std::cout << "demo written to " << record << "\n";
  }
  return env.terminated() ? kExitOk : env.truncated() ? kExitTruncated : kExitOk;
}

Server* g_server = nullptr;
extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string& host, unsigned short port, const std::string& demo_dir) {
  Server server({host, port, demo_dir});
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on ws://" << host << ":" << server.port() << std::endl;
  server.run();
  g_server = nullptr;
  return kExitOk;
}

int cmd_tasks(bool verbose) {
  for (const auto& t : TaskLibrary::builtin().tasks()) {
    std::cout << t.name;
    if (verbose) {
      const auto space = build_cartesian_space(t.cartesian_entities(), default_validity_table(Registry::builtin()));
      std::cout << "  cartesian=" << space.dimension() << " milestones=" << t.milestones.size()
                << (t.layout.file.empty() ? "  grid=" + std::to_string(t.layout.width) + "x" + std::to_string(t.layout.height)
                                          : "  layout=" + t.layout.file);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridhouse: household-task gridworld simulator"};
  app.require_subcommand(1);

  EnvFlags flags;
  std::string agent = "random";
  std::string record;
  bool log = false;
  auto* run = app.add_subcommand("run", "run one episode with an automatic controller");
  flags.add_to(run);
  run->add_option("--agent", agent, "random | random-valid | scripted[:name] | bfs");
  run->add_option("--record", record, "write the episode as a demo file");
  run->add_flag("--log", log, "print one line per step");

  std::uint64_t steps = 100000;
  int instances = 1;
  bool json = false;
  auto* bench = app.add_subcommand("bench", "measure single-instance stepping throughput");
  flags.add_to(bench);
  bench->add_option("--steps", steps, "steps to run (>= 1000)");
  bench->add_option("--instances", instances, "also run N independent instances, one thread each");
  bench->add_flag("--json", json, "one JSON object per row");

  auto* rec = app.add_subcommand("record", "run an episode and save it as a demo (run with --record)");
  flags.add_to(rec);
  rec->add_option("--agent", agent, "random | random-valid | scripted[:name] | bfs");
  rec->add_option("--record,--out", record, "demo path")->required();

  std::string demo_path;
  auto* replay = app.add_subcommand("replay", "re-run a demo and compare rewards and final hash");
  replay->add_option("path", demo_path, "demo file")->required();

  auto* manual = app.add_subcommand("manual", "keyboard control in the terminal");
  flags.add_to(manual);
  manual->add_option("--record", record, "write the episode as a demo file");

  std::string host = "127.0.0.1";
  unsigned short port = 8765;
  std::string demo_dir;
  auto* serve = app.add_subcommand("serve", "websocket session server");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port, 0 for any free one");
  serve->add_option("--demo-dir", demo_dir, "flush session demos here on shutdown");

  bool verbose = false;
  auto* tasks = app.add_subcommand("tasks", "list the task library");
  tasks->add_flag("-v,--verbose", verbose, "show action-space sizes and layouts");

  auto* lock = app.add_subcommand("lock-ids", "print ids.lock for the current registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*run) return cmd_run(flags, agent, record, log);
    if (*rec) return cmd_run(flags, agent, record, false);
    if (*bench) return cmd_bench(flags, steps, instances, json);
    if (*replay) return cmd_replay(demo_path);
    if (*manual) return cmd_manual(flags, record);
    if (*serve) return cmd_serve(host, port, demo_dir);
    if (*tasks) return cmd_tasks(verbose);
    if (*lock) {
      std::cout << Registry::builtin().render_ids_lock();
      return kExitOk;
    }
  } catch (const TaskError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
