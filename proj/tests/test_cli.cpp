#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridhouse/agents.hpp"
#include "gridhouse/demo.hpp"
#include "gridhouse/env.hpp"
#include "gridhouse/session.hpp"

using namespace gridhouse;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run sh(const std::string& args, const std::string& stdin_file = {}) {
  std::string cmd = std::string("\"") + GRIDHOUSE_CLI + "\" " + args;
  if (!stdin_file.empty()) cmd += " < \"" + stdin_file + "\"";
  cmd += " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path tmp(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gridhouse_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
  std::ofstream out(p);
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace

TEST(Cli, ScriptedRunSucceeds) {
  const auto r = sh("run --agent scripted:printer --task installing_printer --seed 3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("terminated (goal met)"), std::string::npos);
}

TEST(Cli, TruncationExitCode) {
  const auto r = sh("run --agent random --task installing_printer --seed 3 --max-steps 50");
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("50 steps"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(sh("run --task no_such_task").code, 1);
  EXPECT_EQ(sh("run --agent telepathy").code, 1);
  EXPECT_EQ(sh("run --agent scripted:dishes --task installing_printer").code, 1);
  EXPECT_EQ(sh("bench --steps 10").code, 1);
  EXPECT_EQ(sh("").code, 1);
}

TEST(Cli, RecordReplayAndTamper) {
  const auto demo = tmp("dishes.demo");
  auto r = sh("record --agent scripted --task putting_away_dishes --reward-mode dense --seed 4 --out \"" + demo.string() + "\"");
  ASSERT_EQ(r.code, 0) << r.out;
  r = sh("replay \"" + demo.string() + "\"");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("match:"), std::string::npos);

  auto lines = read_lines(demo);
  ASSERT_GT(lines.size(), 3u);
  auto step = Json::parse(lines[2]);
  step["a"] = (step["a"].get<int>() + 1) % kNumPrimitiveActions;
  auto tampered = lines;
  tampered[2] = step.dump();
  const auto bad = tmp("tampered.demo");
  write_lines(bad, tampered);
  r = sh("replay \"" + bad.string() + "\"");
  EXPECT_EQ(r.code, 3) << r.out;

  auto header = Json::parse(lines[0]);
  header["format_version"] = 99;
  auto future = lines;
  future[0] = header.dump();
  const auto fut = tmp("future.demo");
  write_lines(fut, future);
  r = sh("replay \"" + fut.string() + "\"");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("VersionMismatch"), std::string::npos);

  EXPECT_EQ(sh("replay \"" + tmp("missing.demo").string() + "\"").code, 1);
}

TEST(Cli, FixturesReplay) {
  for (const auto& e : fs::directory_iterator(fs::path(GRIDHOUSE_TEST_DIR) / "fixtures")) {
    const auto r = sh("replay \"" + e.path().string() + "\"");
    EXPECT_EQ(r.code, 0) << e.path() << "\n" << r.out;
  }
}

TEST(Cli, TasksListing) {
  auto r = sh("tasks");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  int n = 0;
  for (std::string l; std::getline(in, l);) n += !l.empty();
  EXPECT_EQ(n, 20);
  r = sh("tasks -v");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("installing_printer  cartesian=8"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("preparing_salad  cartesian=55"), std::string::npos) << r.out;
}

TEST(Cli, ManualModeFromPipedKeys) {
  EnvConfig c;
  c.task = "installing_printer";
  c.seed = 3;
  Environment env(c);
  env.reset();
  const auto sol = scripted_solution(env.world(), env.task());
  ASSERT_TRUE(sol.has_value());

  const auto keys = tmp("keys.txt");
  {
    std::ofstream out(keys);
    out << "!";  // not bound
    for (int a : *sol) out << action_key(static_cast<PrimitiveAction>(a));
    out << "q";
  }
  const auto demo = tmp("manual.demo");
  const auto r = sh("manual --task installing_printer --seed 3 --record \"" + demo.string() + "\"", keys.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("warning: key '!' is not bound to an action"), std::string::npos);
  EXPECT_NE(r.out.find("terminated (goal met)"), std::string::npos);

  const auto d = load_demo(demo);
  EXPECT_EQ(d.steps.size(), sol->size());
  EXPECT_EQ(d.controller, "human");
  EXPECT_TRUE(replay_demo(d).ok());
}

TEST(Cli, BenchJson) {
  const auto r = sh("bench --task installing_printer --steps 2000 --json");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = Json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(j["steps"].get<std::uint64_t>(), 2000u);
  EXPECT_EQ(j["grid_size"].get<int>(), 10);
  EXPECT_GT(j["steps_per_second"].get<double>(), 0.0);
}

TEST(Cli, LockIdsMatchesShippedFile) {
  const auto r = sh("lock-ids");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, Registry::builtin().render_ids_lock());
}
