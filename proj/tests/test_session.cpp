#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridhouse/agents.hpp"
#include "gridhouse/session.hpp"

using namespace gridhouse;

namespace {

const std::filesystem::path kGolden = std::filesystem::path(GRIDHOUSE_TEST_DIR) / "golden";

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Compares against tests/golden/<name>.json; GRIDHOUSE_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const Json& j) {
  const auto path = kGolden / (name + ".json");
  const auto text = j.dump(2) + "\n";
  if (std::getenv("GRIDHOUSE_UPDATE_GOLDEN") != nullptr) {
    std::filesystem::create_directories(kGolden);
    std::ofstream(path, std::ios::binary) << text;
  }
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(read(path), text) << name;
}

Json msg(const std::string& text) { return Json::parse(text); }

std::string code_of(const Json& reply) { return reply.value("type", "") == "error" ? reply.value("code", "") : ""; }

Session greeted(std::uint64_t id = 1) {
  Session s(id);
  s.handle(msg(R"({"type":"hello","client_version":1})"));
  return s;
}

}  // namespace

TEST(Protocol, GoldenExchanges) {
  Session s(7);
  const auto hello = msg(R"({"type":"hello","client_version":1})");
  expect_golden("hello", hello);
  expect_golden("welcome", s.handle(hello));

  const auto reset = msg(R"({"type":"reset","task":"installing_printer","seed":3,"config":{"obs_mode":"partial","max_steps":50}})");
  expect_golden("reset", reset);
  expect_golden("reset_snapshot", s.handle(reset));

  const auto action = msg(R"({"type":"action","encoding":2})");
  expect_golden("action", action);
  expect_golden("action_snapshot", s.handle(action));
}

TEST(Protocol, GoldenRequestsReplayFromFiles) {
  Session s(7);
  for (const char* pair : {"hello:welcome", "reset:reset_snapshot", "action:action_snapshot"}) {
    const std::string p(pair);
    const auto req = p.substr(0, p.find(':'));
    const auto rep = p.substr(p.find(':') + 1);
    EXPECT_EQ(s.handle_text(read(kGolden / (req + ".json"))), Json::parse(read(kGolden / (rep + ".json"))).dump());
  }
}

TEST(Protocol, SnapshotIsByteStable) {
  Session s = greeted();
  const auto snap = s.handle(msg(R"({"type":"reset","task":"washing_pots_and_pans","seed":1})"));
  const auto text = snap.dump();
  EXPECT_EQ(Json::parse(text).dump(), text);
  EXPECT_EQ(snap["type"], "snapshot");
  EXPECT_EQ(snap["last_action_outcome"], nullptr);
  EXPECT_EQ(snap["step"], 0);
  for (const char* key : {"task", "config", "width", "height", "rooms", "walls", "doors", "furniture", "objects", "agent",
                          "facing", "goal_progress", "step", "reward", "episode_reward", "terminated", "truncated",
                          "last_action_outcome", "state_hash"}) {
    EXPECT_TRUE(snap.contains(key)) << key;
  }
}

TEST(Protocol, SnapshotMatchesWorld) {
  Session s = greeted();
  const auto snap = s.handle(msg(R"({"type":"reset","task":"putting_away_dishes","seed":2})"));
  const auto& w = s.environment()->world();
  EXPECT_EQ(snap["objects"].size(), w.objects().size());
  EXPECT_EQ(snap["furniture"].size(), w.furniture().size());
  EXPECT_EQ(snap["agent"]["x"], w.agent().pos.x);
  EXPECT_EQ(snap["agent"]["y"], w.agent().pos.y);
  for (const auto& o : snap["objects"]) {
    const auto id = o["id"].get<ObjectId>();
    EXPECT_EQ(o["name"], w.object(id).name);
    for (const auto& [state, on] : o["states"].items()) {
      bool found = false;
      for (int k = 0; k < kNumAbsStates; ++k) {
        const auto st = static_cast<AbsState>(k);
        if (to_string(st) == state) {
          EXPECT_EQ(on.get<bool>(), w.object(id).states.has(st));
          found = true;
        }
      }
      EXPECT_TRUE(found) << state;
    }
  }
  EXPECT_EQ(snap["goal_progress"]["milestones"], 6);
}

TEST(Protocol, Errors) {
  Session s(1);
  EXPECT_EQ(code_of(msg(s.handle_text("not json"))), "BAD_MESSAGE");
  EXPECT_EQ(code_of(s.handle(msg(R"({"kind":"hello"})"))), "BAD_MESSAGE");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"reset","task":"installing_printer"})"))), "NO_HELLO");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"hello","client_version":2})"))), "VERSION_MISMATCH");
  EXPECT_FALSE(s.greeted());
  EXPECT_EQ(s.handle(msg(R"({"type":"hello","client_version":1})"))["type"], "welcome");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"action","encoding":0})"))), "NO_EPISODE");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"save_demo","path":"/tmp/x.demo"})"))), "NO_EPISODE");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"reset","task":"nonsense"})"))), "UNKNOWN_TASK");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"reset","task":"installing_printer","config":{"action_mode":"both"}})"))), "BAD_CONFIG");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"reset","task":"installing_printer","config":{"reward_mode":"dense"}})"))), "BAD_TASK");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"reset","task":"installing_printer","config":{"grid_size":5,"rooms":4}})"))), "PROCGEN_FAILED");
  EXPECT_EQ(s.handle(msg(R"({"type":"reset","task":"installing_printer","seed":0})"))["type"], "snapshot");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"action","encoding":15})"))), "INVALID_ENCODING");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"action","encoding":"f"})"))), "INVALID_ENCODING");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"action","encoding":-1})"))), "INVALID_ENCODING");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"set_view","mode":"xray"})"))), "BAD_MESSAGE");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"set_view","z":3})"))), "BAD_MESSAGE");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"save_demo","path":"/nonexistent/dir/x.demo"})"))), "SAVE_FAILED");
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"dance"})"))), "BAD_MESSAGE");
  const auto err = s.handle(msg(R"({"type":"dance"})"));
  EXPECT_TRUE(err["message"].is_string());
}

TEST(Protocol, SetViewEchoesState) {
  Session s = greeted();
  const auto v = s.handle(msg(R"({"type":"set_view","mode":"single_dim","z":2})"));
  EXPECT_EQ(v["type"], "view");
  EXPECT_EQ(v["mode"], "single_dim");
  EXPECT_EQ(v["z"], 2);
  EXPECT_EQ(v["closeup"], false);
  const auto c = s.handle(msg(R"({"type":"set_view","closeup":true})"));
  EXPECT_EQ(c["mode"], "default");
  EXPECT_EQ(c["closeup"], true);
}

TEST(Protocol, EpisodeFinishesAndSavedDemoReplays) {
  Session s = greeted(3);
  s.handle(msg(R"({"type":"reset","task":"installing_printer","seed":5})"));
  const auto plan = scripted_solution(s.environment()->world(), s.environment()->task());
  ASSERT_TRUE(plan);
  Json last;
  for (int a : *plan) {
    Json m;
    m["type"] = "action";
    m["encoding"] = a;
    last = s.handle(m);
    ASSERT_EQ(last["type"], "snapshot");
  }
  EXPECT_EQ(last["terminated"], true);
  EXPECT_EQ(last["episode_reward"], 1.0);
  EXPECT_EQ(last["goal_progress"]["goal_met"], true);
  EXPECT_EQ(last["last_action_outcome"]["succeeded"], true);
  EXPECT_EQ(code_of(s.handle(msg(R"({"type":"action","encoding":0})"))), "EPISODE_FINISHED");

  const auto path = std::filesystem::temp_directory_path() / "gridhouse_session_test.demo";
  Json save;
  save["type"] = "save_demo";
  save["path"] = path.string();
  const auto saved = s.handle(save);
  ASSERT_EQ(saved["type"], "saved");
  EXPECT_EQ(saved["steps"], plan->size());
  EXPECT_EQ(saved["final_hash"], last["state_hash"]);
  const auto d = load_demo(path);
  EXPECT_EQ(d.controller, "human");
  EXPECT_TRUE(replay_demo(d).ok());
  std::filesystem::remove(path);
}

TEST(Protocol, FlushWritesAutosave) {
  const auto dir = std::filesystem::temp_directory_path() / "gridhouse_flush_test";
  std::filesystem::remove_all(dir);
  Session s(11, dir);
  EXPECT_FALSE(s.flush().has_value());
  s.handle(msg(R"({"type":"hello","client_version":1})"));
  s.handle(msg(R"({"type":"reset","task":"making_tea","seed":1})"));
  EXPECT_FALSE(s.flush().has_value()) << "nothing recorded yet";
  s.handle(msg(R"({"type":"action","encoding":1})"));
  const auto p = s.flush();
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->filename(), "session-11.demo");
  EXPECT_TRUE(replay_demo(load_demo(*p)).ok());
  std::filesystem::remove_all(dir);
}

TEST(Protocol, KeysAndLegend) {
  const auto legend = action_legend();
  ASSERT_EQ(legend.size(), 15U);
  std::set<std::string> keys;
  for (const auto& e : legend) {
    keys.insert(e["key"].get<std::string>());
    const auto a = action_for_key(e["key"].get<std::string>()[0]);
    ASSERT_TRUE(a);
    EXPECT_EQ(static_cast<int>(*a), e["encoding"].get<int>());
  }
  EXPECT_EQ(keys.size(), 15U);
  EXPECT_EQ(action_key(PrimitiveAction::Forward), 'f');
  EXPECT_FALSE(action_for_key('q').has_value());
}
