#include "gridhouse/demo.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include "gridhouse/json_io.hpp"

namespace gridhouse {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(std::string_view s) {
  if (s.starts_with("0x")) s.remove_prefix(2);
  if (s.empty() || s.size() > 16) throw std::invalid_argument("bad hex digest");
  std::uint64_t v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else throw std::invalid_argument("bad hex digest");
  }
  return v;
}

Json config_to_json(const EnvConfig& c) {
  Json j;
  j["task"] = c.task;
  j["action_mode"] = std::string(to_string(c.action_mode));
  j["obs_mode"] = std::string(to_string(c.obs_mode));
  j["reward_mode"] = std::string(to_string(c.reward_mode));
  j["max_steps"] = c.max_steps;
  j["grid_size"] = c.grid_size ? Json(*c.grid_size) : Json(nullptr);
  j["rooms"] = c.rooms ? Json(*c.rooms) : Json(nullptr);
  j["seed"] = c.seed;
  return j;
}

EnvConfig config_from_json(const Json& j, EnvConfig c) {
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  try {
    if (j.contains("task")) c.task = j["task"].get<std::string>();
    if (j.contains("action_mode")) c.action_mode = parse_action_mode(j["action_mode"].get<std::string>());
    if (j.contains("obs_mode")) c.obs_mode = parse_obs_mode(j["obs_mode"].get<std::string>());
    if (j.contains("reward_mode")) c.reward_mode = parse_reward_mode(j["reward_mode"].get<std::string>());
    if (j.contains("max_steps")) c.max_steps = j["max_steps"].get<int>();
    if (j.contains("grid_size")) c.grid_size = j["grid_size"].is_null() ? std::nullopt : std::optional<int>(j["grid_size"].get<int>());
    if (j.contains("rooms")) c.rooms = j["rooms"].is_null() ? std::nullopt : std::optional<int>(j["rooms"].get<int>());
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return c;
}

std::vector<int> DemoRecord::actions() const {
  std::vector<int> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.action);
  return out;
}

std::uint64_t DemoRecord::actions_digest() const {
  std::string bytes;
  for (const auto& s : steps) {
    const auto a = static_cast<std::uint32_t>(s.action);
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((a >> (8 * i)) & 0xff));
  }
  return fnv1a64(bytes);
}

std::string now_timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string write_demo(const DemoRecord& d) {
  Json h;
  h["format"] = "gridhouse-demo";
  h["format_version"] = d.format_version;
  h["task"] = d.config.task;
  h["config"] = config_to_json(d.config);
  h["seed"] = d.config.seed;
  h["metadata"] = {{"timestamp", d.timestamp}, {"controller", d.controller}};
  h["steps"] = d.steps.size();
  h["terminated"] = d.terminated;
  h["truncated"] = d.truncated;
  h["final_hash"] = hex64(d.final_hash);
  h["actions_digest"] = hex64(d.actions_digest());
  std::string out = h.dump() + "\n";
  for (const auto& s : d.steps) {
    Json line;
    line["a"] = s.action;
    line["r"] = s.reward;
    line["ok"] = s.ok;
    out += line.dump() + "\n";
  }
  return out;
}

DemoRecord parse_demo(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DemoError(DemoErrorKind::Malformed, "empty demo");
  DemoRecord d;
  try {
    const Json h = Json::parse(line);
    if (h.value("format", "") != "gridhouse-demo") throw DemoError(DemoErrorKind::Malformed, "not a gridhouse demo");
    d.format_version = h.at("format_version").get<int>();
    if (d.format_version != kDemoFormatVersion) {
      throw DemoError(DemoErrorKind::VersionMismatch,
                      "demo format version " + std::to_string(d.format_version) + " (expected " + std::to_string(kDemoFormatVersion) + ")");
    }
    d.config = config_from_json(h.at("config"));
    d.timestamp = h.at("metadata").value("timestamp", "");
    d.controller = h.at("metadata").value("controller", "");
    d.final_hash = parse_hex64(h.at("final_hash").get<std::string>());
    d.recorded_digest = parse_hex64(h.at("actions_digest").get<std::string>());
    d.terminated = h.value("terminated", false);
    d.truncated = h.value("truncated", false);
    const auto n = h.at("steps").get<std::size_t>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const Json s = Json::parse(line);
      d.steps.push_back({s.at("a").get<int>(), s.at("r").get<double>(), s.at("ok").get<bool>()});
    }
    if (d.steps.size() != n) throw DemoError(DemoErrorKind::Malformed, "step count does not match the header");
  } catch (const nlohmann::json::exception& e) {
    throw DemoError(DemoErrorKind::Malformed, std::string("demo: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DemoError(DemoErrorKind::Malformed, std::string("demo: ") + e.what());
  }
  return d;
}

DemoRecord load_demo(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DemoError(DemoErrorKind::Malformed, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_demo(ss.str());
}

void save_demo(const DemoRecord& demo, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_demo(demo);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

DemoRecorder::DemoRecorder(const EnvConfig& config, std::string controller)
    : config_(config), controller_(std::move(controller)), timestamp_(now_timestamp()) {}

void DemoRecorder::record(int action, const StepResult& r) { steps_.push_back({action, r.reward, r.info.outcome.succeeded}); }

DemoRecord DemoRecorder::finish(const Environment& env) const {
  DemoRecord d;
  d.config = env.config();
  d.timestamp = timestamp_;
  d.controller = controller_;
  d.steps = steps_;
  d.final_hash = env.state_hash();
  d.terminated = env.terminated();
  d.truncated = env.truncated();
  d.recorded_digest = d.actions_digest();
  return d;
}

std::string_view to_string(ReplayStatus s) {
  switch (s) {
    case ReplayStatus::Match: return "match";
    case ReplayStatus::HashMismatch: return "hash_mismatch";
    case ReplayStatus::RewardMismatch: return "reward_mismatch";
    case ReplayStatus::DigestMismatch: return "digest_mismatch";
    case ReplayStatus::InvalidEncoding: return "invalid_encoding";
    case ReplayStatus::EndMismatch: return "end_mismatch";
  }
  return "?";
}

ReplayResult replay_demo(const DemoRecord& d) {
  ReplayResult res;
  EnvConfig cfg = d.config;
  cfg.atom_deltas = false;
  Environment env(cfg);
  env.reset();
  std::optional<std::size_t> diverged;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    if (s.action < 0 || static_cast<std::size_t>(s.action) >= env.action_space_size() || env.finished()) {
      res.status = ReplayStatus::InvalidEncoding;
      res.step = i;
      res.detail = env.finished() ? "episode ended before the recorded steps did" : "action outside the action space";
      res.replayed_hash = env.state_hash();
      return res;
    }
    const auto r = env.step(s.action);
    if (!diverged && (r.reward != s.reward || r.info.outcome.succeeded != s.ok)) diverged = i;
  }
  res.replayed_hash = env.state_hash();
  // The final hash is the primary check; per-step outcomes and the digest
  // catch edits that happen to end in the same world.
  if (res.replayed_hash != d.final_hash) {
    res.status = ReplayStatus::HashMismatch;
    res.step = diverged.value_or(d.steps.size());
    res.detail = "final state hash " + hex64(res.replayed_hash) + " != recorded " + hex64(d.final_hash);
  } else if (diverged) {
    res.status = ReplayStatus::RewardMismatch;
    res.step = *diverged;
    res.detail = "step outcome differs from the recording";
  } else if (env.terminated() != d.terminated || env.truncated() != d.truncated) {
    res.status = ReplayStatus::EndMismatch;
    res.step = d.steps.size();
    res.detail = "termination flags differ from the recording";
  } else if (d.actions_digest() != d.recorded_digest) {
    res.status = ReplayStatus::DigestMismatch;
    res.step = d.steps.size();
    res.detail = "action sequence digest differs from the header";
  }
  return res;
}

ReplayResult replay_demo_text(std::string_view text) { return replay_demo(parse_demo(text)); }

}  // namespace gridhouse
