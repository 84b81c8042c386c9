#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridhouse/env.hpp"

namespace gridhouse {

inline constexpr int kDemoFormatVersion = 1;

enum class DemoErrorKind : std::uint8_t { Malformed, VersionMismatch };

class DemoError : public std::runtime_error {
 public:
  DemoError(DemoErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  DemoErrorKind kind() const { return kind_; }

 private:
  DemoErrorKind kind_;
};

struct DemoStep {
  int action = 0;
  double reward = 0.0;
  bool ok = false;  // action succeeded
  friend bool operator==(const DemoStep&, const DemoStep&) = default;
};

struct DemoRecord {
  int format_version = kDemoFormatVersion;
  EnvConfig config;
  std::string timestamp;   // ISO-8601 UTC
  std::string controller;  // human | scripted | random | bfs
  std::vector<DemoStep> steps;
  std::uint64_t final_hash = 0;
  bool terminated = false;
  bool truncated = false;
  std::uint64_t recorded_digest = 0;  // actions_digest as stored in the file

  std::vector<int> actions() const;
  // FNV-1a over the action encodings; a second line of defence against edits
  // that happen to leave the final world unchanged.
  std::uint64_t actions_digest() const;
};

std::string now_timestamp();

// One JSON header line followed by one JSON line per step.
std::string write_demo(const DemoRecord& demo);
DemoRecord parse_demo(std::string_view text);
DemoRecord load_demo(const std::filesystem::path& path);
void save_demo(const DemoRecord& demo, const std::filesystem::path& path);

// Buffers steps as an episode runs.
class DemoRecorder {
 public:
  DemoRecorder(const EnvConfig& config, std::string controller);
  void record(int action, const StepResult& result);
  DemoRecord finish(const Environment& env) const;
  std::size_t size() const { return steps_.size(); }

 private:
  EnvConfig config_;
  std::string controller_;
  std::string timestamp_;
  std::vector<DemoStep> steps_;
};

enum class ReplayStatus : std::uint8_t { Match, HashMismatch, RewardMismatch, DigestMismatch, InvalidEncoding, EndMismatch };
std::string_view to_string(ReplayStatus s);

struct ReplayResult {
  ReplayStatus status = ReplayStatus::Match;
  std::size_t step = 0;  // first diverging step, when applicable
  std::uint64_t replayed_hash = 0;
  std::string detail;

  bool ok() const { return status == ReplayStatus::Match; }
};

// Re-runs the configuration and actions and compares outcomes.
ReplayResult replay_demo(const DemoRecord& demo);
ReplayResult replay_demo_text(std::string_view text);

}  // namespace gridhouse
