#pragma once

#include <cstdint>
#include <string>

#include "gridhouse/env.hpp"

namespace gridhouse {

struct BenchReport {
  std::string task;
  int grid_size = 0;
  ActionMode action_mode = ActionMode::Primitive;
  std::uint64_t steps = 0;  // total over all instances
  double wall_seconds = 0.0;
  double steps_per_second = 0.0;
  int instances = 1;
  int threads = 1;  // threads in the process while stepping
};

// Threads of the current process, from /proc/self/task; 0 if unavailable.
int process_thread_count();

// Random valid actions through Environment::step (observation, reward and
// transitions included), resetting whenever an episode ends. With one
// instance the caller's thread does all the work and no thread may be
// spawned; with N, each of N threads owns its own environment and runs
// `steps` steps.
BenchReport run_bench(const EnvConfig& config, std::uint64_t steps, int instances = 1);

}  // namespace gridhouse
