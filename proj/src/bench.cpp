#include "gridhouse/bench.hpp"

#include <chrono>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include "gridhouse/agents.hpp"

namespace gridhouse {
namespace {

void drive(const EnvConfig& config, std::uint64_t steps, std::uint64_t agent_seed) {
  Environment env(config);
  env.reset();
  RandomAgent agent(agent_seed, true);
  std::uint64_t episode = 0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    if (env.finished()) env.reset(config.seed + ++episode);
    env.step(agent.act(env));
  }
}

}  // namespace

int process_thread_count() {
  std::error_code ec;
  int n = 0;
  for (auto it = std::filesystem::directory_iterator("/proc/self/task", ec); !ec && it != std::filesystem::directory_iterator(); it.increment(ec)) ++n;
  return n;
}

BenchReport run_bench(const EnvConfig& config, std::uint64_t steps, int instances) {
  if (instances < 1) throw std::invalid_argument("instances must be >= 1");
  BenchReport r;
  r.task = config.task;
  r.action_mode = config.action_mode;
  r.instances = instances;
  {
    Environment probe(config);
    probe.reset();
    r.grid_size = probe.world().width();
  }
  const auto t0 = std::chrono::steady_clock::now();
  if (instances == 1) {
    const int before = process_thread_count();
    drive(config, steps, config.seed ^ 0x5eedULL);
    r.threads = process_thread_count();
    if (r.threads != before) throw std::logic_error("single-instance bench spawned a thread");
    r.steps = steps;
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < instances; ++i) {
      EnvConfig c = config;
      c.seed = config.seed + static_cast<std::uint64_t>(i) * 1'000'003ULL;
      pool.emplace_back([c, steps, i] { drive(c, steps, c.seed ^ static_cast<std::uint64_t>(i)); });
    }
    r.threads = process_thread_count();
    for (auto& t : pool) t.join();
    r.steps = steps * static_cast<std::uint64_t>(instances);
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.steps_per_second = r.wall_seconds > 0 ? static_cast<double>(r.steps) / r.wall_seconds : 0.0;
  return r;
}

}  // namespace gridhouse
