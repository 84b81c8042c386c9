#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridhouse/actions.hpp"
#include "gridhouse/procgen.hpp"
#include "gridhouse/task.hpp"

namespace gridhouse {

enum class ActionMode : std::uint8_t { Primitive, Cartesian };
enum class ObsMode : std::uint8_t { Partial, Full };

std::string_view to_string(ActionMode m);
std::string_view to_string(ObsMode m);
std::string_view to_string(RewardMode m);
ActionMode parse_action_mode(std::string_view s);
ObsMode parse_obs_mode(std::string_view s);
RewardMode parse_reward_mode(std::string_view s);

struct EnvConfig {
  std::string task = "installing_printer";
  ActionMode action_mode = ActionMode::Primitive;
  ObsMode obs_mode = ObsMode::Partial;
  RewardMode reward_mode = RewardMode::Sparse;
  int max_steps = 1000;
  std::optional<int> grid_size;
  std::optional<int> rooms;
  std::uint64_t seed = 0;
  bool atom_deltas = true;  // fill StepInfo::atoms_added / atoms_removed

  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

inline constexpr int kObsChannels = 31;
inline constexpr int kPartialView = 7;
inline constexpr int kFurnitureChannel = 27;

// Row-major [row][col][channel]. Full mode rows are y and columns x; partial
// mode row 0 is farthest ahead, row 6 holds the agent at column 3.
struct Observation {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int r, int c, int ch) const {
    return data[(static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)) * kObsChannels +
                static_cast<std::size_t>(ch)];
  }
  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation encode_observation(const GridWorld& world, ObsMode mode);
void encode_observation_into(const GridWorld& world, ObsMode mode, Observation& out);

// "GHOB" magic, then rows, cols, channels as little-endian u32, then the bytes.
std::string dump_observation(const Observation& obs);
Observation load_observation_dump(std::string_view bytes);

class EpisodeFinished : public std::logic_error {
 public:
  EpisodeFinished() : std::logic_error("episode finished; call reset") {}
};

class InvalidAction : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct StepInfo {
  ActionOutcome outcome;
  GoalProgress progress;
  std::vector<GroundAtom> atoms_added;
  std::vector<GroundAtom> atoms_removed;
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  StepInfo info;
};

class Environment {
 public:
  explicit Environment(EnvConfig config, const Registry& registry = Registry::builtin());
  Environment(EnvConfig config, TaskDefinition task, const Registry& registry = Registry::builtin());

  Observation reset();
  Observation reset(std::uint64_t seed);
  StepResult step(int action);

  std::size_t action_space_size() const;
  std::string action_label(int action) const;
  std::vector<int> valid_actions() const;
  std::vector<int> observation_shape() const;

  const EnvConfig& config() const { return config_; }
  const TaskDefinition& task() const { return task_; }
  const GridWorld& world() const { return *world_; }
  const CartesianSpace& cartesian_space() const { return cartesian_; }
  const GoalProgress& progress() const { return progress_; }
  bool has_episode() const { return world_.has_value(); }
  bool finished() const { return terminated_ || truncated_; }
  bool terminated() const { return terminated_; }
  bool truncated() const { return truncated_; }
  double episode_reward() const { return episode_reward_; }
  std::uint64_t state_hash() const { return world_->state_hash(); }
  const ActionOutcome& last_outcome() const { return last_outcome_; }

 private:
  EnvConfig config_;
  TaskDefinition task_;
  const Registry* registry_;
  CartesianSpace cartesian_;
  std::optional<GridWorld> world_;
  GoalProgress progress_;
  bool terminated_ = false;
  bool truncated_ = false;
  double episode_reward_ = 0.0;
  ActionOutcome last_outcome_;
};

}  // namespace gridhouse
