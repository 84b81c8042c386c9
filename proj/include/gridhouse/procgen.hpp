#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gridhouse/task.hpp"
#include "gridhouse/world.hpp"

namespace gridhouse {

enum class ProcGenErrorKind : std::uint8_t { InvalidConfig, Unsplittable, PlacementExhausted, LayoutError };

class ProcGenError : public std::runtime_error {
 public:
  ProcGenError(ProcGenErrorKind kind, const std::string& message);
  ProcGenErrorKind kind() const { return kind_; }

 private:
  ProcGenErrorKind kind_;
};

inline constexpr int kPlacementAttempts = 100;  // per item
inline constexpr int kFloorPlanRestarts = 20;

struct ProcGenConfig {
  int width = 10;
  int height = 10;
  int num_rooms = 1;
  std::vector<std::string> room_labels;  // missing labels become room_<i>
  std::uint64_t seed = 0;
};

// Per-stream generators. Each restart gets fresh streams so a rejected attempt
// does not shift the randomness of the next.
struct ProcGenStreams {
  Rng floorplan;
  Rng furniture;
  Rng objects;

  static ProcGenStreams make(std::uint64_t seed, int attempt);
};

// Perimeter walls, then repeated splits of a uniformly chosen splittable room by
// a wall holding a single door, until num_rooms rooms exist.
GridWorld generate_floor_plan(const ProcGenConfig& config, Rng& rng, const Registry& registry = Registry::builtin());

// Uniform in [1, max(2, floor(w*h/12))) over the room's interior dimensions.
int sample_furniture_count(const Room& room, Rng& rng);
// Uniform in [1, fw*fd); clamps to 1 when that range is empty.
int sample_object_count(const FurnitureInstance& furniture, Rng& rng);

// All non-wall, furniture-free cells form one 4-connected component.
bool reachability_check(const GridWorld& world);

// Every furniture piece and every placed object can be faced from a free cell.
bool interactable_check(const GridWorld& world);

// Hand-authored layout: '#' wall, '+' door, letters for room cells, declared by
// a `rooms: a=kitchen b=office` line. Rooms must be rectangles.
GridWorld parse_layout(std::string_view text, const Registry& registry = Registry::builtin());
GridWorld load_layout(const std::string& name, const Registry& registry = Registry::builtin());

// Random furniture per room and random objects per furniture, following the
// count formulas. Retries with a new floor plan when placement or reachability fails.
GridWorld generate_random_world(const ProcGenConfig& config, const Registry& registry = Registry::builtin());

struct TaskOverrides {
  std::optional<int> grid_size;
  std::optional<int> rooms;
};

ProcGenConfig task_procgen_config(const TaskDefinition& task, std::uint64_t seed, const TaskOverrides& overrides = {});

// Builds a world satisfying the task's :init, with the goal not yet met.
GridWorld instantiate_task(const TaskDefinition& task, std::uint64_t seed, const TaskOverrides& overrides = {},
                           const Registry& registry = Registry::builtin());

// Init literals that do not hold in the world, rendered; empty when all hold.
std::vector<std::string> failing_init_literals(const GridWorld& world, const TaskDefinition& task);

// Picks a uniform free cell and heading for the agent.
void spawn_agent(GridWorld& world, Rng& rng);

}  // namespace gridhouse
