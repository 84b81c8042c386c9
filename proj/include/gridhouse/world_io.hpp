#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gridhouse/world.hpp"

namespace gridhouse {

inline constexpr int kWorldFormatVersion = 1;

class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Versioned JSON document holding everything needed to rebuild the world:
// dims, walls, rooms, doors, furniture, objects, agent pose, step count, RNG state.
std::string save_world(const GridWorld& world);
GridWorld load_world(std::string_view text, const Registry& registry = Registry::builtin());

}  // namespace gridhouse
