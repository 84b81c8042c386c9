#pragma once

#include <string>

#include "gridhouse/world.hpp"

namespace gridhouse {

// Top-down text view: '#' wall, '+' door, agent as ^ > v <, furniture as the
// upper-case initial of its category, the topmost object as its lower-case
// initial, '.' for empty floor.
std::string render_ascii(const GridWorld& world);

// Facing-cell closeup: each z-level with object name and true states, then
// furniture, then what the agent carries.
std::string render_closeup(const GridWorld& world);

}  // namespace gridhouse
