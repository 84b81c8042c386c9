#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridhouse/state.hpp"
#include "gridhouse/world.hpp"

namespace gridhouse {

// Integer encodings are the enum order and are part of the demo and wire formats.
enum class PrimitiveAction : std::uint8_t {
  Forward,
  TurnLeft,
  TurnRight,
  Close,
  Cook,
  DropBottom,
  DropMiddle,
  DropTop,
  DropIn,
  Open,
  PickupBottom,
  PickupMiddle,
  PickupTop,
  Slice,
  Toggle,
};
inline constexpr int kNumPrimitiveActions = 15;

std::string_view to_string(PrimitiveAction a);
std::optional<PrimitiveAction> parse_primitive(std::string_view name);

enum class ActionFailure : std::uint8_t {
  None,
  Blocked,
  HandFull,
  HandEmpty,
  NothingThere,
  Incapable,
  ContainerClosed,
  Unsupported,
  NotInSpace,
};

std::string_view to_string(ActionFailure f);

struct ActionOutcome {
  bool succeeded = false;
  ActionFailure reason = ActionFailure::None;
  std::vector<StateChange> state_changes;  // action effects, then transition effects
};

// Applies the action and, on success, the end-of-step transitions. A failed
// action leaves the world untouched.
ActionOutcome apply_primitive(GridWorld& world, PrimitiveAction action);

// Failure reason the action would produce, None if it would succeed. Pure.
ActionFailure check_primitive(const GridWorld& world, PrimitiveAction action);

// Exactly the actions for which apply_primitive would succeed, in enum order.
std::vector<PrimitiveAction> valid_primitives(const GridWorld& world);

// --- Cartesian space -------------------------------------------------------

inline constexpr int kNumCartesianBase = 4;  // forward, turn_left, turn_right, no_op

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaskEntity {
  std::string name;
  std::string category;
};

// category name -> verbs valid for that category
using ValidityTable = std::map<std::string, std::vector<CartesianVerb>, std::less<>>;

ValidityTable default_validity_table(const Registry& registry);

struct CartesianEntry {
  CartesianVerb verb = CartesianVerb::Pickup;
  std::string entity;
};

struct CartesianSpace {
  std::vector<CartesianEntry> entries;  // entities in declaration order, verbs in enum order

  std::size_t dimension() const { return kNumCartesianBase + entries.size(); }
  std::string label(std::size_t index) const;
};

// Throws ActionError for categories absent from the table.
CartesianSpace build_cartesian_space(const std::vector<TaskEntity>& entities, const ValidityTable& table);

ActionOutcome apply_cartesian(GridWorld& world, const CartesianSpace& space, std::size_t index);
ActionFailure check_cartesian(const GridWorld& world, const CartesianSpace& space, std::size_t index);

}  // namespace gridhouse
