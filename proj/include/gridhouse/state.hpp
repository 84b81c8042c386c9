#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridhouse/world.hpp"

namespace gridhouse {

enum class Predicate : std::uint8_t {
  // agent-related
  InFOV,
  InHand,
  InReach,
  InSameRoom,
  // absolute
  Cooked,
  Dusty,
  Frozen,
  Opened,
  Sliced,
  Soaked,
  Stained,
  ToggledOn,
  OnFloor,
  // relative
  AtSameLocation,
  Inside,
  NextTo,
  OnTop,
  Under,
};
inline constexpr int kNumPredicates = 18;

enum class PredicateKind : std::uint8_t { Agent, Absolute, Relative };

PredicateKind kind_of(Predicate p);
int arity(Predicate p);
std::string_view to_string(Predicate p);
std::optional<Predicate> parse_predicate(std::string_view name);
// The absolute state backing a predicate, absent for OnFloor and non-absolute kinds.
std::optional<AbsState> as_state(Predicate p);

struct EntityRef {
  enum class Kind : std::uint8_t { Object, Furniture };
  Kind kind = Kind::Object;
  std::int32_t id = kNoId;

  static EntityRef object(ObjectId id) { return {Kind::Object, id}; }
  static EntityRef furniture(FurnitureId id) { return {Kind::Furniture, id}; }
  bool is_object() const { return kind == Kind::Object; }

  friend constexpr bool operator==(const EntityRef&, const EntityRef&) = default;
  friend constexpr auto operator<=>(const EntityRef&, const EntityRef&) = default;
};

std::string_view entity_name(const GridWorld& world, EntityRef e);
StateSet entity_states(const GridWorld& world, EntityRef e);
StateSet entity_capable(const GridWorld& world, EntityRef e);
std::string_view entity_category(const GridWorld& world, EntityRef e);

struct AbsoluteEval {
  bool value = false;
  bool incapable = false;  // the category cannot hold the queried state
};

AbsoluteEval eval_absolute(const GridWorld& world, EntityRef entity, Predicate pred);
bool eval_agent(const GridWorld& world, ObjectId object, Predicate pred);
bool eval_relative(const GridWorld& world, EntityRef a, EntityRef b, Predicate pred);

// Dispatches on the predicate kind; agent predicates over furniture are false.
bool eval_atom(const GridWorld& world, Predicate pred, EntityRef a, std::optional<EntityRef> b = std::nullopt);

struct GroundAtom {
  Predicate pred = Predicate::InFOV;
  EntityRef a;
  std::optional<EntityRef> b;

  friend constexpr bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend constexpr auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

// `Pred(arg1[, arg2])`
std::string render_atom(const GridWorld& world, const GroundAtom& atom);

// Every true ground atom, computed by scanning cells rather than through the
// per-atom evaluators, so the two routes check each other. Sorted, unique.
std::vector<GroundAtom> all_true_predicates(const GridWorld& world);

enum class ChangeCause : std::uint8_t { Action, Soak, Freeze, CleanDust, CleanStain, Sweep };
std::string_view to_string(ChangeCause c);

struct StateChange {
  EntityRef entity;
  AbsState state = AbsState::Cooked;
  bool value = false;
  ChangeCause cause = ChangeCause::Action;

  friend constexpr bool operator==(const StateChange&, const StateChange&) = default;
};

// End-of-step rules, applied in order: soak, freeze, clean dust, clean stain, sweep.
std::vector<StateChange> apply_transitions(GridWorld& world);

// True when the entity is within the agent's reach: objects via InReach,
// furniture when the facing cell lies in its footprint.
bool entity_in_reach(const GridWorld& world, EntityRef e);

}  // namespace gridhouse
