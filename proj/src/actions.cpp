#include "gridhouse/actions.hpp"

#include <algorithm>
#include <array>

namespace gridhouse {
namespace {

constexpr std::array<std::string_view, kNumPrimitiveActions> kPrimitiveNames = {
    "forward", "turn_left", "turn_right", "close", "cook", "drop_bottom", "drop_middle", "drop_top",
    "drop_in", "open", "pickup_bottom", "pickup_middle", "pickup_top", "slice", "toggle"};

// A resolved action: what commit() will do. Resolution is pure so validity
// queries and application share one code path.
struct Plan {
  enum class Kind : std::uint8_t { None, Move, Turn, Pickup, Place, PutWithin, SetState };
  Kind kind = Kind::None;
  Heading heading = Heading::North;
  Pos pos;
  ObjectId object = kNoId;
  int z = 0;
  ObjectId container = kNoId;
  EntityRef entity;
  AbsState state = AbsState::Cooked;
  bool value = false;
};

struct Resolution {
  ActionFailure failure = ActionFailure::None;
  Plan plan;
};

Resolution fail(ActionFailure f) { return {f, {}}; }
Resolution ok(Plan p) { return {ActionFailure::None, p}; }

Plan set_state(EntityRef e, AbsState s, bool v) {
  Plan p;
  p.kind = Plan::Kind::SetState;
  p.entity = e;
  p.state = s;
  p.value = v;
  return p;
}

std::optional<Pos> facing_open(const GridWorld& w) {
  auto f = w.facing_cell();
  if (!f || w.cell(*f).wall) return std::nullopt;
  return f;
}

const FurnitureInstance* furniture_at(const GridWorld& w, Pos p) {
  const auto id = w.cell(p).furniture;
  return id == kNoId ? nullptr : &w.furniture(id);
}

std::vector<ObjectId> contents_of(const GridWorld& w, ObjectId container) {
  std::vector<ObjectId> out;
  for (const auto& o : w.objects()) {
    if (o.placement.kind == Placement::Kind::Within && o.placement.container == container) out.push_back(o.id);
  }
  return out;
}

// Objects at a cell from the top slot down, each container followed by its contents.
std::vector<ObjectId> located_top_down(const GridWorld& w, Pos p) {
  std::vector<ObjectId> out;
  for (int z = kLevels - 1; z >= 0; --z) {
    const auto id = w.cell(p).slots[static_cast<std::size_t>(z)];
    if (id == kNoId) continue;
    out.push_back(id);
    for (auto inner : contents_of(w, id)) out.push_back(inner);
  }
  return out;
}

bool closed_interior(const GridWorld& w, Pos p, int z) {
  const auto* f = furniture_at(w, p);
  return f != nullptr && f->container && f->openable && z < f->height && !f->states.has(AbsState::Opened);
}

bool furniture_supports(const GridWorld& w, Pos p, int z) {
  const auto* f = furniture_at(w, p);
  return f != nullptr && z <= f->height;
}

ActionFailure slot_accepts(const GridWorld& w, Pos p, int z) {
  if (w.cell(p).slots[static_cast<std::size_t>(z)] != kNoId) return ActionFailure::Blocked;
  if (w.slot_is_solid(p, z)) return ActionFailure::Blocked;
  if (closed_interior(w, p, z)) return ActionFailure::ContainerClosed;
  const bool supported =
      z == 0 || furniture_supports(w, p, z) || w.cell(p).slots[static_cast<std::size_t>(z - 1)] != kNoId;
  return supported ? ActionFailure::None : ActionFailure::Unsupported;
}

// Lifting the object at slot z must not leave anything floating above it.
bool holds_up_something(const GridWorld& w, Pos p, int z) {
  if (z + 1 >= kLevels) return false;
  return w.cell(p).slots[static_cast<std::size_t>(z + 1)] != kNoId && !furniture_supports(w, p, z + 1);
}

Plan pickup_plan(ObjectId id) {
  Plan p;
  p.kind = Plan::Kind::Pickup;
  p.object = id;
  return p;
}

Resolution pickup_from_slot(const GridWorld& w, Pos p, int z) {
  const auto id = w.cell(p).slots[static_cast<std::size_t>(z)];
  if (id == kNoId) return fail(ActionFailure::NothingThere);
  if (closed_interior(w, p, z)) return fail(ActionFailure::ContainerClosed);
  // A filled container gives up its most recently added item before itself.
  const auto inner = contents_of(w, id);
  if (!inner.empty()) return ok(pickup_plan(*std::max_element(inner.begin(), inner.end())));
  if (holds_up_something(w, p, z)) return fail(ActionFailure::Blocked);
  return ok(pickup_plan(id));
}

Resolution place_plan(ObjectId id, Pos p, int z) {
  Plan plan;
  plan.kind = Plan::Kind::Place;
  plan.object = id;
  plan.pos = p;
  plan.z = z;
  return ok(plan);
}

Resolution drop_in(const GridWorld& w, ObjectId carried, Pos p) {
  if (const auto* f = furniture_at(w, p); f != nullptr && f->container) {
    if (f->openable && !f->states.has(AbsState::Opened)) return fail(ActionFailure::ContainerClosed);
    for (int z = 0; z < f->height; ++z) {
      if (w.cell(p).slots[static_cast<std::size_t>(z)] == kNoId) return place_plan(carried, p, z);
    }
  }
  for (int z = kLevels - 1; z >= 0; --z) {
    const auto id = w.cell(p).slots[static_cast<std::size_t>(z)];
    if (id == kNoId) continue;
    const auto& holder = w.object(id);
    const auto& cat = w.category_of(holder);
    if (!cat.has(kContainer)) continue;
    if (cat.has(kOpenable) && !holder.states.has(AbsState::Opened)) return fail(ActionFailure::ContainerClosed);
    // Containers do not nest.
    if (w.category_of(w.object(carried)).has(kContainer)) return fail(ActionFailure::Incapable);
    Plan plan;
    plan.kind = Plan::Kind::PutWithin;
    plan.object = carried;
    plan.container = id;
    return ok(plan);
  }
  return fail(ActionFailure::NothingThere);
}

bool openable(const GridWorld& w, EntityRef e) {
  if (e.is_object()) return w.category_of(w.object(e.id)).has(kOpenable);
  return w.furniture(e.id).openable;
}

bool toggleable(const GridWorld& w, EntityRef e) {
  if (e.is_object()) return w.category_of(w.object(e.id)).has(kToggleable);
  return w.category_of(w.furniture(e.id)).has(kFurnToggleable);
}

// Entities in the facing cell in interaction order: objects top-down, then furniture.
std::vector<EntityRef> facing_entities(const GridWorld& w, Pos p) {
  std::vector<EntityRef> out;
  for (int z = kLevels - 1; z >= 0; --z) {
    const auto id = w.cell(p).slots[static_cast<std::size_t>(z)];
    if (id != kNoId) out.push_back(EntityRef::object(id));
  }
  if (w.cell(p).furniture != kNoId) out.push_back(EntityRef::furniture(w.cell(p).furniture));
  return out;
}

bool facing_hot_stove(const GridWorld& w) {
  const auto p = facing_open(w);
  if (!p) return false;
  const auto* f = furniture_at(w, *p);
  return f != nullptr && w.category_of(*f).has(kHeatSource) && f->states.has(AbsState::ToggledOn);
}

bool carrying_slicer(const GridWorld& w) {
  const auto& c = w.agent().carrying;
  return std::any_of(c.begin(), c.end(), [&](ObjectId id) { return w.category_of(w.object(id)).has(kSlicer); });
}

bool can_cook(const GridWorld& w, ObjectId id) {
  return w.category_of(w.object(id)).has(kCookable) && !w.object(id).states.has(AbsState::Cooked);
}

bool can_slice(const GridWorld& w, ObjectId id) {
  return w.category_of(w.object(id)).has(kSliceable) && !w.object(id).states.has(AbsState::Sliced);
}

Resolution resolve_primitive(const GridWorld& w, PrimitiveAction a) {
  const auto& agent = w.agent();
  switch (a) {
    case PrimitiveAction::Forward: {
      const auto p = facing_open(w);
      if (!p || w.cell(*p).furniture != kNoId) return fail(ActionFailure::Blocked);
      Plan plan;
      plan.kind = Plan::Kind::Move;
      plan.pos = *p;
      return ok(plan);
    }
    case PrimitiveAction::TurnLeft:
    case PrimitiveAction::TurnRight: {
      Plan plan;
      plan.kind = Plan::Kind::Turn;
      plan.heading = a == PrimitiveAction::TurnLeft ? turn_left(agent.heading) : turn_right(agent.heading);
      return ok(plan);
    }
    case PrimitiveAction::PickupBottom:
    case PrimitiveAction::PickupMiddle:
    case PrimitiveAction::PickupTop: {
      if (!agent.carrying.empty()) return fail(ActionFailure::HandFull);
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::NothingThere);
      return pickup_from_slot(w, *p, static_cast<int>(a) - static_cast<int>(PrimitiveAction::PickupBottom));
    }
    case PrimitiveAction::DropBottom:
    case PrimitiveAction::DropMiddle:
    case PrimitiveAction::DropTop: {
      if (agent.carrying.empty()) return fail(ActionFailure::HandEmpty);
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::Blocked);
      const int z = static_cast<int>(a) - static_cast<int>(PrimitiveAction::DropBottom);
      if (const auto f = slot_accepts(w, *p, z); f != ActionFailure::None) return fail(f);
      return place_plan(agent.carrying.back(), *p, z);
    }
    case PrimitiveAction::DropIn: {
      if (agent.carrying.empty()) return fail(ActionFailure::HandEmpty);
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::NothingThere);
      return drop_in(w, agent.carrying.back(), *p);
    }
    case PrimitiveAction::Open:
    case PrimitiveAction::Close: {
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::NothingThere);
      const bool want = a == PrimitiveAction::Open;
      for (auto e : facing_entities(w, *p)) {
        if (openable(w, e) && entity_states(w, e).has(AbsState::Opened) != want) return ok(set_state(e, AbsState::Opened, want));
      }
      return fail(ActionFailure::NothingThere);
    }
    case PrimitiveAction::Toggle: {
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::NothingThere);
      for (auto e : facing_entities(w, *p)) {
        if (toggleable(w, e)) return ok(set_state(e, AbsState::ToggledOn, !entity_states(w, e).has(AbsState::ToggledOn)));
      }
      return fail(ActionFailure::NothingThere);
    }
    case PrimitiveAction::Cook: {
      if (!facing_hot_stove(w)) return fail(ActionFailure::Incapable);
      for (auto id : agent.carrying) {
        if (can_cook(w, id)) return ok(set_state(EntityRef::object(id), AbsState::Cooked, true));
      }
      for (auto id : located_top_down(w, *w.facing_cell())) {
        if (can_cook(w, id)) return ok(set_state(EntityRef::object(id), AbsState::Cooked, true));
      }
      return fail(ActionFailure::NothingThere);
    }
    case PrimitiveAction::Slice: {
      if (!carrying_slicer(w)) return fail(ActionFailure::Incapable);
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::NothingThere);
      for (auto id : located_top_down(w, *p)) {
        if (can_slice(w, id)) return ok(set_state(EntityRef::object(id), AbsState::Sliced, true));
      }
      return fail(ActionFailure::NothingThere);
    }
  }
  return fail(ActionFailure::NotInSpace);
}

std::optional<EntityRef> lookup(const GridWorld& w, std::string_view name) {
  if (auto o = w.find_object(name)) return EntityRef::object(*o);
  if (auto f = w.find_furniture(name)) return EntityRef::furniture(*f);
  return std::nullopt;
}

Resolution resolve_cartesian(const GridWorld& w, const CartesianSpace& space, std::size_t index) {
  switch (index) {
    case 0: return resolve_primitive(w, PrimitiveAction::Forward);
    case 1: return resolve_primitive(w, PrimitiveAction::TurnLeft);
    case 2: return resolve_primitive(w, PrimitiveAction::TurnRight);
    case 3: return ok(Plan{});
    default: break;
  }
  if (index >= space.dimension()) return fail(ActionFailure::NotInSpace);
  const auto& entry = space.entries[index - kNumCartesianBase];
  const auto target = lookup(w, entry.entity);
  if (!target) return fail(ActionFailure::NotInSpace);
  const auto e = *target;
  const bool carried = e.is_object() && w.object(e.id).placement.kind == Placement::Kind::Carried;

  switch (entry.verb) {
    case CartesianVerb::Pickup: {
      if (!e.is_object()) return fail(ActionFailure::Incapable);
      if (carried || !eval_agent(w, e.id, Predicate::InFOV)) return fail(ActionFailure::NothingThere);
      const auto& pl = w.object(e.id).placement;
      if (pl.kind == Placement::Kind::Grid) {
        const Pos p{pl.x, pl.y};
        if (closed_interior(w, p, pl.z)) return fail(ActionFailure::ContainerClosed);
        if (holds_up_something(w, p, pl.z)) return fail(ActionFailure::Blocked);
      }
      return ok(pickup_plan(e.id));
    }
    case CartesianVerb::Drop: {
      if (!carried) return fail(ActionFailure::HandEmpty);
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::Blocked);
      for (int z = 0; z < kLevels; ++z) {
        if (w.slot_is_interior(*p, z)) continue;
        if (slot_accepts(w, *p, z) == ActionFailure::None) return place_plan(e.id, *p, z);
      }
      return fail(ActionFailure::Blocked);
    }
    case CartesianVerb::DropIn: {
      if (!carried) return fail(ActionFailure::HandEmpty);
      const auto p = facing_open(w);
      if (!p) return fail(ActionFailure::NothingThere);
      return drop_in(w, e.id, *p);
    }
    case CartesianVerb::Open:
    case CartesianVerb::Close: {
      if (!openable(w, e)) return fail(ActionFailure::Incapable);
      if (!entity_in_reach(w, e)) return fail(ActionFailure::NothingThere);
      const bool want = entry.verb == CartesianVerb::Open;
      if (entity_states(w, e).has(AbsState::Opened) == want) return fail(ActionFailure::NothingThere);
      return ok(set_state(e, AbsState::Opened, want));
    }
    case CartesianVerb::Toggle: {
      if (!toggleable(w, e)) return fail(ActionFailure::Incapable);
      if (!entity_in_reach(w, e)) return fail(ActionFailure::NothingThere);
      return ok(set_state(e, AbsState::ToggledOn, !entity_states(w, e).has(AbsState::ToggledOn)));
    }
    case CartesianVerb::Cook: {
      if (!e.is_object() || !facing_hot_stove(w)) return fail(ActionFailure::Incapable);
      if (!entity_in_reach(w, e) || !can_cook(w, e.id)) return fail(ActionFailure::NothingThere);
      return ok(set_state(e, AbsState::Cooked, true));
    }
    case CartesianVerb::Slice: {
      if (!e.is_object() || !carrying_slicer(w)) return fail(ActionFailure::Incapable);
      if (!eval_agent(w, e.id, Predicate::InFOV) || !can_slice(w, e.id)) return fail(ActionFailure::NothingThere);
      return ok(set_state(e, AbsState::Sliced, true));
    }
  }
  return fail(ActionFailure::NotInSpace);
}

ActionOutcome commit(GridWorld& w, const Resolution& r) {
  ActionOutcome out;
  if (r.failure != ActionFailure::None) {
    out.reason = r.failure;
    return out;
  }
  const Plan& p = r.plan;
  switch (p.kind) {
    case Plan::Kind::None: break;
    case Plan::Kind::Move: w.set_agent(p.pos, w.agent().heading); break;
    case Plan::Kind::Turn: w.set_heading(p.heading); break;
    case Plan::Kind::Pickup: w.carry_object(p.object); break;
    case Plan::Kind::Place: w.place_object(p.object, p.pos.x, p.pos.y, p.z); break;
    case Plan::Kind::PutWithin: w.put_within(p.object, p.container); break;
    case Plan::Kind::SetState:
      if (p.entity.is_object()) w.set_object_state(p.entity.id, p.state, p.value);
      else w.set_furniture_state(p.entity.id, p.state, p.value);
      out.state_changes.push_back({p.entity, p.state, p.value, ChangeCause::Action});
      break;
  }
  out.succeeded = true;
  auto changes = apply_transitions(w);
  out.state_changes.insert(out.state_changes.end(), changes.begin(), changes.end());
  return out;
}

}  // namespace

std::string_view to_string(PrimitiveAction a) { return kPrimitiveNames[static_cast<std::size_t>(a)]; }

std::optional<PrimitiveAction> parse_primitive(std::string_view name) {
  for (std::size_t i = 0; i < kPrimitiveNames.size(); ++i) {
    if (kPrimitiveNames[i] == name) return static_cast<PrimitiveAction>(i);
  }
  return std::nullopt;
}

std::string_view to_string(ActionFailure f) {
  switch (f) {
    case ActionFailure::None: return "ok";
    case ActionFailure::Blocked: return "blocked";
    case ActionFailure::HandFull: return "hand_full";
    case ActionFailure::HandEmpty: return "hand_empty";
    case ActionFailure::NothingThere: return "nothing_there";
    case ActionFailure::Incapable: return "incapable";
    case ActionFailure::ContainerClosed: return "container_closed";
    case ActionFailure::Unsupported: return "unsupported";
    case ActionFailure::NotInSpace: return "not_in_space";
  }
  return "?";
}

ActionOutcome apply_primitive(GridWorld& world, PrimitiveAction action) {
  return commit(world, resolve_primitive(world, action));
}

ActionFailure check_primitive(const GridWorld& world, PrimitiveAction action) {
  return resolve_primitive(world, action).failure;
}

std::vector<PrimitiveAction> valid_primitives(const GridWorld& world) {
  std::vector<PrimitiveAction> out;
  for (int i = 0; i < kNumPrimitiveActions; ++i) {
    const auto a = static_cast<PrimitiveAction>(i);
    if (check_primitive(world, a) == ActionFailure::None) out.push_back(a);
  }
  return out;
}

ValidityTable default_validity_table(const Registry& registry) {
  ValidityTable t;
  for (const auto& c : registry.objects()) t[c.name] = c.verbs;
  for (const auto& c : registry.furniture_categories()) t[c.name] = c.verbs;
  return t;
}

std::string CartesianSpace::label(std::size_t index) const {
  static constexpr std::array<std::string_view, kNumCartesianBase> kBase = {"forward", "turn_left", "turn_right", "no_op"};
  if (index < kNumCartesianBase) return std::string(kBase[index]);
  if (index >= dimension()) return "?";
  const auto& e = entries[index - kNumCartesianBase];
  return std::string(to_string(e.verb)) + " " + e.entity;
}

CartesianSpace build_cartesian_space(const std::vector<TaskEntity>& entities, const ValidityTable& table) {
  CartesianSpace space;
  for (const auto& ent : entities) {
    const auto it = table.find(ent.category);
    if (it == table.end()) throw ActionError("unknown category '" + ent.category + "' for " + ent.name);
    auto verbs = it->second;
    std::sort(verbs.begin(), verbs.end());
    verbs.erase(std::unique(verbs.begin(), verbs.end()), verbs.end());
    for (auto v : verbs) space.entries.push_back({v, ent.name});
  }
  return space;
}

ActionOutcome apply_cartesian(GridWorld& world, const CartesianSpace& space, std::size_t index) {
  return commit(world, resolve_cartesian(world, space, index));
}

ActionFailure check_cartesian(const GridWorld& world, const CartesianSpace& space, std::size_t index) {
  return resolve_cartesian(world, space, index).failure;
}

}  // namespace gridhouse
