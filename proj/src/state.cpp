#include "gridhouse/state.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <set>

namespace gridhouse {
namespace {

constexpr std::array<std::string_view, kNumPredicates> kPredicateNames = {
    "InFOV",  "InHand", "InReach", "InSameRoom", "Cooked",         "Dusty",  "Frozen", "Opened", "Sliced",
    "Soaked", "Stained", "ToggledOn", "OnFloor", "AtSameLocation", "Inside", "NextTo", "OnTop",  "Under"};

bool is_floor(const GridWorld& w, EntityRef e) { return !e.is_object() && w.furniture(e.id).is_floor; }

// Room of the cell an object effectively occupies; carried objects travel with the agent.
int object_room(const GridWorld& w, ObjectId id) {
  if (auto c = w.object_cell(id)) return w.cell(*c).room;
  const ObjectInstance* o = &w.object(id);
  if (o->placement.kind == Placement::Kind::Within) o = &w.object(o->placement.container);
  if (o->placement.kind == Placement::Kind::Carried) return w.cell(w.agent().pos).room;
  return kNoId;
}

bool adjacent(Pos a, Pos b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y) == 1; }

bool rect_adjacent(const Rect& r, Pos p) {
  if (r.contains(p)) return false;
  const int dx = p.x < r.x0 ? r.x0 - p.x : (p.x > r.x1 ? p.x - r.x1 : 0);
  const int dy = p.y < r.y0 ? r.y0 - p.y : (p.y > r.y1 ? p.y - r.y1 : 0);
  return dx + dy == 1;
}

bool rects_adjacent(const Rect& a, const Rect& b) {
  const bool x_overlap = a.x0 <= b.x1 && b.x0 <= a.x1;
  const bool y_overlap = a.y0 <= b.y1 && b.y0 <= a.y1;
  if (x_overlap && y_overlap) return false;
  if (x_overlap) return a.y1 + 1 == b.y0 || b.y1 + 1 == a.y0;
  if (y_overlap) return a.x1 + 1 == b.x0 || b.x1 + 1 == a.x0;
  return false;
}

bool on_top(const GridWorld& w, EntityRef a, EntityRef b) {
  if (!a.is_object() || a == b) return false;
  const auto& pa = w.object(a.id).placement;
  if (pa.kind != Placement::Kind::Grid) return false;
  if (b.is_object()) {
    const auto& pb = w.object(b.id).placement;
    return pb.kind == Placement::Kind::Grid && pa.x == pb.x && pa.y == pb.y && pa.z == pb.z + 1;
  }
  const auto& f = w.furniture(b.id);
  if (f.is_floor) {
    const Cell& c = w.cell(pa.x, pa.y);
    return pa.z == 0 && c.furniture == kNoId && c.room == f.room;
  }
  const auto surface = surface_level(f);
  return surface && pa.z == *surface && f.footprint().contains({pa.x, pa.y});
}

bool same_location(const GridWorld& w, EntityRef a, EntityRef b) {
  if (a == b || is_floor(w, a) || is_floor(w, b)) return false;
  if (!a.is_object() && !b.is_object()) return false;
  if (!a.is_object()) std::swap(a, b);
  const auto ca = w.object_cell(a.id);
  if (!ca) return false;
  if (b.is_object()) {
    const auto cb = w.object_cell(b.id);
    return cb && *ca == *cb;
  }
  return w.furniture(b.id).footprint().contains(*ca);
}

bool next_to(const GridWorld& w, EntityRef a, EntityRef b) {
  if (a == b || is_floor(w, a) || is_floor(w, b)) return false;
  if (!a.is_object() && !b.is_object()) return rects_adjacent(w.furniture(a.id).footprint(), w.furniture(b.id).footprint());
  if (!a.is_object()) std::swap(a, b);
  const auto ca = w.object_cell(a.id);
  if (!ca) return false;
  if (b.is_object()) {
    const auto cb = w.object_cell(b.id);
    return cb && adjacent(*ca, *cb);
  }
  return rect_adjacent(w.furniture(b.id).footprint(), *ca);
}

bool inside(const GridWorld& w, EntityRef a, EntityRef b) {
  if (!a.is_object() || a == b) return false;
  const auto& pa = w.object(a.id).placement;
  if (b.is_object()) return pa.kind == Placement::Kind::Within && pa.container == b.id;
  const auto& f = w.furniture(b.id);
  if (f.is_floor || !f.container || pa.kind != Placement::Kind::Grid) return false;
  return pa.z < f.height && f.footprint().contains({pa.x, pa.y});
}

bool in_fov(const GridWorld& w, ObjectId id) {
  const auto facing = w.facing_cell();
  const auto c = w.object_cell(id);
  return facing && c && *facing == *c;
}

}  // namespace

PredicateKind kind_of(Predicate p) {
  const int i = static_cast<int>(p);
  if (i <= static_cast<int>(Predicate::InSameRoom)) return PredicateKind::Agent;
  if (i <= static_cast<int>(Predicate::OnFloor)) return PredicateKind::Absolute;
  return PredicateKind::Relative;
}

int arity(Predicate p) { return kind_of(p) == PredicateKind::Relative ? 2 : 1; }

std::string_view to_string(Predicate p) { return kPredicateNames[static_cast<std::size_t>(p)]; }

std::optional<Predicate> parse_predicate(std::string_view name) {
  for (std::size_t i = 0; i < kPredicateNames.size(); ++i) {
    if (kPredicateNames[i] == name) return static_cast<Predicate>(i);
  }
  return std::nullopt;
}

std::optional<AbsState> as_state(Predicate p) {
  const int i = static_cast<int>(p);
  if (i >= static_cast<int>(Predicate::Cooked) && i <= static_cast<int>(Predicate::ToggledOn)) {
    return static_cast<AbsState>(i - static_cast<int>(Predicate::Cooked));
  }
  return std::nullopt;
}

std::string_view entity_name(const GridWorld& w, EntityRef e) {
  return e.is_object() ? std::string_view(w.object(e.id).name) : std::string_view(w.furniture(e.id).name);
}

StateSet entity_states(const GridWorld& w, EntityRef e) {
  return e.is_object() ? w.object(e.id).states : w.furniture(e.id).states;
}

StateSet entity_capable(const GridWorld& w, EntityRef e) {
  return e.is_object() ? w.category_of(w.object(e.id)).capable : w.category_of(w.furniture(e.id)).capable;
}

std::string_view entity_category(const GridWorld& w, EntityRef e) {
  return e.is_object() ? std::string_view(w.category_of(w.object(e.id)).name)
                       : std::string_view(w.category_of(w.furniture(e.id)).name);
}

AbsoluteEval eval_absolute(const GridWorld& w, EntityRef e, Predicate pred) {
  if (pred == Predicate::OnFloor) {
    if (!e.is_object()) return {false, true};
    const auto& p = w.object(e.id).placement;
    return {p.kind == Placement::Kind::Grid && p.z == 0 && w.cell(p.x, p.y).furniture == kNoId, false};
  }
  const auto state = as_state(pred);
  if (!state) return {false, false};
  if (!entity_capable(w, e).has(*state)) return {false, true};
  return {entity_states(w, e).has(*state), false};
}

bool eval_agent(const GridWorld& w, ObjectId id, Predicate pred) {
  switch (pred) {
    case Predicate::InFOV: return in_fov(w, id);
    case Predicate::InHand: return w.object(id).placement.kind == Placement::Kind::Carried;
    case Predicate::InReach:
      return w.object(id).placement.kind == Placement::Kind::Carried || in_fov(w, id);
    case Predicate::InSameRoom: {
      const int room = object_room(w, id);
      return room != kNoId && room == w.cell(w.agent().pos).room;
    }
    default: return false;
  }
}

bool eval_relative(const GridWorld& w, EntityRef a, EntityRef b, Predicate pred) {
  switch (pred) {
    case Predicate::AtSameLocation: return same_location(w, a, b);
    case Predicate::Inside: return inside(w, a, b);
    case Predicate::NextTo: return next_to(w, a, b);
    case Predicate::OnTop: return on_top(w, a, b);
    case Predicate::Under: return on_top(w, b, a);
    default: return false;
  }
}

bool eval_atom(const GridWorld& w, Predicate pred, EntityRef a, std::optional<EntityRef> b) {
  switch (kind_of(pred)) {
    case PredicateKind::Agent: return a.is_object() && eval_agent(w, a.id, pred);
    case PredicateKind::Absolute: return eval_absolute(w, a, pred).value;
    case PredicateKind::Relative: return b && eval_relative(w, a, *b, pred);
  }
  return false;
}

std::string render_atom(const GridWorld& w, const GroundAtom& atom) {
  std::string out(to_string(atom.pred));
  out += '(';
  out += entity_name(w, atom.a);
  if (atom.b) {
    out += ", ";
    out += entity_name(w, *atom.b);
  }
  out += ')';
  return out;
}

std::vector<GroundAtom> all_true_predicates(const GridWorld& w) {
  std::set<GroundAtom> atoms;
  auto add1 = [&](Predicate p, EntityRef a) { atoms.insert({p, a, std::nullopt}); };
  auto add2 = [&](Predicate p, EntityRef a, EntityRef b) { atoms.insert({p, a, b}); };

  // Contents of container objects, by container.
  std::vector<std::vector<ObjectId>> contents(w.objects().size());
  for (const auto& o : w.objects()) {
    if (o.placement.kind == Placement::Kind::Within) contents[static_cast<std::size_t>(o.placement.container)].push_back(o.id);
  }

  // Objects located at each cell: slot holders plus their contents.
  const auto located_at = [&](int x, int y) {
    std::vector<ObjectId> out;
    for (auto s : w.cell(x, y).slots) {
      if (s == kNoId) continue;
      out.push_back(s);
      for (auto inner : contents[static_cast<std::size_t>(s)]) out.push_back(inner);
    }
    return out;
  };

  // Agent-related.
  const int agent_room = w.cell(w.agent().pos).room;
  for (auto id : w.agent().carrying) {
    add1(Predicate::InHand, EntityRef::object(id));
    add1(Predicate::InReach, EntityRef::object(id));
    for (auto inner : contents[static_cast<std::size_t>(id)]) add2(Predicate::Inside, EntityRef::object(inner), EntityRef::object(id));
    if (agent_room != kNoId) {
      add1(Predicate::InSameRoom, EntityRef::object(id));
      for (auto inner : contents[static_cast<std::size_t>(id)]) add1(Predicate::InSameRoom, EntityRef::object(inner));
    }
  }
  if (auto facing = w.facing_cell()) {
    for (auto id : located_at(facing->x, facing->y)) {
      add1(Predicate::InFOV, EntityRef::object(id));
      add1(Predicate::InReach, EntityRef::object(id));
    }
  }

  // Absolute states.
  for (const auto& o : w.objects()) {
    for (int s = 0; s < kNumAbsStates; ++s) {
      if (o.states.has(static_cast<AbsState>(s))) add1(static_cast<Predicate>(static_cast<int>(Predicate::Cooked) + s), EntityRef::object(o.id));
    }
  }
  for (const auto& f : w.furniture()) {
    for (int s = 0; s < kNumAbsStates; ++s) {
      if (f.states.has(static_cast<AbsState>(s))) add1(static_cast<Predicate>(static_cast<int>(Predicate::Cooked) + s), EntityRef::furniture(f.id));
    }
  }

  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      const Cell& c = w.cell(x, y);
      if (c.wall) continue;
      const auto here = located_at(x, y);
      if (agent_room != kNoId && c.room == agent_room) {
        for (auto id : here) add1(Predicate::InSameRoom, EntityRef::object(id));
      }
      // Vertical relations within the cell.
      if (c.furniture == kNoId) {
        if (c.slots[0] != kNoId) {
          add1(Predicate::OnFloor, EntityRef::object(c.slots[0]));
          if (c.room != kNoId) {
            const EntityRef floor = EntityRef::furniture(w.rooms()[static_cast<std::size_t>(c.room)].floor);
            add2(Predicate::OnTop, EntityRef::object(c.slots[0]), floor);
            add2(Predicate::Under, floor, EntityRef::object(c.slots[0]));
          }
        }
      } else {
        const auto& f = w.furniture(c.furniture);
        const EntityRef fr = EntityRef::furniture(f.id);
        if (const auto s = surface_level(f); s && c.slots[static_cast<std::size_t>(*s)] != kNoId) {
          add2(Predicate::OnTop, EntityRef::object(c.slots[static_cast<std::size_t>(*s)]), fr);
          add2(Predicate::Under, fr, EntityRef::object(c.slots[static_cast<std::size_t>(*s)]));
        }
        if (f.container) {
          for (int z = 0; z < f.height; ++z) {
            if (c.slots[static_cast<std::size_t>(z)] != kNoId) add2(Predicate::Inside, EntityRef::object(c.slots[static_cast<std::size_t>(z)]), fr);
          }
        }
        for (auto id : here) {
          add2(Predicate::AtSameLocation, EntityRef::object(id), fr);
          add2(Predicate::AtSameLocation, fr, EntityRef::object(id));
        }
      }
      for (int z = 1; z < kLevels; ++z) {
        const auto upper = c.slots[static_cast<std::size_t>(z)];
        const auto lower = c.slots[static_cast<std::size_t>(z - 1)];
        if (upper != kNoId && lower != kNoId) {
          add2(Predicate::OnTop, EntityRef::object(upper), EntityRef::object(lower));
          add2(Predicate::Under, EntityRef::object(lower), EntityRef::object(upper));
        }
      }
      for (auto a : here) {
        for (auto b : here) {
          if (a != b) add2(Predicate::AtSameLocation, EntityRef::object(a), EntityRef::object(b));
        }
        for (auto inner : contents[static_cast<std::size_t>(a)]) add2(Predicate::Inside, EntityRef::object(inner), EntityRef::object(a));
      }

      // Horizontal adjacency with the east and south neighbours.
      for (const Pos n : {Pos{x + 1, y}, Pos{x, y + 1}}) {
        if (!w.in_bounds(n) || w.cell(n).wall) continue;
        const Cell& nc = w.cell(n);
        const auto there = located_at(n.x, n.y);
        std::vector<EntityRef> left;
        std::vector<EntityRef> right;
        for (auto id : here) left.push_back(EntityRef::object(id));
        for (auto id : there) right.push_back(EntityRef::object(id));
        if (c.furniture != kNoId) left.push_back(EntityRef::furniture(c.furniture));
        if (nc.furniture != kNoId) right.push_back(EntityRef::furniture(nc.furniture));
        for (auto a : left) {
          for (auto b : right) {
            if (a == b) continue;
            // An object resting in a furniture footprint is at that furniture, not next to it.
            if (a.is_object() && !b.is_object() && c.furniture == b.id) continue;
            if (b.is_object() && !a.is_object() && nc.furniture == a.id) continue;
            add2(Predicate::NextTo, a, b);
            add2(Predicate::NextTo, b, a);
          }
        }
      }
    }
  }
  return {atoms.begin(), atoms.end()};
}

std::string_view to_string(ChangeCause c) {
  switch (c) {
    case ChangeCause::Action: return "action";
    case ChangeCause::Soak: return "soak";
    case ChangeCause::Freeze: return "freeze";
    case ChangeCause::CleanDust: return "clean_dust";
    case ChangeCause::CleanStain: return "clean_stain";
    case ChangeCause::Sweep: return "sweep";
  }
  return "?";
}

bool entity_in_reach(const GridWorld& w, EntityRef e) {
  if (e.is_object()) return eval_agent(w, e.id, Predicate::InReach);
  const auto facing = w.facing_cell();
  if (!facing) return false;
  const auto& f = w.furniture(e.id);
  if (f.is_floor) return !w.cell(*facing).wall && w.cell(*facing).room == f.room;
  return f.footprint().contains(*facing);
}

std::vector<StateChange> apply_transitions(GridWorld& w) {
  std::vector<StateChange> changes;

  // Furniture holding an object in its interior, if any.
  const auto holder_of = [&](const ObjectInstance& o) -> const FurnitureInstance* {
    if (o.placement.kind != Placement::Kind::Grid) return nullptr;
    const Cell& c = w.cell(o.placement.x, o.placement.y);
    if (c.furniture == kNoId) return nullptr;
    const auto& f = w.furniture(c.furniture);
    return f.container && o.placement.z < f.height ? &f : nullptr;
  };

  // T1 soak, T2 freeze.
  for (const auto& o : w.objects()) {
    const auto* f = holder_of(o);
    if (f == nullptr || !f->states.has(AbsState::ToggledOn)) continue;
    const auto& fcat = w.category_of(*f);
    const auto& ocat = w.category_of(o);
    if (fcat.has(kWaterSource) && ocat.has(kSoakable) && !o.states.has(AbsState::Soaked)) {
      w.set_object_state(o.id, AbsState::Soaked, true);
      changes.push_back({EntityRef::object(o.id), AbsState::Soaked, true, ChangeCause::Soak});
    }
  }
  for (const auto& o : w.objects()) {
    const auto* f = holder_of(o);
    if (f == nullptr || !f->states.has(AbsState::ToggledOn)) continue;
    if (w.category_of(*f).has(kFreezer) && w.category_of(o).has(kFreezable) && !o.states.has(AbsState::Frozen)) {
      w.set_object_state(o.id, AbsState::Frozen, true);
      changes.push_back({EntityRef::object(o.id), AbsState::Frozen, true, ChangeCause::Freeze});
    }
  }

  std::vector<ObjectId> tools;
  std::vector<ObjectId> soaps;
  for (const auto& o : w.objects()) {
    const auto& cat = w.category_of(o);
    if (cat.has(kCleaningTool) && o.states.has(AbsState::Soaked)) tools.push_back(o.id);
    if (cat.has(kSoap)) soaps.push_back(o.id);
  }
  const auto near = [&](EntityRef a, EntityRef b) { return same_location(w, a, b) || next_to(w, a, b); };
  const auto tool_applies = [&](EntityRef target) {
    return std::any_of(tools.begin(), tools.end(), [&](ObjectId t) {
      const EntityRef tr = EntityRef::object(t);
      if (tr == target) return false;
      const bool in_hand = w.object(t).placement.kind == Placement::Kind::Carried;
      return (in_hand && entity_in_reach(w, target)) || near(tr, target);
    });
  };
  const auto soap_applies = [&](EntityRef target) {
    return std::any_of(soaps.begin(), soaps.end(), [&](ObjectId s) {
      const EntityRef sr = EntityRef::object(s);
      return sr != target && (entity_in_reach(w, sr) || near(sr, target));
    });
  };
  std::vector<EntityRef> targets;
  for (const auto& o : w.objects()) targets.push_back(EntityRef::object(o.id));
  for (const auto& f : w.furniture()) {
    if (!f.is_floor) targets.push_back(EntityRef::furniture(f.id));
  }

  // T3 clean dust.
  if (!tools.empty()) {
    for (auto t : targets) {
      if (!entity_states(w, t).has(AbsState::Dusty) || !tool_applies(t)) continue;
      if (t.is_object()) w.set_object_state(t.id, AbsState::Dusty, false);
      else w.set_furniture_state(t.id, AbsState::Dusty, false);
      changes.push_back({t, AbsState::Dusty, false, ChangeCause::CleanDust});
    }
  }
  // T4 clean stain.
  if (!tools.empty() && !soaps.empty()) {
    for (auto t : targets) {
      if (!entity_states(w, t).has(AbsState::Stained) || !tool_applies(t) || !soap_applies(t)) continue;
      if (t.is_object()) w.set_object_state(t.id, AbsState::Stained, false);
      else w.set_furniture_state(t.id, AbsState::Stained, false);
      changes.push_back({t, AbsState::Stained, false, ChangeCause::CleanStain});
    }
  }
  // T5 sweep.
  const bool has_broom = std::any_of(w.agent().carrying.begin(), w.agent().carrying.end(),
                                     [&](ObjectId id) { return w.category_of(w.object(id)).has(kBroom); });
  if (has_broom) {
    if (const auto facing = w.facing_cell(); facing && !w.cell(*facing).wall) {
      const int room = w.cell(*facing).room;
      if (room != kNoId) {
        const FurnitureId floor = w.rooms()[static_cast<std::size_t>(room)].floor;
        if (w.furniture(floor).states.has(AbsState::Dusty)) {
          w.set_furniture_state(floor, AbsState::Dusty, false);
          changes.push_back({EntityRef::furniture(floor), AbsState::Dusty, false, ChangeCause::Sweep});
        }
      }
    }
  }
  return changes;
}

}  // namespace gridhouse
