#pragma once

#include <string>

#include "gridhouse/actions.hpp"
#include "gridhouse/procgen.hpp"
#include "gridhouse/world.hpp"

namespace gh_test {

using namespace gridhouse;

inline int obj_cat(const char* name) { return Registry::builtin().find_object(name)->id; }
inline int furn_cat(const char* name) { return Registry::builtin().find_furniture(name)->id; }

inline ObjectId add(GridWorld& w, const char* cat, const std::string& name, int x, int y, int z) {
  const ObjectId id = w.add_object(obj_cat(cat), name);
  if (w.place_object(id, x, y, z) != WorldError::Ok) throw std::logic_error("cannot place " + name);
  return id;
}

inline FurnitureId put(GridWorld& w, const char* cat, const std::string& name, int x, int y, bool rotated = false) {
  const FurnitureId id = w.place_furniture({furn_cat(cat), name, rotated}, {x, y});
  if (id == kNoId) throw std::logic_error("cannot place " + name);
  return id;
}

// Object that is picked up straight into the agent's hand.
inline ObjectId carried(GridWorld& w, const char* cat, const std::string& name) {
  const ObjectId id = w.add_object(obj_cat(cat), name);
  w.carry_object(id);
  return id;
}

inline EntityRef O(ObjectId id) { return EntityRef::object(id); }
inline EntityRef F(FurnitureId id) { return EntityRef::furniture(id); }

// Hand-rolled generator for property tests: a random furnished world, then a
// random agent pose, random reachable states, a carried object and objects
// nested in container objects, all from one seed.
inline GridWorld random_world(std::uint64_t seed) {
  Rng rng(seed);
  ProcGenConfig cfg;
  cfg.width = static_cast<int>(rng.uniform(8, 15));
  cfg.height = static_cast<int>(rng.uniform(8, 15));
  cfg.num_rooms = static_cast<int>(rng.uniform(1, 4));
  cfg.seed = rng.next_u64();
  // Small grids cannot always hold the requested rooms; fall back to fewer.
  std::optional<GridWorld> made;
  while (!made) {
    try {
      made = generate_random_world(cfg);
    } catch (const ProcGenError&) {
      if (cfg.num_rooms == 1) throw;
      --cfg.num_rooms;
    }
  }
  GridWorld w = std::move(*made);

  for (const auto& o : w.objects()) {
    const auto cap = w.category_of(o).capable;
    for (int s = 0; s < kNumAbsStates; ++s) {
      const auto st = static_cast<AbsState>(s);
      if (cap.has(st) && rng.uniform(0, 3) == 0) w.set_object_state(o.id, st, true);
    }
  }
  for (const auto& f : w.furniture()) {
    const auto cap = w.category_of(f).capable;
    for (int s = 0; s < kNumAbsStates; ++s) {
      const auto st = static_cast<AbsState>(s);
      if (cap.has(st) && rng.uniform(0, 3) == 0) w.set_furniture_state(f.id, st, true);
    }
  }

  std::vector<Pos> free;
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      if (w.is_free_floor({x, y})) free.push_back({x, y});
    }
  }
  // Agent next to furniture half of the time, so facing relations get exercised.
  std::vector<std::pair<Pos, Heading>> near;
  for (auto p : free) {
    for (int h = 0; h < 4; ++h) {
      const Pos f = offset(p, static_cast<Heading>(h));
      if (w.in_bounds(f) && w.cell(f).furniture != kNoId) near.push_back({p, static_cast<Heading>(h)});
    }
  }
  if (!near.empty() && rng.uniform(0, 2) == 0) {
    const auto [p, h] = rng.pick(near);
    w.set_agent(p, h);
  } else {
    w.set_agent(rng.pick(free), static_cast<Heading>(rng.uniform(0, 4)));
  }

  // Objects with nothing resting on them can be lifted or nested.
  auto liftable = [&]() {
    std::vector<ObjectId> out;
    for (const auto& o : w.objects()) {
      const auto& p = o.placement;
      if (p.kind != Placement::Kind::Grid) continue;
      if (p.z + 1 < kLevels && w.cell(p.x, p.y).slots[static_cast<std::size_t>(p.z + 1)] != kNoId) continue;
      out.push_back(o.id);
    }
    return out;
  };
  for (int i = 0; i < 2; ++i) {
    std::vector<ObjectId> containers;
    for (const auto& o : w.objects()) {
      if (w.category_of(o).has(kContainer) && o.placement.kind == Placement::Kind::Grid) containers.push_back(o.id);
    }
    const auto movable = liftable();
    if (containers.empty() || movable.size() < 2) break;
    const ObjectId c = rng.pick(containers);
    const ObjectId m = rng.pick(movable);
    if (m == c || w.category_of(w.object(m)).has(kContainer)) continue;
    w.carry_object(m);
    w.put_within(m, c);
  }
  if (rng.uniform(0, 2) == 0) {
    const auto movable = liftable();
    if (!movable.empty()) w.carry_object(rng.pick(movable));
  }
  return w;
}

}  // namespace gh_test
