#include "gridhouse/agents.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace gridhouse {
namespace {

PrimitiveAction drop_at_level(int z) { return static_cast<PrimitiveAction>(static_cast<int>(PrimitiveAction::DropBottom) + z); }
PrimitiveAction pickup_at_level(int z) { return static_cast<PrimitiveAction>(static_cast<int>(PrimitiveAction::PickupBottom) + z); }

bool in_footprint(const GridWorld& w, FurnitureId f, Pos p) { return w.in_bounds(p) && w.cell(p).furniture == f; }

int placement_z(const GridWorld& w, ObjectId o) {
  const auto* p = &w.object(o).placement;
  while (p->kind == Placement::Kind::Within) p = &w.object(p->container).placement;
  return p->kind == Placement::Kind::Grid ? p->z : -1;
}

}  // namespace

int RandomAgent::act(const Environment& env) {
  if (!valid_only_) return static_cast<int>(rng_.uniform(0, static_cast<std::int64_t>(env.action_space_size())));
  const auto valid = env.valid_actions();
  if (valid.empty()) return 0;
  return rng_.pick(valid);
}

std::optional<std::vector<int>> bfs_solve(const Environment& env, std::size_t max_states) {
  const bool cartesian = env.config().action_mode == ActionMode::Cartesian;
  const auto n = static_cast<int>(env.action_space_size());
  const auto& goal = env.task().goal;

  struct Node {
    std::uint64_t parent;
    int action;
  };
  std::unordered_map<std::uint64_t, Node> seen;
  std::deque<GridWorld> frontier;
  GridWorld start = env.world();
  start.set_step_count(0);
  const auto root = start.state_hash();
  seen.emplace(root, Node{root, -1});

  auto path_to = [&](std::uint64_t h) {
    std::vector<int> out;
    while (h != root) {
      const auto& node = seen.at(h);
      out.push_back(node.action);
      h = node.parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
  };

  if (check_goal(start, goal)) return std::vector<int>{};
  frontier.push_back(std::move(start));
  while (!frontier.empty()) {
    if (seen.size() > max_states) return std::nullopt;
    GridWorld cur = std::move(frontier.front());
    frontier.pop_front();
    const auto h = cur.state_hash();
    for (int a = 0; a < n; ++a) {
      GridWorld next = cur;
      const auto out = cartesian ? apply_cartesian(next, env.cartesian_space(), static_cast<std::size_t>(a))
                                 : apply_primitive(next, static_cast<PrimitiveAction>(a));
      if (!out.succeeded) continue;
      const auto nh = next.state_hash();
      if (!seen.emplace(nh, Node{h, a}).second) continue;
      if (check_goal(next, goal)) return path_to(nh);
      frontier.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

// --- Planner ---------------------------------------------------------------

bool Planner::fail(std::string why) {
  if (error_.empty()) error_ = std::move(why);
  return false;
}

ObjectId Planner::obj(std::string_view name) {
  if (auto o = w_.find_object(name)) return *o;
  fail("no object " + std::string(name));
  return kNoId;
}

FurnitureId Planner::furn(std::string_view name) {
  if (auto f = w_.find_furniture(name)) return *f;
  fail("no furniture " + std::string(name));
  return kNoId;
}

std::vector<ObjectId> Planner::objects_of(std::string_view category) const {
  std::vector<ObjectId> out;
  for (const auto& o : w_.objects()) {
    if (w_.category_of(o).name == category) out.push_back(o.id);
  }
  return out;
}

bool Planner::act(PrimitiveAction a) {
  if (failed()) return false;
  const auto out = apply_primitive(w_, a);
  if (!out.succeeded) return fail(std::string(to_string(a)) + " failed: " + std::string(to_string(out.reason)));
  actions_.push_back(static_cast<int>(a));
  return true;
}

bool Planner::face_where(const std::function<bool(Pos)>& pred) {
  if (failed()) return false;
  const int W = w_.width();
  const int H = w_.height();
  auto key = [&](Pos p, Heading h) { return (static_cast<std::size_t>(p.y * W + p.x) << 2) | static_cast<std::size_t>(h); };
  std::vector<int> prev(static_cast<std::size_t>(W * H * 4), -1);
  std::vector<std::int8_t> via(prev.size(), -1);
  std::deque<std::pair<Pos, Heading>> q;
  const auto& ag = w_.agent();
  prev[key(ag.pos, ag.heading)] = static_cast<int>(key(ag.pos, ag.heading));
  q.push_back({ag.pos, ag.heading});
  while (!q.empty()) {
    const auto [p, h] = q.front();
    q.pop_front();
    const Pos f = offset(p, h);
    if (w_.in_bounds(f) && pred(f)) {
      std::vector<PrimitiveAction> path;
      auto k = key(p, h);
      while (prev[k] != static_cast<int>(k)) {
        path.push_back(static_cast<PrimitiveAction>(via[k]));
        k = static_cast<std::size_t>(prev[k]);
      }
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (!act(*it)) return false;
      }
      return true;
    }
    const std::pair<Pos, Heading> moves[3] = {{f, h}, {p, turn_left(h)}, {p, turn_right(h)}};
    for (int m = 0; m < 3; ++m) {
      const auto [np, nh] = moves[m];
      if (m == 0 && !w_.is_free_floor(np)) continue;
      const auto nk = key(np, nh);
      if (prev[nk] != -1) continue;
      prev[nk] = static_cast<int>(key(p, h));
      via[nk] = static_cast<std::int8_t>(m == 0 ? PrimitiveAction::Forward : m == 1 ? PrimitiveAction::TurnLeft : PrimitiveAction::TurnRight);
      q.push_back({np, nh});
    }
  }
  return fail("no reachable cell satisfies the facing target");
}

bool Planner::face(Pos target) {
  return face_where([&](Pos p) { return p == target; });
}

bool Planner::face_furniture(FurnitureId f) {
  return face_where([&](Pos p) { return in_footprint(w_, f, p); });
}

void Planner::nudge() {
  act(PrimitiveAction::TurnLeft);
  act(PrimitiveAction::TurnRight);
}

bool Planner::holding(ObjectId o) const {
  const auto& c = w_.agent().carrying;
  return std::find(c.begin(), c.end(), o) != c.end();
}

bool Planner::free_floor_slot(Pos p) const {
  if (!w_.is_free_floor(p)) return false;
  const auto& c = w_.cell(p);
  return c.room != kNoId && c.slots[0] == kNoId && !reserved.contains({p.x, p.y});
}

bool Planner::empty_hand() {
  if (failed()) return false;
  if (w_.agent().carrying.empty()) return true;
  if (!face_where([&](Pos p) { return free_floor_slot(p) && w_.cell(p).door == kNoId; })) return false;
  return act(PrimitiveAction::DropBottom);
}

bool Planner::pickup(ObjectId o) {
  if (failed()) return false;
  if (holding(o)) return true;
  if (!empty_hand()) return false;
  const auto& pl = w_.object(o).placement;
  const auto cell = w_.object_cell(o);
  if (!cell) return fail("object " + w_.object(o).name + " is not on the grid");
  const int z = placement_z(w_, o);
  if (pl.kind == Placement::Kind::Within) {
    // The container hands out its highest-id content first.
    ObjectId top = kNoId;
    for (const auto& other : w_.objects()) {
      if (other.placement.kind == Placement::Kind::Within && other.placement.container == pl.container) top = std::max(top, other.id);
    }
    if (top != o) return fail("cannot reach " + w_.object(o).name + " inside its container");
  }
  if (w_.slot_is_interior(*cell, z)) {
    const auto f = w_.cell(*cell).furniture;
    if (w_.furniture(f).openable && !w_.furniture(f).states.has(AbsState::Opened) && !open(f)) return false;
  }
  if (!face(*cell)) return false;
  if (!act(pickup_at_level(z))) return false;
  return holding(o) || fail("picked up something other than " + w_.object(o).name);
}

bool Planner::place_on(FurnitureId f) {
  if (failed()) return false;
  const auto s = surface_level(w_.furniture(f));
  if (!s) return fail(w_.furniture(f).name + " has no surface");
  if (!face_where([&](Pos p) { return in_footprint(w_, f, p) && w_.cell(p).slots[static_cast<std::size_t>(*s)] == kNoId; })) return false;
  return act(drop_at_level(*s));
}

bool Planner::put_in(FurnitureId f) {
  if (failed()) return false;
  const auto& fi = w_.furniture(f);
  if (!fi.container) return fail(fi.name + " is not a container");
  if (fi.openable && !fi.states.has(AbsState::Opened) && !open(f)) return false;
  const int height = fi.height;
  if (!face_where([&](Pos p) {
        if (!in_footprint(w_, f, p)) return false;
        for (int z = 0; z < height; ++z) {
          if (w_.cell(p).slots[static_cast<std::size_t>(z)] == kNoId) return true;
        }
        return false;
      })) {
    return false;
  }
  return act(PrimitiveAction::DropIn);
}

bool Planner::put_in_object(ObjectId container) {
  if (failed()) return false;
  const auto cell = w_.object_cell(container);
  if (!cell) return fail("container " + w_.object(container).name + " is not on the grid");
  if (!face(*cell)) return false;
  return act(PrimitiveAction::DropIn);
}

bool Planner::drop_at(Pos p, int z) {
  if (!face(p)) return false;
  return act(drop_at_level(z));
}

bool Planner::open(FurnitureId f) {
  if (!face_furniture(f)) return false;
  for (int i = 0; i < 4 && !w_.furniture(f).states.has(AbsState::Opened); ++i) {
    if (!act(PrimitiveAction::Open)) return false;
  }
  return w_.furniture(f).states.has(AbsState::Opened) || fail("could not open " + w_.furniture(f).name);
}

bool Planner::open_object(ObjectId o) {
  const auto cell = w_.object_cell(o);
  if (!cell || !face(*cell)) return fail("cannot reach " + w_.object(o).name);
  for (int i = 0; i < 4 && !w_.object(o).states.has(AbsState::Opened); ++i) {
    if (!act(PrimitiveAction::Open)) return false;
  }
  return w_.object(o).states.has(AbsState::Opened) || fail("could not open " + w_.object(o).name);
}

bool Planner::toggle_on(FurnitureId f) {
  if (failed()) return false;
  if (w_.furniture(f).states.has(AbsState::ToggledOn)) return true;
  if (!face_furniture(f) || !act(PrimitiveAction::Toggle)) return false;
  return w_.furniture(f).states.has(AbsState::ToggledOn) || fail("toggle did not reach " + w_.furniture(f).name);
}

bool Planner::toggle_object_on(ObjectId o) {
  if (failed()) return false;
  if (w_.object(o).states.has(AbsState::ToggledOn)) return true;
  const auto cell = w_.object_cell(o);
  if (!cell || !face(*cell) || !act(PrimitiveAction::Toggle)) return fail("cannot toggle " + w_.object(o).name);
  return w_.object(o).states.has(AbsState::ToggledOn) || fail("toggle did not reach " + w_.object(o).name);
}

bool Planner::slice(ObjectId target, ObjectId knife) {
  if (failed()) return false;
  if (w_.object(target).states.has(AbsState::Sliced)) return true;
  if (!pickup(knife)) return false;
  const auto cell = w_.object_cell(target);
  if (!cell) return fail("cannot slice a carried object");
  if (!face(*cell)) return false;
  for (int i = 0; i < 8 && !w_.object(target).states.has(AbsState::Sliced); ++i) {
    if (!act(PrimitiveAction::Slice)) return false;
  }
  return w_.object(target).states.has(AbsState::Sliced) || fail("could not slice " + w_.object(target).name);
}

bool Planner::soak(ObjectId tool, FurnitureId sink) {
  if (failed()) return false;
  if (w_.object(tool).states.has(AbsState::Soaked)) return true;
  if (!toggle_on(sink) || !pickup(tool) || !put_in(sink)) return false;
  return w_.object(tool).states.has(AbsState::Soaked) || fail(w_.object(tool).name + " did not soak");
}

bool Planner::wipe(FurnitureId f, ObjectId tool) {
  if (!pickup(tool) || !face_furniture(f)) return false;
  if (w_.furniture(f).states.has(AbsState::Dusty) || w_.furniture(f).states.has(AbsState::Stained)) nudge();
  return !failed();
}

bool Planner::setup_station(ObjectId soap, ObjectId tool) {
  if (failed()) return false;
  for (int y = 0; y < w_.height() && !station_; ++y) {
    for (int x = 0; x < w_.width() && !station_; ++x) {
      const Pos c{x, y};
      if (!free_floor_slot(c) || w_.cell(c).door != kNoId) continue;
      std::vector<Pos> sides;
      for (int h = 0; h < 4; ++h) {
        const Pos n = offset(c, static_cast<Heading>(h));
        if (free_floor_slot(n) && w_.cell(n).door == kNoId) sides.push_back(n);
      }
      if (sides.size() < 3) continue;
      station_ = c;
      reserved.insert({c.x, c.y});
      for (int i = 0; i < 2; ++i) reserved.insert({sides[static_cast<std::size_t>(i)].x, sides[static_cast<std::size_t>(i)].y});
      if (!pickup(soap) || !drop_at(sides[0])) return false;
      if (!pickup(tool) || !drop_at(sides[1])) return false;
    }
  }
  return station_.has_value() || fail("no room for a cleaning station");
}

bool Planner::clean_at_station(ObjectId o) {
  if (failed()) return false;
  if (!station_) return fail("no cleaning station");
  const auto& st = w_.object(o).states;
  if (!st.has(AbsState::Stained) && !st.has(AbsState::Dusty)) return true;
  if (!pickup(o) || !drop_at(*station_)) return false;
  const auto& after = w_.object(o).states;
  if (after.has(AbsState::Stained) || after.has(AbsState::Dusty)) return fail(w_.object(o).name + " still dirty at the station");
  return pickup(o);
}

bool Planner::move_on(ObjectId o, FurnitureId f) {
  if (failed()) return false;
  if (!holding(o) && eval_relative(w_, EntityRef::object(o), EntityRef::furniture(f), Predicate::OnTop)) return true;
  return pickup(o) && place_on(f);
}

bool Planner::move_in(ObjectId o, FurnitureId f) {
  if (failed()) return false;
  if (!holding(o) && eval_relative(w_, EntityRef::object(o), EntityRef::furniture(f), Predicate::Inside)) return true;
  return pickup(o) && put_in(f);
}

bool Planner::move_all_in(std::vector<ObjectId> objs, FurnitureId f) {
  while (!objs.empty() && !failed()) {
    auto it = std::max_element(objs.begin(), objs.end(), [&](ObjectId a, ObjectId b) { return placement_z(w_, a) < placement_z(w_, b); });
    const ObjectId o = *it;
    objs.erase(it);
    move_in(o, f);
  }
  return !failed();
}

bool Planner::move_all_on(std::vector<ObjectId> objs, FurnitureId f) {
  while (!objs.empty() && !failed()) {
    auto it = std::max_element(objs.begin(), objs.end(), [&](ObjectId a, ObjectId b) { return placement_z(w_, a) < placement_z(w_, b); });
    const ObjectId o = *it;
    objs.erase(it);
    move_on(o, f);
  }
  return !failed();
}

}  // namespace gridhouse
