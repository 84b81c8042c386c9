#include "gridhouse/procgen.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace gridhouse {
namespace {

struct PlanRoom {
  Rect r;
};

struct Split {
  int room;
  bool vertical;  // wall is a column
  int offset;
};

class PlanBuilder {
 public:
  PlanBuilder(int w, int h) : w_(w), h_(h), wall_(static_cast<std::size_t>(w * h), false) {
    for (int x = 0; x < w; ++x) set_wall(x, 0), set_wall(x, h - 1);
    for (int y = 0; y < h; ++y) set_wall(0, y), set_wall(w - 1, y);
    rooms_.push_back({{1, 1, w - 2, h - 2}});
  }

  std::size_t room_count() const { return rooms_.size(); }

  // One split step; false if no room can be split.
  bool split(Rng& rng) {
    std::vector<int> candidates;
    for (int i = 0; i < static_cast<int>(rooms_.size()); ++i) {
      if (!offsets(i, true).empty() || !offsets(i, false).empty()) candidates.push_back(i);
    }
    if (candidates.empty()) return false;
    const int room = rng.pick(candidates);
    std::vector<bool> orientations;
    if (!offsets(room, true).empty()) orientations.push_back(true);
    if (!offsets(room, false).empty()) orientations.push_back(false);
    const bool vertical = orientations.size() == 1 ? orientations[0] : rng.uniform(0, 2) == 0;
    const auto options = offsets(room, vertical);
    const int at = rng.pick(options);
    const Rect r = rooms_[static_cast<std::size_t>(room)].r;
    if (vertical) {
      for (int y = r.y0; y <= r.y1; ++y) set_wall(at, y);
      const int door_y = static_cast<int>(rng.uniform(r.y0, r.y1 + 1));
      doors_.push_back({at, door_y});
      rooms_[static_cast<std::size_t>(room)].r = {r.x0, r.y0, at - 1, r.y1};
      rooms_.push_back({{at + 1, r.y0, r.x1, r.y1}});
    } else {
      for (int x = r.x0; x <= r.x1; ++x) set_wall(x, at);
      const int door_x = static_cast<int>(rng.uniform(r.x0, r.x1 + 1));
      doors_.push_back({door_x, at});
      rooms_[static_cast<std::size_t>(room)].r = {r.x0, r.y0, r.x1, at - 1};
      rooms_.push_back({{r.x0, at + 1, r.x1, r.y1}});
    }
    return true;
  }

  GridWorld build(const ProcGenConfig& config, const Registry& registry) const {
    GridWorld world(w_, h_, registry);
    for (int y = 0; y < h_; ++y) {
      for (int x = 0; x < w_; ++x) {
        if (wall_[idx(x, y)]) world.set_wall({x, y}, true);
      }
    }
    for (std::size_t i = 0; i < rooms_.size(); ++i) {
      std::string label = i < config.room_labels.size() ? config.room_labels[i] : "room_" + std::to_string(i);
      world.add_room(rooms_[i].r, std::move(label));
    }
    for (const auto& d : doors_) {
      world.add_door(d);
      const Pos west{d.x - 1, d.y};
      const Pos north{d.x, d.y - 1};
      world.assign_cell_room(d, world.cell(west).wall ? world.cell(north).room : world.cell(west).room);
    }
    return world;
  }

 private:
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y * w_ + x); }
  void set_wall(int x, int y) { wall_[idx(x, y)] = true; }
  bool is_door(int x, int y) const {
    return std::any_of(doors_.begin(), doors_.end(), [&](Pos p) { return p.x == x && p.y == y; });
  }

  // Wall positions leaving >= 3 interior cells on both sides and not ending in a door.
  std::vector<int> offsets(int room, bool vertical) const {
    const Rect r = rooms_[static_cast<std::size_t>(room)].r;
    std::vector<int> out;
    if (vertical) {
      for (int c = r.x0 + 3; c <= r.x1 - 3; ++c) {
        if (!is_door(c, r.y0 - 1) && !is_door(c, r.y1 + 1)) out.push_back(c);
      }
    } else {
      for (int y = r.y0 + 3; y <= r.y1 - 3; ++y) {
        if (!is_door(r.x0 - 1, y) && !is_door(r.x1 + 1, y)) out.push_back(y);
      }
    }
    return out;
  }

  int w_;
  int h_;
  std::vector<bool> wall_;
  std::vector<PlanRoom> rooms_;
  std::vector<Pos> doors_;
};

bool free_cell(const GridWorld& w, Pos p) { return w.in_bounds(p) && !w.cell(p).wall && w.cell(p).furniture == kNoId; }

bool has_free_neighbor(const GridWorld& w, Pos p) {
  for (int h = 0; h < 4; ++h) {
    if (free_cell(w, offset(p, static_cast<Heading>(h)))) return true;
  }
  return false;
}

struct Slot {
  Pos p;
  int z;
};

// Surface and interior slots of one furniture piece that are free and can be faced.
std::vector<Slot> furniture_slots(const GridWorld& w, const FurnitureInstance& f, bool surface, bool interior) {
  std::vector<Slot> out;
  const Rect r = f.footprint();
  for (int y = r.y0; y <= r.y1; ++y) {
    for (int x = r.x0; x <= r.x1; ++x) {
      const Pos p{x, y};
      if (!has_free_neighbor(w, p)) continue;
      const auto& slots = w.cell(p).slots;
      if (interior && f.container) {
        for (int z = 0; z < f.height; ++z) {
          if (slots[static_cast<std::size_t>(z)] == kNoId) out.push_back({p, z});
        }
      }
      if (surface) {
        if (const auto s = surface_level(f); s && slots[static_cast<std::size_t>(*s)] == kNoId) out.push_back({p, *s});
      }
    }
  }
  return out;
}

std::vector<Slot> floor_slots(const GridWorld& w, int room) {
  std::vector<Slot> out;
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      const Cell& c = w.cell(x, y);
      if (c.wall || c.furniture != kNoId || c.door != kNoId || c.slots[0] != kNoId) continue;
      if (room != kNoId && c.room != room) continue;
      out.push_back({{x, y}, 0});
    }
  }
  return out;
}

// Rejection-samples an anchor for one furniture piece inside a room.
bool place_in_room(GridWorld& w, const FurnitureSpec& base, int room, Rng& rng) {
  const auto& cat = w.registry().furniture(base.category);
  const Rect r = w.rooms()[static_cast<std::size_t>(room)].bounds;
  for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
    FurnitureSpec spec = base;
    spec.rotated = cat.width != cat.depth && rng.uniform(0, 2) == 1;
    const int fw = spec.rotated ? cat.depth : cat.width;
    const int fd = spec.rotated ? cat.width : cat.depth;
    if (fw > r.width() || fd > r.height()) continue;
    const Pos anchor{static_cast<int>(rng.uniform(r.x0, r.x1 - fw + 2)), static_cast<int>(rng.uniform(r.y0, r.y1 - fd + 2))};
    if (w.place_furniture(spec, anchor) != kNoId) return true;
  }
  return false;
}

struct Failure {};

// Task furniture must be usable at full capacity, so every footprint cell needs
// a free side, not just one cell per piece.
bool footprints_faceable(const GridWorld& w) {
  for (const auto& f : w.furniture()) {
    if (f.is_floor) continue;
    const Rect r = f.footprint();
    for (int y = r.y0; y <= r.y1; ++y) {
      for (int x = r.x0; x <= r.x1; ++x) {
        if (!has_free_neighbor(w, {x, y})) return false;
      }
    }
  }
  return true;
}

std::string unique_name(std::map<std::string, int>& counters, const std::string& base) {
  return base + "_" + std::to_string(counters[base]++);
}

int room_of_label(const GridWorld& w, const std::string& label) {
  const auto r = w.find_room(label);
  if (!r) throw ProcGenError(ProcGenErrorKind::LayoutError, "layout has no room labelled '" + label + "'");
  return *r;
}

std::optional<EntityRef> resolve_init_arg(const GridWorld& w, const std::string& arg) {
  if (arg.starts_with("floor@")) {
    const auto r = w.find_room(std::string_view(arg).substr(6));
    if (!r) return std::nullopt;
    return EntityRef::furniture(w.rooms()[static_cast<std::size_t>(*r)].floor);
  }
  if (auto o = w.find_object(arg)) return EntityRef::object(*o);
  if (auto f = w.find_furniture(arg)) return EntityRef::furniture(*f);
  return std::nullopt;
}

std::string render_literal(const InitLiteral& lit) {
  std::string s = "(" + (lit.pred ? std::string(to_string(*lit.pred)) : std::string("InRoom"));
  for (const auto& a : lit.args) s += " " + a;
  s += ")";
  return lit.negated ? "(not " + s + ")" : s;
}

struct ObjectPlan {
  enum class Kind : std::uint8_t { Random, Floor, OnFurniture, InFurniture, OnObject, InObject };
  Kind kind = Kind::Random;
  std::string target;
  int room = kNoId;
};

GridWorld base_layout(const TaskDefinition& task, const ProcGenConfig& config, Rng& rng, const Registry& registry) {
  if (!task.layout.file.empty()) return load_layout(task.layout.file, registry);
  return generate_floor_plan(config, rng, registry);
}

// One instantiation attempt; throws Failure to request a restart.
GridWorld attempt_task(const TaskDefinition& task, const ProcGenConfig& config, ProcGenStreams& s, const Registry& registry) {
  GridWorld w = base_layout(task, config, s.floorplan, registry);

  std::map<std::string, int> room_of;
  for (const auto& lit : task.init) {
    if (lit.in_room()) room_of[lit.args[0]] = room_of_label(w, lit.args[1]);
  }

  for (const auto& e : task.entities) {
    if (!e.furniture) continue;
    const auto* cat = registry.find_furniture(e.category);
    const auto it = room_of.find(e.name);
    const int room = it != room_of.end() ? it->second : static_cast<int>(s.furniture.uniform(0, static_cast<std::int64_t>(w.rooms().size())));
    if (!place_in_room(w, {cat->id, e.name, false}, room, s.furniture)) throw Failure{};
  }
  if (!footprints_faceable(w) || !reachability_check(w)) throw Failure{};

  std::map<std::string, ObjectPlan> plans;
  for (const auto& e : task.entities) {
    if (e.furniture) continue;
    ObjectPlan plan;
    if (const auto it = room_of.find(e.name); it != room_of.end()) plan.room = it->second;
    plans[e.name] = plan;
    w.add_object(registry.find_object(e.category)->id, e.name);
  }
  for (const auto& lit : task.init) {
    if (lit.negated || !lit.pred || (*lit.pred != Predicate::OnTop && *lit.pred != Predicate::Inside)) continue;
    auto& plan = plans[lit.args[0]];
    const auto& target = lit.args[1];
    plan.target = target;
    if (target == "floor") {
      plan.kind = ObjectPlan::Kind::Floor;
    } else if (const auto* d = task.find_entity(target); d != nullptr && d->furniture) {
      plan.kind = *lit.pred == Predicate::OnTop ? ObjectPlan::Kind::OnFurniture : ObjectPlan::Kind::InFurniture;
    } else {
      plan.kind = *lit.pred == Predicate::OnTop ? ObjectPlan::Kind::OnObject : ObjectPlan::Kind::InObject;
    }
  }

  // Objects resting on or in other objects wait until their support is placed.
  std::vector<std::string> pending;
  for (const auto& e : task.entities) {
    if (!e.furniture) pending.push_back(e.name);
  }
  while (!pending.empty()) {
    bool progressed = false;
    std::vector<std::string> next;
    for (const auto& name : pending) {
      const auto& plan = plans[name];
      const bool on_object = plan.kind == ObjectPlan::Kind::OnObject || plan.kind == ObjectPlan::Kind::InObject;
      if (on_object && w.object(*w.find_object(plan.target)).placement.kind == Placement::Kind::Nowhere) {
        next.push_back(name);
        continue;
      }
      progressed = true;
      const ObjectId id = *w.find_object(name);
      std::vector<Slot> slots;
      switch (plan.kind) {
        case ObjectPlan::Kind::Floor: slots = floor_slots(w, plan.room); break;
        case ObjectPlan::Kind::OnFurniture:
          slots = furniture_slots(w, w.furniture(*w.find_furniture(plan.target)), true, false);
          break;
        case ObjectPlan::Kind::InFurniture:
          slots = furniture_slots(w, w.furniture(*w.find_furniture(plan.target)), false, true);
          break;
        case ObjectPlan::Kind::OnObject: {
          const auto& p = w.object(*w.find_object(plan.target)).placement;
          if (p.kind == Placement::Kind::Grid && p.z + 1 < kLevels && w.cell(p.x, p.y).slots[static_cast<std::size_t>(p.z + 1)] == kNoId) {
            slots.push_back({{p.x, p.y}, p.z + 1});
          }
          break;
        }
        case ObjectPlan::Kind::InObject: w.put_within(id, *w.find_object(plan.target)); continue;
        case ObjectPlan::Kind::Random: {
          slots = floor_slots(w, plan.room);
          for (const auto& f : w.furniture()) {
            if (f.is_floor || (plan.room != kNoId && f.room != plan.room)) continue;
            auto more = furniture_slots(w, f, true, true);
            slots.insert(slots.end(), more.begin(), more.end());
          }
          break;
        }
      }
      if (slots.empty()) throw Failure{};
      const Slot slot = s.objects.pick(slots);
      if (w.place_object(id, slot.p.x, slot.p.y, slot.z) != WorldError::Ok) throw Failure{};
    }
    if (!progressed) throw ProcGenError(ProcGenErrorKind::InvalidConfig, task.name + ": circular object placement in :init");
    pending = std::move(next);
  }

  for (const auto& lit : task.init) {
    if (lit.negated || !lit.pred) continue;
    const auto st = as_state(*lit.pred);
    if (!st) continue;
    const auto e = resolve_init_arg(w, lit.args[0]);
    if (!e) throw ProcGenError(ProcGenErrorKind::LayoutError, task.name + ": cannot resolve " + lit.args[0]);
    if (e->is_object()) w.set_object_state(e->id, *st, true);
    else w.set_furniture_state(e->id, *st, true);
  }
  apply_transitions(w);
  spawn_agent(w, s.floorplan);

  if (!reachability_check(w) || !interactable_check(w)) throw Failure{};
  if (!failing_init_literals(w, task).empty()) throw Failure{};
  if (check_goal(w, task.goal)) throw Failure{};
  return w;
}

GridWorld attempt_random(const ProcGenConfig& config, ProcGenStreams& s, const Registry& registry) {
  GridWorld w = generate_floor_plan(config, s.floorplan, registry);
  std::vector<int> furniture_cats;
  for (const auto& c : registry.furniture_categories()) {
    if (!c.has(kFloor)) furniture_cats.push_back(c.id);
  }
  std::vector<int> object_cats;
  for (const auto& c : registry.objects()) object_cats.push_back(c.id);

  std::map<std::string, int> counters;
  const auto rooms = w.rooms();
  for (const auto& room : rooms) {
    const int n = sample_furniture_count(room, s.furniture);
    for (int i = 0; i < n; ++i) {
      const int cat = s.furniture.pick(furniture_cats);
      if (!place_in_room(w, {cat, unique_name(counters, registry.furniture(cat).name), false}, room.id, s.furniture)) throw Failure{};
    }
  }
  const std::size_t nfurn = w.furniture().size();
  for (std::size_t fi = 0; fi < nfurn; ++fi) {
    const auto f = w.furniture()[fi];
    if (f.is_floor) continue;
    const int n = sample_object_count(f, s.objects);
    for (int i = 0; i < n; ++i) {
      const auto slots = furniture_slots(w, f, true, true);
      if (slots.empty()) throw Failure{};
      const int cat = s.objects.pick(object_cats);
      const ObjectId id = w.add_object(cat, unique_name(counters, registry.object(cat).name));
      const Slot slot = s.objects.pick(slots);
      w.place_object(id, slot.p.x, slot.p.y, slot.z);
    }
  }
  spawn_agent(w, s.floorplan);
  if (!reachability_check(w) || !interactable_check(w)) throw Failure{};
  return w;
}

}  // namespace

ProcGenError::ProcGenError(ProcGenErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

ProcGenStreams ProcGenStreams::make(std::uint64_t seed, int attempt) {
  const Rng root(seed);
  const std::string suffix = "/" + std::to_string(attempt);
  return {root.derive("floorplan" + suffix), root.derive("furniture" + suffix), root.derive("objects" + suffix)};
}

GridWorld generate_floor_plan(const ProcGenConfig& config, Rng& rng, const Registry& registry) {
  if (config.num_rooms < 1) throw ProcGenError(ProcGenErrorKind::InvalidConfig, "num_rooms must be >= 1");
  if (config.width < 5 || config.height < 5) throw ProcGenError(ProcGenErrorKind::InvalidConfig, "grid must be at least 5x5");
  for (int attempt = 0; attempt < kFloorPlanRestarts; ++attempt) {
    PlanBuilder plan(config.width, config.height);
    while (static_cast<int>(plan.room_count()) < config.num_rooms && plan.split(rng)) {
    }
    if (static_cast<int>(plan.room_count()) == config.num_rooms) return plan.build(config, registry);
  }
  throw ProcGenError(ProcGenErrorKind::Unsplittable, std::to_string(config.num_rooms) + " rooms do not fit a " +
                                                         std::to_string(config.width) + "x" + std::to_string(config.height) + " grid");
}

int sample_furniture_count(const Room& room, Rng& rng) {
  const int upper = std::max(2, room.bounds.area() / 12);
  return static_cast<int>(rng.uniform(1, upper));
}

int sample_object_count(const FurnitureInstance& f, Rng& rng) {
  const int upper = f.width * f.depth;
  if (upper <= 1) return 1;
  return static_cast<int>(rng.uniform(1, upper));
}

bool reachability_check(const GridWorld& w) {
  std::vector<char> seen(static_cast<std::size_t>(w.width() * w.height()), 0);
  std::vector<Pos> stack;
  int total = 0;
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      if (!free_cell(w, {x, y})) continue;
      ++total;
      if (stack.empty() && total == 1) stack.push_back({x, y});
    }
  }
  if (total == 0) return true;
  seen[static_cast<std::size_t>(stack[0].y * w.width() + stack[0].x)] = 1;
  int reached = 0;
  while (!stack.empty()) {
    const Pos p = stack.back();
    stack.pop_back();
    ++reached;
    for (int h = 0; h < 4; ++h) {
      const Pos n = offset(p, static_cast<Heading>(h));
      if (!free_cell(w, n)) continue;
      auto& s = seen[static_cast<std::size_t>(n.y * w.width() + n.x)];
      if (s) continue;
      s = 1;
      stack.push_back(n);
    }
  }
  return reached == total;
}

bool interactable_check(const GridWorld& w) {
  for (const auto& f : w.furniture()) {
    if (f.is_floor) continue;
    const Rect r = f.footprint();
    bool ok = false;
    for (int y = r.y0; y <= r.y1 && !ok; ++y) {
      for (int x = r.x0; x <= r.x1 && !ok; ++x) ok = has_free_neighbor(w, {x, y});
    }
    if (!ok) return false;
  }
  for (const auto& o : w.objects()) {
    if (o.placement.kind != Placement::Kind::Grid) continue;
    if (!has_free_neighbor(w, {o.placement.x, o.placement.y})) return false;
  }
  return true;
}

GridWorld parse_layout(std::string_view text, const Registry& registry) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<char, std::string> labels;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == ';') continue;
    if (line.starts_with("rooms:")) {
      std::istringstream ls(line.substr(6));
      std::string tok;
      while (ls >> tok) {
        if (tok.size() < 3 || tok[1] != '=') throw ProcGenError(ProcGenErrorKind::LayoutError, "bad room declaration '" + tok + "'");
        labels[tok[0]] = tok.substr(2);
      }
      continue;
    }
    rows.push_back(line);
  }
  if (rows.size() < 3) throw ProcGenError(ProcGenErrorKind::LayoutError, "layout needs at least 3 rows");
  const int width = static_cast<int>(rows[0].size());
  const int height = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != width) throw ProcGenError(ProcGenErrorKind::LayoutError, "layout rows differ in length");
  }
  GridWorld w(width, height, registry);
  std::map<char, Rect> bounds;
  std::map<char, int> counts;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const char c = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      if (c == '#') {
        w.set_wall({x, y}, true);
      } else if (c != '+') {
        if (!labels.contains(c)) throw ProcGenError(ProcGenErrorKind::LayoutError, std::string("undeclared room letter '") + c + "'");
        auto [it, fresh] = bounds.try_emplace(c, Rect{x, y, x, y});
        Rect& r = it->second;
        r = {std::min(r.x0, x), std::min(r.y0, y), std::max(r.x1, x), std::max(r.y1, y)};
        ++counts[c];
      }
    }
  }
  // Rooms are added in declaration order of first appearance in the rooms line.
  std::vector<std::pair<char, std::string>> order;
  std::istringstream again{std::string(text)};
  while (std::getline(again, line)) {
    if (!line.starts_with("rooms:")) continue;
    std::istringstream ls(line.substr(6));
    std::string tok;
    while (ls >> tok) order.emplace_back(tok[0], tok.substr(2));
  }
  for (const auto& [c, name] : order) {
    if (!bounds.contains(c)) throw ProcGenError(ProcGenErrorKind::LayoutError, "room '" + name + "' has no cells");
    if (bounds[c].area() != counts[c]) throw ProcGenError(ProcGenErrorKind::LayoutError, "room '" + name + "' is not a rectangle");
    w.add_room(bounds[c], name);
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] != '+') continue;
      w.add_door({x, y});
      const Pos west{x - 1, y};
      const Pos north{x, y - 1};
      const bool use_west = w.in_bounds(west) && !w.cell(west).wall && w.cell(west).room != kNoId;
      w.assign_cell_room({x, y}, use_west ? w.cell(west).room : w.cell(north).room);
    }
  }
  return w;
}

GridWorld load_layout(const std::string& name, const Registry& registry) {
  const auto path = data_dir() / "layouts" / (name + ".layout");
  std::ifstream in(path);
  if (!in) throw ProcGenError(ProcGenErrorKind::LayoutError, "cannot read layout " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_layout(ss.str(), registry);
}

void spawn_agent(GridWorld& w, Rng& rng) {
  std::vector<Pos> cells;
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      if (free_cell(w, {x, y})) cells.push_back({x, y});
    }
  }
  if (cells.empty()) throw ProcGenError(ProcGenErrorKind::PlacementExhausted, "no free cell for the agent");
  const Pos p = rng.pick(cells);
  w.set_agent(p, static_cast<Heading>(rng.uniform(0, 4)));
}

GridWorld generate_random_world(const ProcGenConfig& config, const Registry& registry) {
  for (int attempt = 0; attempt < kFloorPlanRestarts; ++attempt) {
    auto streams = ProcGenStreams::make(config.seed, attempt);
    try {
      GridWorld w = attempt_random(config, streams, registry);
      w.set_rng(streams.objects);
      return w;
    } catch (const Failure&) {
    }
  }
  throw ProcGenError(ProcGenErrorKind::PlacementExhausted, "random world: placement budget exhausted");
}

ProcGenConfig task_procgen_config(const TaskDefinition& task, std::uint64_t seed, const TaskOverrides& overrides) {
  ProcGenConfig c;
  c.width = overrides.grid_size.value_or(task.layout.width);
  c.height = overrides.grid_size.value_or(task.layout.height);
  c.room_labels = task.layout.rooms;
  c.num_rooms = overrides.rooms.value_or(static_cast<int>(task.layout.rooms.size()));
  if (task.layout.file.empty() && c.num_rooms < 1) throw ProcGenError(ProcGenErrorKind::InvalidConfig, "at least one room is required");
  c.seed = seed;
  return c;
}

GridWorld instantiate_task(const TaskDefinition& task, std::uint64_t seed, const TaskOverrides& overrides, const Registry& registry) {
  const ProcGenConfig config = task_procgen_config(task, seed, overrides);
  for (int attempt = 0; attempt < kFloorPlanRestarts; ++attempt) {
    auto streams = ProcGenStreams::make(seed, attempt);
    try {
      GridWorld w = attempt_task(task, config, streams, registry);
      w.set_rng(streams.objects);
      return w;
    } catch (const Failure&) {
    }
  }
  throw ProcGenError(ProcGenErrorKind::PlacementExhausted, task.name + ": placement budget exhausted");
}

std::vector<std::string> failing_init_literals(const GridWorld& w, const TaskDefinition& task) {
  std::vector<std::string> out;
  for (const auto& lit : task.init) {
    bool holds = false;
    const auto a = resolve_init_arg(w, lit.args[0]);
    if (!a) {
      out.push_back(render_literal(lit));
      continue;
    }
    if (lit.in_room()) {
      const auto room = w.find_room(lit.args[1]);
      int actual = kNoId;
      if (a->is_object()) {
        if (auto c = w.object_cell(a->id)) actual = w.cell(*c).room;
      } else {
        actual = w.cell(w.furniture(a->id).anchor).room;
      }
      holds = room && actual == *room;
    } else if (*lit.pred == Predicate::OnTop && lit.args[1] == "floor") {
      holds = eval_absolute(w, *a, Predicate::OnFloor).value;
    } else {
      std::optional<EntityRef> b;
      if (lit.args.size() > 1) b = resolve_init_arg(w, lit.args[1]);
      holds = (lit.args.size() == 1 || b) && eval_atom(w, *lit.pred, *a, b);
    }
    if (holds == lit.negated) out.push_back(render_literal(lit));
  }
  return out;
}

}  // namespace gridhouse
