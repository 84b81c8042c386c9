#include "gridhouse/world.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace gridhouse {
namespace {

constexpr std::array<Pos, 4> kHeadingDelta = {{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

class Hasher {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xffU;
      h_ *= 0x100000001b3ULL;
    }
  }
  void add(std::string_view s) {
    add(s.size());
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

Heading turn_left(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 3) % 4); }
Heading turn_right(Heading h) { return static_cast<Heading>((static_cast<int>(h) + 1) % 4); }

std::string_view to_string(Heading h) {
  constexpr std::array<std::string_view, 4> names = {"N", "E", "S", "W"};
  return names[static_cast<std::size_t>(h)];
}

Pos offset(Pos p, Heading h, int distance) {
  const Pos d = kHeadingDelta[static_cast<std::size_t>(h)];
  return {p.x + d.x * distance, p.y + d.y * distance};
}

std::string_view to_string(WorldError e) {
  switch (e) {
    case WorldError::Ok: return "Ok";
    case WorldError::SlotOccupied: return "SlotOccupied";
    case WorldError::OutOfBounds: return "OutOfBounds";
    case WorldError::WallCell: return "WallCell";
    case WorldError::SolidFurniture: return "SolidFurniture";
    case WorldError::Overlap: return "Overlap";
    case WorldError::SpansRooms: return "SpansRooms";
    case WorldError::NoSuchEntity: return "NoSuchEntity";
  }
  return "?";
}

std::optional<int> surface_level(const FurnitureInstance& f) {
  if (f.is_floor) return 0;
  if (f.height < kLevels) return f.height;
  return std::nullopt;
}

GridWorld::GridWorld(int width, int height, const Registry& registry)
    : width_(width), height_(height), registry_(&registry) {
  if (width < 3 || height < 3) throw std::invalid_argument("grid must be at least 3x3");
  cells_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
}

GridWorld GridWorld::walled_room(int width, int height, std::string room_name, const Registry& registry) {
  GridWorld w(width, height, registry);
  for (int x = 0; x < width; ++x) {
    w.set_wall({x, 0}, true);
    w.set_wall({x, height - 1}, true);
  }
  for (int y = 0; y < height; ++y) {
    w.set_wall({0, y}, true);
    w.set_wall({width - 1, y}, true);
  }
  w.add_room({1, 1, width - 2, height - 2}, std::move(room_name));
  w.set_agent({1, 1}, Heading::East);
  return w;
}

std::optional<ObjectId> GridWorld::find_object(std::string_view name) const {
  auto it = object_names_.find(std::string(name));
  if (it == object_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<FurnitureId> GridWorld::find_furniture(std::string_view name) const {
  auto it = furniture_names_.find(std::string(name));
  if (it == furniture_names_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> GridWorld::find_room(std::string_view name) const {
  for (const auto& r : rooms_) {
    if (r.name == name) return r.id;
  }
  return std::nullopt;
}

std::optional<Pos> GridWorld::facing_cell() const {
  const Pos p = offset(agent_.pos, agent_.heading);
  if (!in_bounds(p)) return std::nullopt;
  return p;
}

std::optional<Pos> GridWorld::object_cell(ObjectId id) const {
  const Placement* p = &objects_[static_cast<std::size_t>(id)].placement;
  for (int depth = 0; depth < 4; ++depth) {
    switch (p->kind) {
      case Placement::Kind::Grid: return Pos{p->x, p->y};
      case Placement::Kind::Within: p = &objects_[static_cast<std::size_t>(p->container)].placement; break;
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

bool GridWorld::is_free_floor(Pos p) const {
  if (!in_bounds(p)) return false;
  const Cell& c = cell(p);
  return !c.wall && c.furniture == kNoId;
}

bool GridWorld::slot_is_solid(Pos p, int z) const {
  const Cell& c = cell(p);
  if (c.furniture == kNoId) return false;
  const auto& f = furniture(c.furniture);
  return !f.container && z < f.height;
}

bool GridWorld::slot_is_interior(Pos p, int z) const {
  const Cell& c = cell(p);
  if (c.furniture == kNoId) return false;
  const auto& f = furniture(c.furniture);
  return f.container && z < f.height;
}

void GridWorld::set_wall(Pos p, bool wall) {
  Cell& c = mut_cell(p);
  c.wall = wall;
  if (wall) {
    c.door = kNoId;
    c.room = kNoId;
  }
}

int GridWorld::add_door(Pos p) {
  const int id = static_cast<int>(doors_.size());
  doors_.push_back({id, p});
  Cell& c = mut_cell(p);
  c.wall = false;
  c.door = static_cast<std::int16_t>(id);
  return id;
}

int GridWorld::add_room(const Rect& bounds, std::string name) {
  const int id = static_cast<int>(rooms_.size());
  const auto* floor_cat = registry_->find_furniture("floor");
  if (floor_cat == nullptr) throw std::logic_error("registry has no floor category");

  FurnitureInstance floor;
  floor.id = static_cast<FurnitureId>(furniture_.size());
  floor.category = floor_cat->id;
  floor.name = "floor_" + std::to_string(id);
  floor.anchor = {bounds.x0, bounds.y0};
  floor.width = bounds.width();
  floor.depth = bounds.height();
  floor.height = 0;
  floor.is_floor = true;
  floor.room = id;
  furniture_names_[floor.name] = floor.id;
  furniture_.push_back(floor);

  rooms_.push_back({id, bounds, std::move(name), floor.id});
  for (int y = bounds.y0; y <= bounds.y1; ++y) {
    for (int x = bounds.x0; x <= bounds.x1; ++x) mut_cell({x, y}).room = static_cast<std::int16_t>(id);
  }
  return id;
}

void GridWorld::set_room_name(int room, std::string name) { rooms_.at(static_cast<std::size_t>(room)).name = std::move(name); }

void GridWorld::assign_cell_room(Pos p, int room) { mut_cell(p).room = static_cast<std::int16_t>(room); }

ObjectId GridWorld::add_object(int category, std::string name) {
  ObjectInstance o;
  o.id = static_cast<ObjectId>(objects_.size());
  o.category = category;
  o.name = std::move(name);
  object_names_[o.name] = o.id;
  objects_.push_back(std::move(o));
  return objects_.back().id;
}

FurnitureId GridWorld::place_furniture(const FurnitureSpec& spec, Pos anchor, WorldError* error) {
  auto fail = [&](WorldError e) {
    if (error != nullptr) *error = e;
    return kNoId;
  };
  const auto& cat = registry_->furniture(spec.category);
  const int w = spec.rotated ? cat.depth : cat.width;
  const int d = spec.rotated ? cat.width : cat.depth;
  const Rect fp{anchor.x, anchor.y, anchor.x + w - 1, anchor.y + d - 1};
  if (!in_bounds({fp.x0, fp.y0}) || !in_bounds({fp.x1, fp.y1})) return fail(WorldError::OutOfBounds);

  const int room = cell({fp.x0, fp.y0}).room;
  const Room* owner = room == kNoId ? nullptr : &rooms_[static_cast<std::size_t>(room)];
  for (int y = fp.y0; y <= fp.y1; ++y) {
    for (int x = fp.x0; x <= fp.x1; ++x) {
      const Cell& c = cell(x, y);
      if (c.wall || c.door != kNoId || c.room != room || owner == nullptr || !owner->bounds.contains({x, y})) {
        return fail(WorldError::SpansRooms);
      }
    }
  }
  for (int y = fp.y0; y <= fp.y1; ++y) {
    for (int x = fp.x0; x <= fp.x1; ++x) {
      const Cell& c = cell(x, y);
      if (c.furniture != kNoId || agent_.pos == Pos{x, y}) return fail(WorldError::Overlap);
      for (auto s : c.slots) {
        if (s != kNoId) return fail(WorldError::Overlap);
      }
    }
  }

  FurnitureInstance f;
  f.id = static_cast<FurnitureId>(furniture_.size());
  f.category = spec.category;
  f.name = spec.name.empty() ? cat.name + "_" + std::to_string(f.id) : spec.name;
  f.anchor = anchor;
  f.width = w;
  f.depth = d;
  f.height = cat.height;
  f.container = cat.has(kFurnContainer);
  f.openable = cat.has(kFurnOpenable);
  f.room = room;
  for (int y = fp.y0; y <= fp.y1; ++y) {
    for (int x = fp.x0; x <= fp.x1; ++x) mut_cell({x, y}).furniture = static_cast<std::int16_t>(f.id);
  }
  furniture_names_[f.name] = f.id;
  furniture_.push_back(std::move(f));
  if (error != nullptr) *error = WorldError::Ok;
  return furniture_.back().id;
}

void GridWorld::clear_slot_of(ObjectId id) {
  auto& o = objects_[static_cast<std::size_t>(id)];
  switch (o.placement.kind) {
    case Placement::Kind::Grid: {
      auto& slot = mut_cell({o.placement.x, o.placement.y}).slots[static_cast<std::size_t>(o.placement.z)];
      if (slot == id) slot = kNoId;
      break;
    }
    case Placement::Kind::Carried: {
      auto& c = agent_.carrying;
      c.erase(std::remove(c.begin(), c.end(), id), c.end());
      break;
    }
    default: break;
  }
}

WorldError GridWorld::place_object(ObjectId id, int x, int y, int z) {
  if (id < 0 || static_cast<std::size_t>(id) >= objects_.size()) return WorldError::NoSuchEntity;
  if (!in_bounds({x, y}) || z < 0 || z >= kLevels) return WorldError::OutOfBounds;
  const Cell& c = cell(x, y);
  if (c.wall) return WorldError::WallCell;
  const auto slot = c.slots[static_cast<std::size_t>(z)];
  if (slot == id) return WorldError::Ok;
  if (slot != kNoId) return WorldError::SlotOccupied;
  if (slot_is_solid({x, y}, z)) return WorldError::SolidFurniture;
  clear_slot_of(id);
  objects_[static_cast<std::size_t>(id)].placement = Placement::grid(x, y, z);
  mut_cell({x, y}).slots[static_cast<std::size_t>(z)] = static_cast<std::int16_t>(id);
  return WorldError::Ok;
}

void GridWorld::carry_object(ObjectId id) {
  auto& o = objects_[static_cast<std::size_t>(id)];
  if (o.placement.kind == Placement::Kind::Carried) return;
  clear_slot_of(id);
  o.placement = Placement::carried();
  agent_.carrying.push_back(id);
}

void GridWorld::put_within(ObjectId id, ObjectId container) {
  clear_slot_of(id);
  objects_[static_cast<std::size_t>(id)].placement = Placement::within(container);
}

void GridWorld::set_object_state(ObjectId id, AbsState s, bool on) { objects_[static_cast<std::size_t>(id)].states.set(s, on); }

void GridWorld::set_furniture_state(FurnitureId id, AbsState s, bool on) { furniture_[static_cast<std::size_t>(id)].states.set(s, on); }

void GridWorld::set_agent(Pos pos, Heading heading) {
  agent_.pos = pos;
  agent_.heading = heading;
}

void GridWorld::restore_placement(ObjectId id, const Placement& p) {
  auto& o = objects_.at(static_cast<std::size_t>(id));
  o.placement = p;
  if (p.kind == Placement::Kind::Grid) {
    if (!in_bounds({p.x, p.y}) || p.z < 0 || p.z >= kLevels) throw std::out_of_range("placement out of bounds");
    mut_cell({p.x, p.y}).slots[static_cast<std::size_t>(p.z)] = static_cast<std::int16_t>(id);
  }
}

void GridWorld::restore_carrying(std::vector<ObjectId> carrying) { agent_.carrying = std::move(carrying); }

std::uint64_t GridWorld::state_hash() const {
  Hasher h;
  h.add(static_cast<std::uint64_t>(width_));
  h.add(static_cast<std::uint64_t>(height_));
  for (const auto& c : cells_) {
    h.add(static_cast<std::uint64_t>(c.wall) | (static_cast<std::uint64_t>(static_cast<std::uint16_t>(c.door)) << 8) |
          (static_cast<std::uint64_t>(static_cast<std::uint16_t>(c.room)) << 24));
  }
  for (const auto& f : furniture_) {
    h.add(static_cast<std::uint64_t>(f.category));
    h.add(static_cast<std::uint64_t>(f.anchor.x) | (static_cast<std::uint64_t>(f.anchor.y) << 16) |
          (static_cast<std::uint64_t>(f.width) << 32) | (static_cast<std::uint64_t>(f.depth) << 48));
    h.add(f.states.bits());
  }
  for (const auto& o : objects_) {
    h.add(static_cast<std::uint64_t>(o.category));
    const auto& p = o.placement;
    h.add(static_cast<std::uint64_t>(p.kind) | (static_cast<std::uint64_t>(p.x) << 8) | (static_cast<std::uint64_t>(p.y) << 24) |
          (static_cast<std::uint64_t>(p.z) << 40) | (static_cast<std::uint64_t>(static_cast<std::uint16_t>(p.container)) << 48));
    h.add(o.states.bits());
  }
  h.add(static_cast<std::uint64_t>(agent_.pos.x) | (static_cast<std::uint64_t>(agent_.pos.y) << 16) |
        (static_cast<std::uint64_t>(agent_.heading) << 32));
  h.add(agent_.carrying.size());
  for (auto id : agent_.carrying) h.add(static_cast<std::uint64_t>(id));
  h.add(step_count_);
  return h.value();
}

std::optional<std::string> GridWorld::check_invariants() const {
  std::ostringstream err;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Cell& c = cell(x, y);
      if (c.wall && (c.furniture != kNoId || c.door != kNoId)) {
        err << "wall cell (" << x << "," << y << ") holds furniture or door";
        return err.str();
      }
      for (int z = 0; z < kLevels; ++z) {
        const auto s = c.slots[static_cast<std::size_t>(z)];
        if (s == kNoId) continue;
        if (c.wall) {
          err << "wall cell (" << x << "," << y << ") holds an object";
          return err.str();
        }
        const auto& o = objects_.at(static_cast<std::size_t>(s));
        if (o.placement != Placement::grid(x, y, z)) {
          err << "slot (" << x << "," << y << "," << z << ") names " << o.name << " placed elsewhere";
          return err.str();
        }
        if (slot_is_solid({x, y}, z)) {
          err << o.name << " sits inside solid furniture";
          return err.str();
        }
      }
    }
  }
  for (const auto& o : objects_) {
    const auto& p = o.placement;
    const auto& cat = category_of(o);
    if (!o.states.subset_of(cat.capable)) return o.name + " holds a state its category cannot";
    switch (p.kind) {
      case Placement::Kind::Grid:
        if (!in_bounds({p.x, p.y}) || cell(p.x, p.y).slots[static_cast<std::size_t>(p.z)] != o.id) {
          return o.name + " grid placement not mirrored in its cell";
        }
        break;
      case Placement::Kind::Carried:
        if (std::count(agent_.carrying.begin(), agent_.carrying.end(), o.id) != 1) {
          return o.name + " carried but not in the agent's hand";
        }
        break;
      case Placement::Kind::Within: {
        if (p.container < 0 || static_cast<std::size_t>(p.container) >= objects_.size()) return o.name + " within a missing container";
        const auto& holder = objects_[static_cast<std::size_t>(p.container)];
        if (!category_of(holder).has(kContainer)) return o.name + " within a non-container";
        if (holder.placement.kind == Placement::Kind::Within) return o.name + " nested two containers deep";
        break;
      }
      case Placement::Kind::Nowhere: return o.name + " was never placed";
    }
  }
  for (auto id : agent_.carrying) {
    if (objects_.at(static_cast<std::size_t>(id)).placement.kind != Placement::Kind::Carried) {
      return "agent holds an object that is not marked carried";
    }
  }
  for (const auto& f : furniture_) {
    if (!f.states.subset_of(category_of(f).capable)) return f.name + " holds a state its category cannot";
    if (f.is_floor) continue;
    const Rect fp = f.footprint();
    for (int y = fp.y0; y <= fp.y1; ++y) {
      for (int x = fp.x0; x <= fp.x1; ++x) {
        if (!in_bounds({x, y})) return f.name + " footprint out of bounds";
        const Cell& c = cell(x, y);
        if (c.furniture != f.id) return f.name + " footprint not mirrored in cells";
        if (c.room != f.room || c.door != kNoId || !rooms_.at(static_cast<std::size_t>(f.room)).bounds.contains({x, y})) {
          return f.name + " footprint leaves its room";
        }
      }
    }
  }
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const Cell& c = cell(x, y);
      if (c.furniture == kNoId) continue;
      if (!furniture_.at(static_cast<std::size_t>(c.furniture)).footprint().contains({x, y})) {
        err << "cell (" << x << "," << y << ") claims furniture outside its footprint";
        return err.str();
      }
    }
  }
  if (!in_bounds(agent_.pos) || cell(agent_.pos).wall || cell(agent_.pos).furniture != kNoId) {
    return std::string("agent stands on a wall, furniture or outside the grid");
  }
  return std::nullopt;
}

}  // namespace gridhouse
