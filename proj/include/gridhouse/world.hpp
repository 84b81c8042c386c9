#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gridhouse/registry.hpp"
#include "gridhouse/rng.hpp"

namespace gridhouse {

inline constexpr int kLevels = 3;  // z = 0 bottom, 1 middle, 2 top

using ObjectId = std::int32_t;
using FurnitureId = std::int32_t;
inline constexpr std::int32_t kNoId = -1;

enum class Heading : std::uint8_t { North, East, South, West };

Heading turn_left(Heading h);
Heading turn_right(Heading h);
std::string_view to_string(Heading h);

struct Pos {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(Pos, Pos) = default;
};

Pos offset(Pos p, Heading h, int distance = 1);

// Inclusive axis-aligned rectangle.
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  int area() const { return width() * height(); }
  bool contains(Pos p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

struct Cell {
  bool wall = false;
  std::int16_t door = kNoId;
  std::int16_t furniture = kNoId;  // never the implicit floor entity
  std::array<std::int16_t, kLevels> slots{kNoId, kNoId, kNoId};
  std::int16_t room = kNoId;
};

// Where an object is. Within(container) is used for objects held by a container
// object (teabag in a teapot); such objects occupy no slot. Nowhere only exists
// between add_object and the first placement.
struct Placement {
  enum class Kind : std::uint8_t { Grid, Carried, Within, Nowhere };
  Kind kind = Kind::Grid;
  int x = 0;
  int y = 0;
  int z = 0;
  ObjectId container = kNoId;

  static Placement grid(int x, int y, int z) { return {Kind::Grid, x, y, z, kNoId}; }
  static Placement carried() { return {Kind::Carried, 0, 0, 0, kNoId}; }
  static Placement within(ObjectId c) { return {Kind::Within, 0, 0, 0, c}; }
  friend constexpr bool operator==(const Placement&, const Placement&) = default;
};

struct ObjectInstance {
  ObjectId id = kNoId;
  int category = 0;
  std::string name;
  Placement placement{Placement::Kind::Nowhere, 0, 0, 0, kNoId};
  StateSet states;
};

struct FurnitureInstance {
  FurnitureId id = kNoId;
  int category = 0;
  std::string name;
  Pos anchor;  // top-left footprint cell
  int width = 1;
  int depth = 1;
  int height = 1;  // occupied z-levels [0, height); 0 for a floor
  bool container = false;
  bool openable = false;
  bool is_floor = false;
  int room = kNoId;
  StateSet states;

  Rect footprint() const { return {anchor.x, anchor.y, anchor.x + width - 1, anchor.y + depth - 1}; }
};

struct AgentState {
  Pos pos;
  Heading heading = Heading::North;
  std::vector<ObjectId> carrying;
};

struct Room {
  int id = kNoId;
  Rect bounds;  // interior cells
  std::string name;
  FurnitureId floor = kNoId;
};

struct Door {
  int id = kNoId;
  Pos pos;
};

enum class WorldError : std::uint8_t {
  Ok,
  SlotOccupied,
  OutOfBounds,
  WallCell,
  SolidFurniture,
  Overlap,
  SpansRooms,
  NoSuchEntity,
};

std::string_view to_string(WorldError e);

struct FurnitureSpec {
  int category = 0;
  std::string name;
  bool rotated = false;  // swap registry width/depth
};

// The full mutable scene. Other modules observe it through const accessors and
// mutate it only through the operations below, which keep the occupancy index
// (cell slots <-> object placements) consistent.
class GridWorld {
 public:
  GridWorld(int width, int height, const Registry& registry = Registry::builtin());

  // Perimeter walls around a single room covering the interior.
  static GridWorld walled_room(int width, int height, std::string room_name = "room",
                               const Registry& registry = Registry::builtin());

  int width() const { return width_; }
  int height() const { return height_; }
  const Registry& registry() const { return *registry_; }

  bool in_bounds(Pos p) const { return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_; }
  const Cell& cell(Pos p) const { return cells_[index(p)]; }
  const Cell& cell(int x, int y) const { return cells_[static_cast<std::size_t>(y * width_ + x)]; }

  const std::vector<Room>& rooms() const { return rooms_; }
  const std::vector<Door>& doors() const { return doors_; }
  const std::vector<ObjectInstance>& objects() const { return objects_; }
  const std::vector<FurnitureInstance>& furniture() const { return furniture_; }
  const ObjectInstance& object(ObjectId id) const { return objects_[static_cast<std::size_t>(id)]; }
  const FurnitureInstance& furniture(FurnitureId id) const { return furniture_[static_cast<std::size_t>(id)]; }
  const AgentState& agent() const { return agent_; }
  std::uint64_t step_count() const { return step_count_; }
  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }

  const ObjectCategory& category_of(const ObjectInstance& o) const { return registry_->object(o.category); }
  const FurnitureCategory& category_of(const FurnitureInstance& f) const { return registry_->furniture(f.category); }

  std::optional<ObjectId> find_object(std::string_view name) const;
  std::optional<FurnitureId> find_furniture(std::string_view name) const;
  std::optional<int> find_room(std::string_view name) const;

  // Cell one step along the agent heading, absent at the grid boundary.
  std::optional<Pos> facing_cell() const;

  // Grid cell of an object, following Within links; absent when carried.
  std::optional<Pos> object_cell(ObjectId id) const;

  // Occupancy queries.
  bool is_free_floor(Pos p) const;  // in bounds, not wall, no furniture
  // True if furniture fills slot z at p with solid (non-container) volume.
  bool slot_is_solid(Pos p, int z) const;
  bool slot_is_interior(Pos p, int z) const;  // container volume

  // --- layout construction -------------------------------------------------
  void set_wall(Pos p, bool wall);
  int add_door(Pos p);
  // Adds a room and its implicit floor entity; cells in bounds get room = id.
  int add_room(const Rect& bounds, std::string name);
  void set_room_name(int room, std::string name);
  void assign_cell_room(Pos p, int room);

  // --- entity placement ----------------------------------------------------
  ObjectId add_object(int category, std::string name);
  FurnitureId place_furniture(const FurnitureSpec& spec, Pos anchor, WorldError* error = nullptr);
  WorldError place_object(ObjectId id, int x, int y, int z);
  // Clears the object's slot (or container link) and marks it carried.
  void carry_object(ObjectId id);
  // Moves a carried object from the agent's hand into a container object.
  void put_within(ObjectId id, ObjectId container);

  void set_object_state(ObjectId id, AbsState s, bool on);
  void set_furniture_state(FurnitureId id, AbsState s, bool on);

  void set_agent(Pos pos, Heading heading);
  void set_heading(Heading h) { agent_.heading = h; }
  void set_step_count(std::uint64_t n) { step_count_ = n; }
  void advance_step() { ++step_count_; }
  void set_rng(Rng rng) { rng_ = rng; }

  // Direct placement restore for deserialization (no checks beyond bounds).
  void restore_placement(ObjectId id, const Placement& p);
  void restore_carrying(std::vector<ObjectId> carrying);

  std::uint64_t state_hash() const;

  // Full consistency scan; returns a description of the first violation.
  std::optional<std::string> check_invariants() const;

 private:
  std::size_t index(Pos p) const { return static_cast<std::size_t>(p.y * width_ + p.x); }
  Cell& mut_cell(Pos p) { return cells_[index(p)]; }
  void clear_slot_of(ObjectId id);

  int width_;
  int height_;
  const Registry* registry_;
  std::vector<Cell> cells_;
  std::vector<Room> rooms_;
  std::vector<Door> doors_;
  std::vector<FurnitureInstance> furniture_;
  std::vector<ObjectInstance> objects_;
  std::unordered_map<std::string, ObjectId> object_names_;
  std::unordered_map<std::string, FurnitureId> furniture_names_;
  AgentState agent_;
  std::uint64_t step_count_ = 0;
  Rng rng_{0};
};

std::optional<int> surface_level(const FurnitureInstance& f);

}  // namespace gridhouse
