#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gridhouse {

// Absolute (unary) states, in observation-channel order.
enum class AbsState : std::uint8_t { Cooked, Dusty, Frozen, Opened, Sliced, Soaked, Stained, ToggledOn };
inline constexpr int kNumAbsStates = 8;

std::string_view to_string(AbsState s);

class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint8_t bits) : bits_(bits) {}

  constexpr bool has(AbsState s) const { return (bits_ >> static_cast<int>(s)) & 1U; }
  constexpr void set(AbsState s, bool on) {
    const auto mask = static_cast<std::uint8_t>(1U << static_cast<int>(s));
    bits_ = on ? static_cast<std::uint8_t>(bits_ | mask) : static_cast<std::uint8_t>(bits_ & ~mask);
  }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(StateSet other) const { return (bits_ & ~other.bits_) == 0; }

  friend constexpr bool operator==(StateSet, StateSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

// Object capability flags.
enum ObjectCap : std::uint32_t {
  kMovable = 1U << 0,
  kOpenable = 1U << 1,
  kContainer = 1U << 2,
  kSliceable = 1U << 3,
  kSoakable = 1U << 4,
  kCookable = 1U << 5,
  kToggleable = 1U << 6,
  kFreezable = 1U << 7,
  kDustable = 1U << 8,
  kStainable = 1U << 9,
  kCleaningTool = 1U << 10,
  kSoap = 1U << 11,
  kSlicer = 1U << 12,
  kBroom = 1U << 13,
};

// Furniture capability flags.
enum FurnitureCap : std::uint32_t {
  kFurnContainer = 1U << 0,
  kFurnOpenable = 1U << 1,
  kFurnToggleable = 1U << 2,
  kFurnDustable = 1U << 3,
  kFurnStainable = 1U << 4,
  kWaterSource = 1U << 5,
  kFreezer = 1U << 6,
  kHeatSource = 1U << 7,
  kFloor = 1U << 8,
};

// Object-targeted verbs of the Cartesian action space, in their fixed enumeration order.
enum class CartesianVerb : std::uint8_t { Pickup, Drop, DropIn, Open, Close, Toggle, Cook, Slice };
inline constexpr int kNumCartesianVerbs = 8;

std::string_view to_string(CartesianVerb v);
CartesianVerb parse_cartesian_verb(std::string_view name);

struct ObjectCategory {
  int id = 0;  // observation code, from ids.lock (>= 1)
  std::string name;
  std::uint32_t caps = 0;
  StateSet capable;  // absolute states this category may hold
  std::vector<CartesianVerb> verbs;

  bool has(ObjectCap c) const { return (caps & c) != 0; }
};

struct FurnitureCategory {
  int id = 0;  // observation code, from ids.lock (>= kFirstFurnitureCode)
  std::string name;
  int width = 1;
  int depth = 1;
  int height = 1;  // occupied z-levels starting at 0; 0 only for the floor
  std::uint32_t caps = 0;
  StateSet capable;
  std::vector<CartesianVerb> verbs;

  bool has(FurnitureCap c) const { return (caps & c) != 0; }
};

// Furniture observation codes 1..5 are reserved: wall, then agent heading N/E/S/W.
inline constexpr int kWallCode = 1;
inline constexpr int kAgentCodeBase = 2;
inline constexpr int kFirstFurnitureCode = 6;

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Registry {
 public:
  // Loads registry.json and ids.lock from a data directory.
  static Registry load(const std::filesystem::path& data_dir);
  static Registry from_json_text(std::string_view registry_json, std::string_view ids_lock);

  // Process-wide registry loaded from data_dir() on first use.
  static const Registry& builtin();

  const ObjectCategory* find_object(std::string_view name) const;
  const FurnitureCategory* find_furniture(std::string_view name) const;

  const ObjectCategory& object(int id) const;
  const FurnitureCategory& furniture(int id) const;

  const std::vector<ObjectCategory>& objects() const { return objects_; }
  const std::vector<FurnitureCategory>& furniture_categories() const { return furniture_; }

  int max_object_code() const { return max_object_code_; }
  int max_furniture_code() const { return max_furniture_code_; }

  // ids.lock text for the current category set (existing ids kept, new ones appended).
  std::string render_ids_lock() const;

 private:
  std::vector<ObjectCategory> objects_;
  std::vector<FurnitureCategory> furniture_;
  std::unordered_map<std::string, int> object_index_;
  std::unordered_map<std::string, int> furniture_index_;
  std::vector<int> object_by_code_;
  std::vector<int> furniture_by_code_;
  int max_object_code_ = 0;
  int max_furniture_code_ = 0;
};

// GRIDHOUSE_DATA if set, else the directory baked in at build time.
std::filesystem::path data_dir();

}  // namespace gridhouse
