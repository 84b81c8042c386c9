#include "gridhouse/registry.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#ifndef GRIDHOUSE_DEFAULT_DATA_DIR
#define GRIDHOUSE_DEFAULT_DATA_DIR "data"
#endif

namespace gridhouse {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kNumAbsStates> kStateNames = {
    "Cooked", "Dusty", "Frozen", "Opened", "Sliced", "Soaked", "Stained", "ToggledOn"};

constexpr std::array<std::string_view, kNumCartesianVerbs> kVerbNames = {
    "pickup", "drop", "drop_in", "open", "close", "toggle", "cook", "slice"};

struct CapName {
  std::string_view name;
  std::uint32_t bit;
};

constexpr std::array<CapName, 14> kObjectCaps = {{
    {"movable", kMovable},
    {"openable", kOpenable},
    {"container", kContainer},
    {"sliceable", kSliceable},
    {"soakable", kSoakable},
    {"cookable", kCookable},
    {"toggleable", kToggleable},
    {"freezable", kFreezable},
    {"dustable", kDustable},
    {"stainable", kStainable},
    {"cleaning_tool", kCleaningTool},
    {"soap", kSoap},
    {"slicer", kSlicer},
    {"broom", kBroom},
}};

constexpr std::array<CapName, 9> kFurnitureCaps = {{
    {"container", kFurnContainer},
    {"openable", kFurnOpenable},
    {"toggleable", kFurnToggleable},
    {"dustable", kFurnDustable},
    {"stainable", kFurnStainable},
    {"water_source", kWaterSource},
    {"freezer", kFreezer},
    {"heat_source", kHeatSource},
    {"floor", kFloor},
}};

template <std::size_t N>
std::uint32_t parse_caps(const json& list, const std::array<CapName, N>& table, const std::string& who) {
  std::uint32_t caps = 0;
  for (const auto& item : list) {
    const auto name = item.get<std::string>();
    auto it = std::find_if(table.begin(), table.end(), [&](const CapName& c) { return c.name == name; });
    if (it == table.end()) throw RegistryError("unknown capability '" + name + "' on " + who);
    caps |= it->bit;
  }
  return caps;
}

StateSet object_states(std::uint32_t caps) {
  StateSet s;
  s.set(AbsState::Cooked, caps & kCookable);
  s.set(AbsState::Dusty, caps & kDustable);
  s.set(AbsState::Frozen, caps & kFreezable);
  s.set(AbsState::Opened, caps & kOpenable);
  s.set(AbsState::Sliced, caps & kSliceable);
  s.set(AbsState::Soaked, caps & kSoakable);
  s.set(AbsState::Stained, caps & kStainable);
  s.set(AbsState::ToggledOn, caps & kToggleable);
  return s;
}

StateSet furniture_states(std::uint32_t caps) {
  StateSet s;
  s.set(AbsState::Dusty, caps & kFurnDustable);
  s.set(AbsState::Opened, caps & kFurnOpenable);
  s.set(AbsState::Stained, caps & kFurnStainable);
  s.set(AbsState::ToggledOn, caps & kFurnToggleable);
  return s;
}

std::vector<CartesianVerb> default_object_verbs(std::uint32_t caps) {
  std::vector<CartesianVerb> v;
  if (caps & kMovable) {
    v.push_back(CartesianVerb::Pickup);
    v.push_back(CartesianVerb::Drop);
    v.push_back(CartesianVerb::DropIn);
  }
  if (caps & kOpenable) {
    v.push_back(CartesianVerb::Open);
    v.push_back(CartesianVerb::Close);
  }
  if (caps & kToggleable) v.push_back(CartesianVerb::Toggle);
  if (caps & kCookable) v.push_back(CartesianVerb::Cook);
  if (caps & kSliceable) v.push_back(CartesianVerb::Slice);
  return v;
}

std::vector<CartesianVerb> default_furniture_verbs(std::uint32_t caps) {
  std::vector<CartesianVerb> v;
  if (caps & kFurnOpenable) {
    v.push_back(CartesianVerb::Open);
    v.push_back(CartesianVerb::Close);
  }
  if (caps & kFurnToggleable) v.push_back(CartesianVerb::Toggle);
  return v;
}

std::vector<CartesianVerb> parse_verbs(const json& list) {
  std::vector<CartesianVerb> v;
  for (const auto& item : list) v.push_back(parse_cartesian_verb(item.get<std::string>()));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct LockEntry {
  std::string kind;
  std::string name;
  int id;
};

std::vector<LockEntry> parse_lock(std::string_view text) {
  std::vector<LockEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "version") continue;
    LockEntry e;
    e.kind = kind;
    if (!(ls >> e.name >> e.id) || (kind != "object" && kind != "furniture")) {
      throw RegistryError("ids.lock line " + std::to_string(lineno) + ": malformed entry");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw RegistryError("cannot open " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(AbsState s) { return kStateNames[static_cast<std::size_t>(s)]; }

std::string_view to_string(CartesianVerb v) { return kVerbNames[static_cast<std::size_t>(v)]; }

CartesianVerb parse_cartesian_verb(std::string_view name) {
  for (std::size_t i = 0; i < kVerbNames.size(); ++i) {
    if (kVerbNames[i] == name) return static_cast<CartesianVerb>(i);
  }
  throw RegistryError("unknown cartesian verb '" + std::string(name) + "'");
}

Registry Registry::load(const std::filesystem::path& dir) {
  return from_json_text(read_file(dir / "registry.json"), read_file(dir / "ids.lock"));
}

Registry Registry::from_json_text(std::string_view registry_json, std::string_view ids_lock) {
  Registry r;
  json doc;
  try {
    doc = json::parse(registry_json);
  } catch (const json::parse_error& e) {
    throw RegistryError(std::string("registry.json: ") + e.what());
  }
  std::unordered_map<std::string, int> object_ids;
  std::unordered_map<std::string, int> furniture_ids;
  for (const auto& e : parse_lock(ids_lock)) {
    auto& table = e.kind == "object" ? object_ids : furniture_ids;
    if (e.kind == "furniture" && e.id < kFirstFurnitureCode) {
      throw RegistryError("ids.lock: furniture id for '" + e.name + "' collides with reserved codes");
    }
    table[e.name] = e.id;
  }

  for (const auto& o : doc.at("objects")) {
    ObjectCategory c;
    c.name = o.at("name").get<std::string>();
    c.caps = parse_caps(o.value("caps", json::array()), kObjectCaps, c.name);
    c.capable = object_states(c.caps);
    c.verbs = o.contains("cartesian") ? parse_verbs(o["cartesian"]) : default_object_verbs(c.caps);
    auto it = object_ids.find(c.name);
    if (it == object_ids.end()) throw RegistryError("object '" + c.name + "' missing from ids.lock");
    c.id = it->second;
    if (r.object_index_.count(c.name)) throw RegistryError("duplicate object '" + c.name + "'");
    r.object_index_[c.name] = static_cast<int>(r.objects_.size());
    r.max_object_code_ = std::max(r.max_object_code_, c.id);
    r.objects_.push_back(std::move(c));
  }
  for (const auto& f : doc.at("furniture")) {
    FurnitureCategory c;
    c.name = f.at("name").get<std::string>();
    c.caps = parse_caps(f.value("caps", json::array()), kFurnitureCaps, c.name);
    const auto size = f.value("size", std::vector<int>{1, 1});
    if (size.size() != 2 || size[0] < 1 || size[1] < 1) throw RegistryError("bad size for " + c.name);
    c.width = size[0];
    c.depth = size[1];
    c.height = f.value("height", 1);
    const bool floor = (c.caps & kFloor) != 0;
    if (floor ? c.height != 0 : (c.height < 1 || c.height > 3)) {
      throw RegistryError("bad height for " + c.name);
    }
    c.capable = furniture_states(c.caps);
    c.verbs = f.contains("cartesian") ? parse_verbs(f["cartesian"]) : default_furniture_verbs(c.caps);
    auto it = furniture_ids.find(c.name);
    if (it == furniture_ids.end()) throw RegistryError("furniture '" + c.name + "' missing from ids.lock");
    c.id = it->second;
    if (r.furniture_index_.count(c.name)) throw RegistryError("duplicate furniture '" + c.name + "'");
    r.furniture_index_[c.name] = static_cast<int>(r.furniture_.size());
    r.max_furniture_code_ = std::max(r.max_furniture_code_, c.id);
    r.furniture_.push_back(std::move(c));
  }

  r.object_by_code_.assign(static_cast<std::size_t>(r.max_object_code_ + 1), -1);
  for (std::size_t i = 0; i < r.objects_.size(); ++i) {
    auto& slot = r.object_by_code_[static_cast<std::size_t>(r.objects_[i].id)];
    if (slot != -1) throw RegistryError("ids.lock: duplicate object id " + std::to_string(r.objects_[i].id));
    slot = static_cast<int>(i);
  }
  r.furniture_by_code_.assign(static_cast<std::size_t>(r.max_furniture_code_ + 1), -1);
  for (std::size_t i = 0; i < r.furniture_.size(); ++i) {
    auto& slot = r.furniture_by_code_[static_cast<std::size_t>(r.furniture_[i].id)];
    if (slot != -1) throw RegistryError("ids.lock: duplicate furniture id " + std::to_string(r.furniture_[i].id));
    slot = static_cast<int>(i);
  }
  return r;
}

const Registry& Registry::builtin() {
  static const Registry registry = Registry::load(data_dir());
  return registry;
}

const ObjectCategory* Registry::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  return it == object_index_.end() ? nullptr : &objects_[static_cast<std::size_t>(it->second)];
}

const FurnitureCategory* Registry::find_furniture(std::string_view name) const {
  auto it = furniture_index_.find(std::string(name));
  return it == furniture_index_.end() ? nullptr : &furniture_[static_cast<std::size_t>(it->second)];
}

const ObjectCategory& Registry::object(int id) const {
  return objects_[static_cast<std::size_t>(object_by_code_.at(static_cast<std::size_t>(id)))];
}

const FurnitureCategory& Registry::furniture(int id) const {
  return furniture_[static_cast<std::size_t>(furniture_by_code_.at(static_cast<std::size_t>(id)))];
}

std::string Registry::render_ids_lock() const {
  std::ostringstream out;
  out << "# Frozen observation codes per category. Existing lines must never change.\n";
  out << "version 1\n";
  for (const auto& o : objects_) out << "object " << o.name << ' ' << o.id << '\n';
  for (const auto& f : furniture_) out << "furniture " << f.name << ' ' << f.id << '\n';
  return out.str();
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("GRIDHOUSE_DATA"); env != nullptr && *env != '\0') return env;
  return GRIDHOUSE_DEFAULT_DATA_DIR;
}

}  // namespace gridhouse
