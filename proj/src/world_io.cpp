#include "gridhouse/world_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace gridhouse {
namespace {

using Json = nlohmann::ordered_json;

Json states_to_json(StateSet s) {
  Json out = Json::array();
  for (int i = 0; i < kNumAbsStates; ++i) {
    if (s.has(static_cast<AbsState>(i))) out.push_back(std::string(to_string(static_cast<AbsState>(i))));
  }
  return out;
}

StateSet states_from_json(const Json& j) {
  StateSet s;
  for (const auto& item : j) {
    const auto name = item.get<std::string>();
    bool found = false;
    for (int i = 0; i < kNumAbsStates; ++i) {
      if (to_string(static_cast<AbsState>(i)) == name) {
        s.set(static_cast<AbsState>(i), true);
        found = true;
      }
    }
    if (!found) throw SnapshotError("unknown state '" + name + "'");
  }
  return s;
}

Heading heading_from(const std::string& s) {
  for (int i = 0; i < 4; ++i) {
    if (to_string(static_cast<Heading>(i)) == s) return static_cast<Heading>(i);
  }
  throw SnapshotError("bad heading '" + s + "'");
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string save_world(const GridWorld& w) {
  Json doc;
  doc["format"] = "gridhouse-world";
  doc["version"] = kWorldFormatVersion;
  doc["width"] = w.width();
  doc["height"] = w.height();
  Json rows = Json::array();
  for (int y = 0; y < w.height(); ++y) {
    std::string row;
    for (int x = 0; x < w.width(); ++x) {
      const Cell& c = w.cell(x, y);
      row.push_back(c.wall ? '#' : (c.door != kNoId ? '+' : '.'));
    }
    rows.push_back(row);
  }
  doc["cells"] = rows;

  Json rooms = Json::array();
  for (const auto& r : w.rooms()) {
    rooms.push_back({{"id", r.id}, {"name", r.name}, {"bounds", {r.bounds.x0, r.bounds.y0, r.bounds.x1, r.bounds.y1}}});
  }
  doc["rooms"] = rooms;

  Json doors = Json::array();
  for (const auto& d : w.doors()) doors.push_back({{"id", d.id}, {"pos", {d.pos.x, d.pos.y}}, {"room", w.cell(d.pos).room}});
  doc["doors"] = doors;

  Json furniture = Json::array();
  for (const auto& f : w.furniture()) {
    Json e;
    e["name"] = f.name;
    e["category"] = w.category_of(f).name;
    if (f.is_floor) {
      e["floor_of"] = f.room;
    } else {
      e["anchor"] = {f.anchor.x, f.anchor.y};
      e["size"] = {f.width, f.depth};
    }
    e["states"] = states_to_json(f.states);
    furniture.push_back(e);
  }
  doc["furniture"] = furniture;

  Json objects = Json::array();
  for (const auto& o : w.objects()) {
    Json e;
    e["name"] = o.name;
    e["category"] = w.category_of(o).name;
    const auto& p = o.placement;
    switch (p.kind) {
      case Placement::Kind::Grid: e["placement"] = {{"kind", "grid"}, {"pos", {p.x, p.y, p.z}}}; break;
      case Placement::Kind::Carried: e["placement"] = {{"kind", "carried"}}; break;
      case Placement::Kind::Within: e["placement"] = {{"kind", "within"}, {"container", w.object(p.container).name}}; break;
      case Placement::Kind::Nowhere: e["placement"] = {{"kind", "nowhere"}}; break;
    }
    e["states"] = states_to_json(o.states);
    objects.push_back(e);
  }
  doc["objects"] = objects;

  Json carrying = Json::array();
  for (auto id : w.agent().carrying) carrying.push_back(w.object(id).name);
  doc["agent"] = {{"pos", {w.agent().pos.x, w.agent().pos.y}},
                  {"heading", std::string(to_string(w.agent().heading))},
                  {"carrying", carrying}};
  doc["step"] = w.step_count();
  doc["rng"] = hex64(w.rng().state());
  return doc.dump(1);
}

GridWorld load_world(std::string_view text, const Registry& registry) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SnapshotError(std::string("world snapshot: ") + e.what());
  }
  if (doc.value("format", "") != "gridhouse-world") throw SnapshotError("not a gridhouse world snapshot");
  if (doc.value("version", 0) != kWorldFormatVersion) throw SnapshotError("unsupported world snapshot version");
  try {
    GridWorld w(doc.at("width").get<int>(), doc.at("height").get<int>(), registry);
    const auto& rows = doc.at("cells");
    for (int y = 0; y < w.height(); ++y) {
      const auto row = rows.at(static_cast<std::size_t>(y)).get<std::string>();
      for (int x = 0; x < w.width(); ++x) {
        if (row.at(static_cast<std::size_t>(x)) == '#') w.set_wall({x, y}, true);
      }
    }
    const auto& rooms = doc.at("rooms");
    for (const auto& f : doc.at("furniture")) {
      if (f.contains("floor_of")) {
        const auto& r = rooms.at(f["floor_of"].get<std::size_t>());
        const auto b = r.at("bounds").get<std::vector<int>>();
        const int room = w.add_room({b.at(0), b.at(1), b.at(2), b.at(3)}, r.at("name").get<std::string>());
        const FurnitureId fid = w.rooms()[static_cast<std::size_t>(room)].floor;
        const StateSet s = states_from_json(f.at("states"));
        for (int i = 0; i < kNumAbsStates; ++i) w.set_furniture_state(fid, static_cast<AbsState>(i), s.has(static_cast<AbsState>(i)));
      }
    }
    for (const auto& d : doc.at("doors")) {
      const auto p = d.at("pos").get<std::vector<int>>();
      w.add_door({p.at(0), p.at(1)});
      w.assign_cell_room({p.at(0), p.at(1)}, d.at("room").get<int>());
    }
    const auto& agent = doc.at("agent");
    const auto apos = agent.at("pos").get<std::vector<int>>();
    w.set_agent({apos.at(0), apos.at(1)}, heading_from(agent.at("heading").get<std::string>()));

    for (const auto& f : doc.at("furniture")) {
      if (f.contains("floor_of")) continue;
      const auto* cat = registry.find_furniture(f.at("category").get<std::string>());
      if (cat == nullptr) throw SnapshotError("unknown furniture category in snapshot");
      const auto a = f.at("anchor").get<std::vector<int>>();
      const auto sz = f.at("size").get<std::vector<int>>();
      FurnitureSpec spec{cat->id, f.at("name").get<std::string>(), sz.at(0) != cat->width || sz.at(1) != cat->depth};
      WorldError err = WorldError::Ok;
      const FurnitureId id = w.place_furniture(spec, {a.at(0), a.at(1)}, &err);
      if (id == kNoId) throw SnapshotError("furniture " + spec.name + ": " + std::string(to_string(err)));
      const StateSet s = states_from_json(f.at("states"));
      for (int i = 0; i < kNumAbsStates; ++i) w.set_furniture_state(id, static_cast<AbsState>(i), s.has(static_cast<AbsState>(i)));
    }
    for (const auto& o : doc.at("objects")) {
      const auto* cat = registry.find_object(o.at("category").get<std::string>());
      if (cat == nullptr) throw SnapshotError("unknown object category in snapshot");
      const ObjectId id = w.add_object(cat->id, o.at("name").get<std::string>());
      const StateSet s = states_from_json(o.at("states"));
      for (int i = 0; i < kNumAbsStates; ++i) w.set_object_state(id, static_cast<AbsState>(i), s.has(static_cast<AbsState>(i)));
    }
    for (const auto& o : doc.at("objects")) {
      const ObjectId id = *w.find_object(o.at("name").get<std::string>());
      const auto& p = o.at("placement");
      const auto kind = p.at("kind").get<std::string>();
      if (kind == "grid") {
        const auto pos = p.at("pos").get<std::vector<int>>();
        w.restore_placement(id, Placement::grid(pos.at(0), pos.at(1), pos.at(2)));
      } else if (kind == "carried") {
        w.restore_placement(id, Placement::carried());
      } else if (kind == "within") {
        const auto holder = w.find_object(p.at("container").get<std::string>());
        if (!holder) throw SnapshotError("unknown container in snapshot");
        w.restore_placement(id, Placement::within(*holder));
      }
    }
    std::vector<ObjectId> carrying;
    for (const auto& name : agent.at("carrying")) {
      const auto id = w.find_object(name.get<std::string>());
      if (!id) throw SnapshotError("agent carries unknown object");
      carrying.push_back(*id);
    }
    w.restore_carrying(std::move(carrying));
    w.set_step_count(doc.at("step").get<std::uint64_t>());
    w.set_rng(Rng(std::stoull(doc.at("rng").get<std::string>(), nullptr, 16)));
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw SnapshotError(std::string("world snapshot: ") + e.what());
  }
}

}  // namespace gridhouse
