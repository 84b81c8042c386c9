#include "gridhouse/session.hpp"

#include <fstream>

namespace gridhouse {
namespace {

constexpr AbsState kFurnitureStates[] = {AbsState::Dusty, AbsState::Opened, AbsState::Stained, AbsState::ToggledOn};

Json object_states(StateSet s) {
  Json j = Json::object();
  for (int i = 0; i < kNumAbsStates; ++i) {
    const auto st = static_cast<AbsState>(i);
    j[std::string(to_string(st))] = s.has(st);
  }
  return j;
}

Json furniture_states(StateSet s) {
  Json j = Json::object();
  for (auto st : kFurnitureStates) j[std::string(to_string(st))] = s.has(st);
  return j;
}

Json state_names(StateSet s) {
  Json j = Json::array();
  for (int i = 0; i < kNumAbsStates; ++i) {
    if (s.has(static_cast<AbsState>(i))) j.push_back(std::string(to_string(static_cast<AbsState>(i))));
  }
  return j;
}

Json pos_json(Pos p) { return Json::array({p.x, p.y}); }

Json id_or_null(int id) { return id == kNoId ? Json(nullptr) : Json(id); }

Json placement_json(const Placement& p) {
  Json j;
  switch (p.kind) {
    case Placement::Kind::Grid:
      j["kind"] = "grid";
      j["x"] = p.x;
      j["y"] = p.y;
      j["z"] = p.z;
      break;
    case Placement::Kind::Carried: j["kind"] = "carried"; break;
    case Placement::Kind::Within:
      j["kind"] = "within";
      j["container"] = p.container;
      break;
    case Placement::Kind::Nowhere: j["kind"] = "nowhere"; break;
  }
  return j;
}

Json facing_json(const GridWorld& w) {
  const auto f = w.facing_cell();
  if (!f) return nullptr;
  const Cell& c = w.cell(*f);
  Json j;
  j["x"] = f->x;
  j["y"] = f->y;
  j["wall"] = c.wall;
  j["door"] = c.door != kNoId;
  j["room"] = id_or_null(c.room);
  j["furniture"] = id_or_null(c.furniture);
  Json slots = Json::array();
  for (int z = 0; z < kLevels; ++z) {
    const auto id = c.slots[static_cast<std::size_t>(z)];
    Json s;
    s["z"] = z;
    s["object"] = id_or_null(id);
    Json within = Json::array();
    if (id != kNoId) {
      for (const auto& o : w.objects()) {
        if (o.placement.kind == Placement::Kind::Within && o.placement.container == id) within.push_back(o.id);
      }
    }
    s["contents"] = within;
    s["interior"] = w.slot_is_interior(*f, z);
    s["solid"] = w.slot_is_solid(*f, z);
    slots.push_back(s);
  }
  j["slots"] = slots;
  return j;
}

Json outcome_json(const Environment& env, int last_action) {
  Json j;
  if (last_action < 0) return nullptr;
  const auto& o = env.last_outcome();
  j["action"] = last_action;
  j["label"] = env.action_label(last_action);
  j["succeeded"] = o.succeeded;
  j["reason"] = std::string(to_string(o.reason));
  Json changes = Json::array();
  for (const auto& c : o.state_changes) {
    Json cj;
    cj["entity"] = std::string(entity_name(env.world(), c.entity));
    cj["state"] = std::string(to_string(c.state));
    cj["value"] = c.value;
    cj["cause"] = std::string(to_string(c.cause));
    changes.push_back(cj);
  }
  j["changes"] = changes;
  return j;
}

Json config_summary(const Environment& env) { return config_to_json(env.config()); }

}  // namespace

Json error_message(std::string_view code, std::string_view message) {
  Json j;
  j["type"] = "error";
  j["code"] = std::string(code);
  j["message"] = std::string(message);
  return j;
}

char action_key(PrimitiveAction a) {
  switch (a) {
    case PrimitiveAction::Forward: return 'f';
    case PrimitiveAction::TurnLeft: return 'l';
    case PrimitiveAction::TurnRight: return 'r';
    case PrimitiveAction::Close: return 'c';
    case PrimitiveAction::Cook: return 'k';
    case PrimitiveAction::DropBottom: return 'a';
    case PrimitiveAction::DropMiddle: return 's';
    case PrimitiveAction::DropTop: return 'd';
    case PrimitiveAction::DropIn: return 'i';
    case PrimitiveAction::Open: return 'o';
    case PrimitiveAction::PickupBottom: return 'z';
    case PrimitiveAction::PickupMiddle: return 'x';
    case PrimitiveAction::PickupTop: return 'v';
    case PrimitiveAction::Slice: return 'e';
    case PrimitiveAction::Toggle: return 't';
  }
  return '?';
}

std::optional<PrimitiveAction> action_for_key(char key) {
  for (int i = 0; i < kNumPrimitiveActions; ++i) {
    if (action_key(static_cast<PrimitiveAction>(i)) == key) return static_cast<PrimitiveAction>(i);
  }
  return std::nullopt;
}

Json action_legend() {
  Json j = Json::array();
  for (int i = 0; i < kNumPrimitiveActions; ++i) {
    const auto a = static_cast<PrimitiveAction>(i);
    Json e;
    e["encoding"] = i;
    e["name"] = std::string(to_string(a));
    e["key"] = std::string(1, action_key(a));
    j.push_back(e);
  }
  return j;
}

Json snapshot_json(const Environment& env, double last_reward, int last_action) {
  const GridWorld& w = env.world();
  Json j;
  j["type"] = "snapshot";
  j["task"] = env.task().name;
  j["config"] = config_summary(env);
  j["width"] = w.width();
  j["height"] = w.height();

  Json rooms = Json::array();
  for (const auto& r : w.rooms()) {
    Json rj;
    rj["id"] = r.id;
    rj["name"] = r.name;
    rj["bounds"] = Json::array({r.bounds.x0, r.bounds.y0, r.bounds.x1, r.bounds.y1});
    rj["floor"] = r.floor;
    rooms.push_back(rj);
  }
  j["rooms"] = rooms;

  Json walls = Json::array();
  for (int y = 0; y < w.height(); ++y) {
    for (int x = 0; x < w.width(); ++x) {
      if (w.cell(x, y).wall) walls.push_back(pos_json({x, y}));
    }
  }
  j["walls"] = walls;
  Json doors = Json::array();
  for (const auto& d : w.doors()) doors.push_back(pos_json(d.pos));
  j["doors"] = doors;

  Json furniture = Json::array();
  for (const auto& f : w.furniture()) {
    Json fj;
    fj["id"] = f.id;
    fj["name"] = f.name;
    fj["category"] = w.category_of(f).name;
    fj["code"] = w.category_of(f).id;
    fj["floor"] = f.is_floor;
    fj["room"] = id_or_null(f.room);
    fj["footprint"] = f.is_floor ? Json(nullptr) : Json::array({f.anchor.x, f.anchor.y, f.width, f.depth});
    fj["height"] = f.height;
    fj["container"] = f.container;
    fj["openable"] = f.openable;
    fj["states"] = furniture_states(f.states);
    fj["capable"] = state_names(w.category_of(f).capable);
    furniture.push_back(fj);
  }
  j["furniture"] = furniture;

  Json objects = Json::array();
  for (const auto& o : w.objects()) {
    Json oj;
    oj["id"] = o.id;
    oj["name"] = o.name;
    oj["category"] = w.category_of(o).name;
    oj["code"] = w.category_of(o).id;
    oj["placement"] = placement_json(o.placement);
    oj["states"] = object_states(o.states);
    oj["capable"] = state_names(w.category_of(o).capable);
    objects.push_back(oj);
  }
  j["objects"] = objects;

  Json agent;
  agent["x"] = w.agent().pos.x;
  agent["y"] = w.agent().pos.y;
  agent["heading"] = std::string(to_string(w.agent().heading));
  agent["carrying"] = w.agent().carrying;
  j["agent"] = agent;
  j["facing"] = facing_json(w);

  const auto& p = env.progress();
  Json progress;
  progress["milestones"] = env.task().milestones.size();
  progress["satisfied"] = p.satisfied_milestones;
  progress["latched"] = p.latched;
  progress["goal_met"] = p.goal_met;
  j["goal_progress"] = progress;

  j["step"] = w.step_count();
  j["reward"] = last_reward;
  j["episode_reward"] = env.episode_reward();
  j["terminated"] = env.terminated();
  j["truncated"] = env.truncated();
  j["last_action_outcome"] = outcome_json(env, last_action);
  j["state_hash"] = hex64(env.state_hash());
  return j;
}

Session::Session(std::uint64_t id, std::filesystem::path autosave_dir) : id_(id), autosave_dir_(std::move(autosave_dir)) {}

std::string Session::handle_text(std::string_view text) {
  Json m;
  try {
    m = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    return error_message("BAD_MESSAGE", "message is not valid JSON").dump();
  }
  return handle(m).dump();
}

Json Session::handle(const Json& m) {
  if (!m.is_object() || !m.contains("type") || !m["type"].is_string()) return error_message("BAD_MESSAGE", "message needs a string 'type'");
  const auto type = m["type"].get<std::string>();
  try {
    if (type == "hello") return on_hello(m);
    if (!greeted_) return error_message("NO_HELLO", "send hello first");
    if (type == "reset") return on_reset(m);
    if (type == "action") return on_action(m);
    if (type == "set_view") return on_set_view(m);
    if (type == "save_demo") return on_save_demo(m);
  } catch (const nlohmann::json::exception& e) {
    return error_message("BAD_MESSAGE", e.what());
  }
  return error_message("BAD_MESSAGE", "unknown message type '" + type + "'");
}

Json Session::on_hello(const Json& m) {
  const int v = m.value("client_version", -1);
  if (v != kProtocolVersion) {
    return error_message("VERSION_MISMATCH",
                         "client protocol " + std::to_string(v) + ", server speaks " + std::to_string(kProtocolVersion));
  }
  greeted_ = true;
  Json j;
  j["type"] = "welcome";
  j["protocol_version"] = kProtocolVersion;
  j["session"] = id_;
  j["task_library"] = TaskLibrary::builtin().names();
  j["action_legend"] = action_legend();
  return j;
}

Json Session::on_reset(const Json& m) {
  EnvConfig cfg;
  try {
    if (m.contains("config") && !m["config"].is_null()) cfg = config_from_json(m["config"], cfg);
    if (m.contains("task")) cfg.task = m["task"].get<std::string>();
    if (m.contains("seed")) cfg.seed = m["seed"].get<std::uint64_t>();
  } catch (const std::invalid_argument& e) {
    return error_message("BAD_CONFIG", e.what());
  }
  cfg.atom_deltas = false;
  try {
    auto env = std::make_unique<Environment>(cfg);
    env->reset();
    env_ = std::move(env);
  } catch (const TaskError& e) {
    return error_message(e.kind() == TaskErrorKind::UnknownTask ? "UNKNOWN_TASK" : "BAD_TASK", e.what());
  } catch (const ProcGenError& e) {
    return error_message("PROCGEN_FAILED", e.what());
  } catch (const std::invalid_argument& e) {
    return error_message("BAD_CONFIG", e.what());
  }
  recorder_ = std::make_unique<DemoRecorder>(env_->config(), "human");
  return snapshot_json(*env_);
}

Json Session::on_action(const Json& m) {
  if (!env_) return error_message("NO_EPISODE", "reset before sending actions");
  if (!m.contains("encoding") || !m["encoding"].is_number_integer()) return error_message("INVALID_ENCODING", "encoding must be an integer");
  const auto a = m["encoding"].get<std::int64_t>();
  if (a < 0 || static_cast<std::uint64_t>(a) >= env_->action_space_size()) {
    return error_message("INVALID_ENCODING", "encoding " + std::to_string(a) + " outside a space of " + std::to_string(env_->action_space_size()));
  }
  if (env_->finished()) return error_message("EPISODE_FINISHED", "episode finished; reset to continue");
  const auto r = env_->step(static_cast<int>(a));
  recorder_->record(static_cast<int>(a), r);
  return snapshot_json(*env_, r.reward, static_cast<int>(a));
}

Json Session::on_set_view(const Json& m) {
  const auto mode = m.value("mode", std::string("default"));
  if (mode != "default" && mode != "single_dim" && mode != "furniture_only") return error_message("BAD_MESSAGE", "unknown view mode '" + mode + "'");
  const int z = m.value("z", 0);
  if (z < 0 || z >= kLevels) return error_message("BAD_MESSAGE", "z must be 0, 1 or 2");
  view_mode_ = mode;
  view_z_ = z;
  closeup_ = m.value("closeup", false) && mode == "default";
  Json j;
  j["type"] = "view";
  j["mode"] = view_mode_;
  j["z"] = view_z_;
  j["closeup"] = closeup_;
  return j;
}

Json Session::on_save_demo(const Json& m) {
  if (!env_) return error_message("NO_EPISODE", "nothing to save before reset");
  if (!m.contains("path") || !m["path"].is_string()) return error_message("BAD_MESSAGE", "save_demo needs a path");
  const auto d = demo();
  const std::filesystem::path path = m["path"].get<std::string>();
  try {
    save_demo(*d, path);
  } catch (const std::exception& e) {
    return error_message("SAVE_FAILED", e.what());
  }
  Json j;
  j["type"] = "saved";
  j["path"] = path.string();
  j["steps"] = d->steps.size();
  j["final_hash"] = hex64(d->final_hash);
  return j;
}

std::optional<DemoRecord> Session::demo() const {
  if (!env_ || !recorder_) return std::nullopt;
  return recorder_->finish(*env_);
}

std::optional<std::filesystem::path> Session::flush() {
  if (autosave_dir_.empty() || !recorder_ || recorder_->size() == 0) return std::nullopt;
  std::filesystem::create_directories(autosave_dir_);
  const auto path = autosave_dir_ / ("session-" + std::to_string(id_) + ".demo");
  save_demo(*demo(), path);
  return path;
}

}  // namespace gridhouse
