#include "gridhouse/env.hpp"

#include <algorithm>
#include <cstring>
#include <iterator>

namespace gridhouse {
namespace {

void encode_cell(const GridWorld& w, Pos p, std::uint8_t* px) {
  std::memset(px, 0, kObsChannels);
  if (!w.in_bounds(p)) return;
  const Cell& c = w.cell(p);
  if (c.wall) {
    px[kFurnitureChannel] = kWallCode;
    return;
  }
  for (int z = 0; z < kLevels; ++z) {
    const auto id = c.slots[static_cast<std::size_t>(z)];
    if (id == kNoId) continue;
    const auto& o = w.object(id);
    std::uint8_t* base = px + z * (1 + kNumAbsStates);
    base[0] = static_cast<std::uint8_t>(w.category_of(o).id);
    for (int s = 0; s < kNumAbsStates; ++s) base[1 + s] = o.states.has(static_cast<AbsState>(s)) ? 1 : 0;
  }
  if (c.furniture != kNoId) {
    const auto& f = w.furniture(c.furniture);
    px[27] = static_cast<std::uint8_t>(w.category_of(f).id);
    px[28] = f.states.has(AbsState::Opened);
    px[29] = f.states.has(AbsState::ToggledOn);
    px[30] = f.states.has(AbsState::Dusty) || f.states.has(AbsState::Stained);
  } else {
    if (w.agent().pos == p) px[27] = static_cast<std::uint8_t>(kAgentCodeBase + static_cast<int>(w.agent().heading));
    if (c.room != kNoId) {
      const auto& floor = w.furniture(w.rooms()[static_cast<std::size_t>(c.room)].floor);
      px[30] = floor.states.has(AbsState::Dusty) || floor.states.has(AbsState::Stained);
    }
  }
}

std::vector<GroundAtom> diff(const std::vector<GroundAtom>& a, const std::vector<GroundAtom>& b) {
  std::vector<GroundAtom> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(std::string_view s, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + static_cast<std::size_t>(i)])) << (8 * i);
  return v;
}

}  // namespace

std::string_view to_string(ActionMode m) { return m == ActionMode::Primitive ? "primitive" : "cartesian"; }
std::string_view to_string(ObsMode m) { return m == ObsMode::Partial ? "partial" : "full"; }
std::string_view to_string(RewardMode m) { return m == RewardMode::Sparse ? "sparse" : "dense"; }

ActionMode parse_action_mode(std::string_view s) {
  if (s == "primitive") return ActionMode::Primitive;
  if (s == "cartesian") return ActionMode::Cartesian;
  throw std::invalid_argument("action mode must be primitive or cartesian");
}

ObsMode parse_obs_mode(std::string_view s) {
  if (s == "partial") return ObsMode::Partial;
  if (s == "full") return ObsMode::Full;
  throw std::invalid_argument("observation mode must be partial or full");
}

RewardMode parse_reward_mode(std::string_view s) {
  if (s == "sparse") return RewardMode::Sparse;
  if (s == "dense") return RewardMode::Dense;
  throw std::invalid_argument("reward mode must be sparse or dense");
}

void encode_observation_into(const GridWorld& w, ObsMode mode, Observation& out) {
  if (mode == ObsMode::Full) {
    out.rows = w.height();
    out.cols = w.width();
    out.data.resize(static_cast<std::size_t>(out.rows * out.cols * kObsChannels));
    for (int y = 0; y < w.height(); ++y) {
      for (int x = 0; x < w.width(); ++x) {
        encode_cell(w, {x, y}, out.data.data() + static_cast<std::size_t>((y * out.cols + x) * kObsChannels));
      }
    }
    return;
  }
  out.rows = kPartialView;
  out.cols = kPartialView;
  out.data.resize(static_cast<std::size_t>(kPartialView * kPartialView * kObsChannels));
  const Heading h = w.agent().heading;
  const Pos fwd = offset({0, 0}, h);
  const Pos right = offset({0, 0}, turn_right(h));
  const Pos a = w.agent().pos;
  for (int r = 0; r < kPartialView; ++r) {
    const int ahead = kPartialView - 1 - r;
    for (int c = 0; c < kPartialView; ++c) {
      const int side = c - kPartialView / 2;
      const Pos p{a.x + ahead * fwd.x + side * right.x, a.y + ahead * fwd.y + side * right.y};
      encode_cell(w, p, out.data.data() + static_cast<std::size_t>((r * kPartialView + c) * kObsChannels));
    }
  }
}

Observation encode_observation(const GridWorld& world, ObsMode mode) {
  Observation o;
  encode_observation_into(world, mode, o);
  return o;
}

std::string dump_observation(const Observation& obs) {
  std::string out = "GHOB";
  put_u32(out, static_cast<std::uint32_t>(obs.rows));
  put_u32(out, static_cast<std::uint32_t>(obs.cols));
  put_u32(out, kObsChannels);
  out.append(reinterpret_cast<const char*>(obs.data.data()), obs.data.size());
  return out;
}

Observation load_observation_dump(std::string_view bytes) {
  if (bytes.size() < 16 || bytes.substr(0, 4) != "GHOB") throw std::invalid_argument("not an observation dump");
  Observation o;
  o.rows = static_cast<int>(get_u32(bytes, 4));
  o.cols = static_cast<int>(get_u32(bytes, 8));
  if (get_u32(bytes, 12) != kObsChannels) throw std::invalid_argument("unexpected channel count");
  const auto n = static_cast<std::size_t>(o.rows) * static_cast<std::size_t>(o.cols) * kObsChannels;
  if (bytes.size() != 16 + n) throw std::invalid_argument("observation dump has the wrong length");
  o.data.assign(bytes.begin() + 16, bytes.end());
  return o;
}

Environment::Environment(EnvConfig config, const Registry& registry)
    : Environment(config, resolve_task(config.task, registry), registry) {}

Environment::Environment(EnvConfig config, TaskDefinition task, const Registry& registry)
    : config_(std::move(config)), task_(std::move(task)), registry_(&registry) {
  if (config_.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (config_.reward_mode == RewardMode::Dense && task_.milestones.empty()) {
    throw TaskError(TaskErrorKind::BadMilestones, "dense reward unavailable: task " + task_.name + " has no milestones");
  }
  cartesian_ = build_cartesian_space(task_.cartesian_entities(), default_validity_table(registry));
}

Observation Environment::reset() { return reset(config_.seed); }

Observation Environment::reset(std::uint64_t seed) {
  config_.seed = seed;
  world_.emplace(instantiate_task(task_, seed, {config_.grid_size, config_.rooms}, *registry_));
  progress_ = initial_progress(task_);
  terminated_ = false;
  truncated_ = false;
  episode_reward_ = 0.0;
  last_outcome_ = {};
  return encode_observation(*world_, config_.obs_mode);
}

StepResult Environment::step(int action) {
  if (!world_) throw EpisodeFinished();
  if (finished()) throw EpisodeFinished();
  if (action < 0 || static_cast<std::size_t>(action) >= action_space_size()) {
    throw InvalidAction("action " + std::to_string(action) + " outside a space of " + std::to_string(action_space_size()));
  }
  StepResult r;
  std::vector<GroundAtom> before;
  if (config_.atom_deltas) before = all_true_predicates(*world_);

  r.info.outcome = config_.action_mode == ActionMode::Primitive
                       ? apply_primitive(*world_, static_cast<PrimitiveAction>(action))
                       : apply_cartesian(*world_, cartesian_, static_cast<std::size_t>(action));
  r.reward = compute_reward(*world_, task_, progress_, config_.reward_mode);
  world_->advance_step();
  terminated_ = progress_.goal_met;
  truncated_ = !terminated_ && world_->step_count() >= static_cast<std::uint64_t>(config_.max_steps);
  r.terminated = terminated_;
  r.truncated = truncated_;
  episode_reward_ += r.reward;

  if (config_.atom_deltas) {
    const auto after = all_true_predicates(*world_);
    r.info.atoms_added = diff(after, before);
    r.info.atoms_removed = diff(before, after);
  }
  r.info.progress = progress_;
  last_outcome_ = r.info.outcome;
  encode_observation_into(*world_, config_.obs_mode, r.observation);
  return r;
}

std::size_t Environment::action_space_size() const {
  return config_.action_mode == ActionMode::Primitive ? static_cast<std::size_t>(kNumPrimitiveActions) : cartesian_.dimension();
}

std::string Environment::action_label(int action) const {
  if (config_.action_mode == ActionMode::Primitive) {
    if (action < 0 || action >= kNumPrimitiveActions) return "?";
    return std::string(to_string(static_cast<PrimitiveAction>(action)));
  }
  return cartesian_.label(static_cast<std::size_t>(action));
}

std::vector<int> Environment::valid_actions() const {
  std::vector<int> out;
  if (!world_) return out;
  for (std::size_t i = 0; i < action_space_size(); ++i) {
    const auto f = config_.action_mode == ActionMode::Primitive ? check_primitive(*world_, static_cast<PrimitiveAction>(i))
                                                                : check_cartesian(*world_, cartesian_, i);
    if (f == ActionFailure::None) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> Environment::observation_shape() const {
  if (config_.obs_mode == ObsMode::Partial) return {kPartialView, kPartialView, kObsChannels};
  if (world_) return {world_->height(), world_->width(), kObsChannels};
  const auto cfg = task_procgen_config(task_, config_.seed, {config_.grid_size, config_.rooms});
  return {cfg.height, cfg.width, kObsChannels};
}

}  // namespace gridhouse
