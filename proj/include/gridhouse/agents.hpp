#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gridhouse/env.hpp"

namespace gridhouse {

// Uniform controller, either over the whole action space or over the actions
// that would currently succeed.
class RandomAgent {
 public:
  RandomAgent(std::uint64_t seed, bool valid_only) : rng_(seed), valid_only_(valid_only) {}
  int act(const Environment& env);

 private:
  Rng rng_;
  bool valid_only_;
};

// Breadth-first search over world states from the current episode state.
// Returns a shortest action sequence reaching the goal, or nullopt once more
// than max_states distinct states have been expanded.
std::optional<std::vector<int>> bfs_solve(const Environment& env, std::size_t max_states = 2'000'000);

// Skill layer used by the scripted controllers. Works on a private copy of the
// world, recording primitive actions as it applies them. After the first
// failed skill every later call is a no-op returning false.
class Planner {
 public:
  explicit Planner(GridWorld world) : w_(std::move(world)) {}

  const GridWorld& world() const { return w_; }
  const std::vector<int>& actions() const { return actions_; }
  bool failed() const { return !error_.empty(); }
  const std::string& error() const { return error_; }

  ObjectId obj(std::string_view name);
  FurnitureId furn(std::string_view name);
  std::vector<ObjectId> objects_of(std::string_view category) const;

  bool act(PrimitiveAction a);
  // Shortest turn/forward path until the facing cell satisfies pred.
  bool face_where(const std::function<bool(Pos)>& pred);
  bool face(Pos p);
  bool face_furniture(FurnitureId f);
  void nudge();  // turn away and back, to run transitions without moving

  bool holding(ObjectId o) const;
  bool empty_hand();
  bool pickup(ObjectId o);
  bool place_on(FurnitureId f);
  bool put_in(FurnitureId f);
  bool put_in_object(ObjectId container);
  bool drop_at(Pos p, int z = 0);
  bool open(FurnitureId f);
  bool open_object(ObjectId o);
  bool toggle_on(FurnitureId f);
  bool toggle_object_on(ObjectId o);
  bool slice(ObjectId target, ObjectId knife);

  // Puts the tool in the running sink and takes it back out soaked.
  bool soak(ObjectId tool, FurnitureId sink);
  // Holds the soaked tool while facing the furniture.
  bool wipe(FurnitureId f, ObjectId tool);
  // Cleaning station: soap and the soaked tool on two floor cells next to a
  // free cell. Dropping a dirty object on that cell cleans it.
  bool setup_station(ObjectId soap, ObjectId tool);
  bool clean_at_station(ObjectId o);

  bool move_on(ObjectId o, FurnitureId f);
  bool move_in(ObjectId o, FurnitureId f);
  // Highest-placed objects first so nothing is pulled from under another.
  bool move_all_in(std::vector<ObjectId> objs, FurnitureId f);
  bool move_all_on(std::vector<ObjectId> objs, FurnitureId f);

  bool fail(std::string why);
  std::set<std::pair<int, int>> reserved;  // floor cells empty_hand must avoid

 private:
  bool free_floor_slot(Pos p) const;
  std::optional<Pos> station_;
  GridWorld w_;
  std::vector<int> actions_;
  std::string error_;
};

bool has_script(std::string_view task);
std::vector<std::string> scripted_tasks();
// Primitive-action solution for the episode in `world`, or nullopt when the
// task has no script or the script got stuck.
std::optional<std::vector<int>> scripted_solution(const GridWorld& world, const TaskDefinition& task, std::string* error = nullptr);

}  // namespace gridhouse
