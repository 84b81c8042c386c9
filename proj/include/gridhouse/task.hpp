#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridhouse/actions.hpp"
#include "gridhouse/state.hpp"

namespace gridhouse {

inline constexpr int kTaskFormatVersion = 1;

enum class TaskErrorKind : std::uint8_t {
  SyntaxError,
  UnknownPredicate,
  UnknownCategory,
  UnknownEntity,
  ArityMismatch,
  UnknownCapability,
  InvalidDirective,
  BadMilestones,
  VersionMismatch,
  UnknownTask,
};

std::string_view to_string(TaskErrorKind k);

class TaskError : public std::runtime_error {
 public:
  TaskError(TaskErrorKind kind, std::string message, int line = 0);
  TaskErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  TaskErrorKind kind_;
  int line_;
};

// Arguments are entity names, `?var` variables, or `floor@<room>` references.
struct Condition {
  enum class Kind : std::uint8_t { Atom, Not, And, Or, ForAll, Exists };
  Kind kind = Kind::And;
  Predicate pred = Predicate::InFOV;
  std::vector<std::string> args;
  std::string var;           // quantifiers, including the leading '?'
  std::string var_category;  // quantifiers
  std::vector<Condition> children;

  static Condition atom(Predicate p, std::vector<std::string> args);
  static Condition negate(Condition c);
  static Condition all_of(std::vector<Condition> cs);
  static Condition any_of(std::vector<Condition> cs);
  static Condition for_all(std::string var, std::string category, Condition body);
  static Condition exists(std::string var, std::string category, Condition body);

  friend bool operator==(const Condition&, const Condition&) = default;
};

// One `:init` literal. InRoom is a placement directive and has no predicate;
// `floor` as second argument of OnTop means "on the floor of its room".
struct InitLiteral {
  std::optional<Predicate> pred;  // absent for InRoom
  std::vector<std::string> args;
  bool negated = false;
  int line = 0;

  bool in_room() const { return !pred.has_value(); }
  friend bool operator==(const InitLiteral& a, const InitLiteral& b) {
    return a.pred == b.pred && a.args == b.args && a.negated == b.negated;
  }
};

struct EntityDecl {
  std::string name;
  std::string category;
  bool furniture = false;
  friend bool operator==(const EntityDecl&, const EntityDecl&) = default;
};

struct LayoutSpec {
  std::string file;  // named layout under data/layouts, empty for a generated grid
  int width = 10;
  int height = 10;
  std::vector<std::string> rooms;  // labels, one per generated room
  friend bool operator==(const LayoutSpec&, const LayoutSpec&) = default;
};

struct TaskDefinition {
  std::string name;
  int version = kTaskFormatVersion;
  LayoutSpec layout;
  std::vector<EntityDecl> entities;  // declaration order
  std::vector<InitLiteral> init;
  Condition goal;
  std::vector<Condition> milestones;  // empty, or ending with the goal

  const EntityDecl* find_entity(std::string_view name) const;
  std::vector<TaskEntity> cartesian_entities() const;
  friend bool operator==(const TaskDefinition&, const TaskDefinition&) = default;
};

TaskDefinition parse_task(std::string_view text, const Registry& registry = Registry::builtin());
TaskDefinition load_task_file(const std::filesystem::path& path, const Registry& registry = Registry::builtin());
std::string render_task(const TaskDefinition& task);
std::string render_condition(const Condition& c);

// Standard first-order evaluation; quantifiers range over live objects and
// furniture of the named category.
bool check_goal(const GridWorld& world, const Condition& expr);

enum class RewardMode : std::uint8_t { Sparse, Dense };

struct GoalProgress {
  std::vector<bool> latched;  // per milestone
  int satisfied_milestones = 0;
  bool goal_met = false;
};

GoalProgress initial_progress(const TaskDefinition& task);

// Reward for the step that produced `world`, updating progress. Dense mode pays
// newly latched milestones / milestone count; meeting the goal latches all.
// Throws TaskError if dense mode is requested for a task without milestones.
double compute_reward(const GridWorld& world, const TaskDefinition& task, GoalProgress& progress, RewardMode mode);

class TaskLibrary {
 public:
  static TaskLibrary load(const std::filesystem::path& dir, const Registry& registry = Registry::builtin());
  // Library under data_dir()/tasks, loaded once.
  static const TaskLibrary& builtin();

  const std::vector<TaskDefinition>& tasks() const { return tasks_; }
  const TaskDefinition* find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<TaskDefinition> tasks_;
};

// A library name, or a path to a task file.
TaskDefinition resolve_task(std::string_view name_or_path, const Registry& registry = Registry::builtin());

}  // namespace gridhouse
