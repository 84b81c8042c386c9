#include "gridhouse/task.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace gridhouse {
namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 0;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_document() {
    skip_space();
    if (pos_ >= text_.size()) throw TaskError(TaskErrorKind::SyntaxError, "empty task file", line_);
    SExpr e = read();
    skip_space();
    if (pos_ < text_.size()) throw TaskError(TaskErrorKind::SyntaxError, "trailing text after task definition", line_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        return;
      }
    }
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw TaskError(TaskErrorKind::SyntaxError, "unexpected end of file", line_);
    SExpr e;
    e.line = line_;
    if (text_[pos_] == ')') throw TaskError(TaskErrorKind::SyntaxError, "unexpected ')'", line_);
    if (text_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) throw TaskError(TaskErrorKind::SyntaxError, "unclosed '(' opened here", e.line);
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(read());
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

[[noreturn]] void syntax(const SExpr& e, const std::string& msg) { throw TaskError(TaskErrorKind::SyntaxError, msg, e.line); }

const std::string& atom_of(const SExpr& e, const char* what) {
  if (e.is_list) syntax(e, std::string("expected ") + what);
  return e.atom;
}

int int_of(const SExpr& e) {
  const auto& s = atom_of(e, "an integer");
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) syntax(e, "expected an integer, got '" + s + "'");
  return v;
}

bool is_head(const SExpr& e, std::string_view head) {
  return e.is_list && !e.items.empty() && !e.items[0].is_list && e.items[0].atom == head;
}

constexpr std::string_view kFloorPrefix = "floor@";

struct ArgInfo {
  std::string category;
  bool furniture = false;
  bool floor = false;
};

class Builder {
 public:
  Builder(const Registry& r, TaskDefinition& t) : reg_(r), task_(t) {}

  void objects(const SExpr& section) {
    std::vector<std::string> pending;
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const auto& item = section.items[i];
      const auto& tok = atom_of(item, "an entity name");
      if (tok == "-") {
        if (pending.empty() || i + 1 >= section.items.size()) syntax(item, "'-' must sit between names and a category");
        const auto& cat = atom_of(section.items[++i], "a category");
        const bool is_obj = reg_.find_object(cat) != nullptr;
        const auto* furn = reg_.find_furniture(cat);
        if (!is_obj && furn == nullptr) throw TaskError(TaskErrorKind::UnknownCategory, "unknown category '" + cat + "'", item.line);
        if (furn != nullptr && furn->has(kFloor)) throw TaskError(TaskErrorKind::InvalidDirective, "floors are implicit and cannot be declared", item.line);
        for (auto& n : pending) {
          if (task_.find_entity(n) != nullptr) syntax(item, "duplicate entity '" + n + "'");
          if (n.starts_with("floor") || n.starts_with("?")) syntax(item, "reserved entity name '" + n + "'");
          task_.entities.push_back({n, cat, !is_obj});
        }
        pending.clear();
      } else {
        pending.push_back(tok);
      }
    }
    if (!pending.empty()) syntax(section, "entity '" + pending.front() + "' lacks a category");
  }

  void layout(const SExpr& section) {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const auto& item = section.items[i];
      if (is_head(item, "grid")) {
        if (item.items.size() != 3) syntax(item, "(grid W H) takes two integers");
        task_.layout.width = int_of(item.items[1]);
        task_.layout.height = int_of(item.items[2]);
        if (task_.layout.width < 3 || task_.layout.height < 3) syntax(item, "grid must be at least 3x3");
      } else if (is_head(item, "file")) {
        if (item.items.size() != 2) syntax(item, "(file NAME) takes one name");
        task_.layout.file = atom_of(item.items[1], "a layout name");
      } else if (is_head(item, "rooms")) {
        for (std::size_t k = 1; k < item.items.size(); ++k) task_.layout.rooms.push_back(atom_of(item.items[k], "a room label"));
      } else {
        syntax(item, "unknown layout clause");
      }
    }
    if (task_.layout.file.empty() && task_.layout.rooms.empty()) task_.layout.rooms.push_back("room");
  }

  void init(const SExpr& section) {
    for (std::size_t i = 1; i < section.items.size(); ++i) {
      const SExpr* item = &section.items[i];
      InitLiteral lit;
      lit.line = item->line;
      if (is_head(*item, "not")) {
        if (item->items.size() != 2) syntax(*item, "(not X) takes one argument");
        lit.negated = true;
        item = &item->items[1];
      }
      if (!item->is_list || item->items.empty()) syntax(*item, "expected an init literal");
      const auto& head = atom_of(item->items[0], "a predicate");
      for (std::size_t k = 1; k < item->items.size(); ++k) lit.args.push_back(atom_of(item->items[k], "an entity name"));
      if (head == "InRoom") {
        if (lit.negated) throw TaskError(TaskErrorKind::InvalidDirective, "InRoom cannot be negated", item->line);
        if (lit.args.size() != 2) throw TaskError(TaskErrorKind::ArityMismatch, "InRoom takes 2 arguments", item->line);
        entity_arg(lit.args[0], item->line, {});
        if (task_.layout.file.empty() &&
            std::find(task_.layout.rooms.begin(), task_.layout.rooms.end(), lit.args[1]) == task_.layout.rooms.end()) {
          throw TaskError(TaskErrorKind::UnknownEntity, "unknown room '" + lit.args[1] + "'", item->line);
        }
      } else {
        lit.pred = predicate(head, item->line);
        check_atom(*lit.pred, lit.args, item->line, {}, /*init=*/true);
      }
      task_.init.push_back(std::move(lit));
    }
  }

  Condition condition(const SExpr& e, std::vector<std::pair<std::string, ArgInfo>>& scope) {
    if (!e.is_list || e.items.empty()) syntax(e, "expected a condition");
    const auto& head = atom_of(e.items[0], "a connective or predicate");
    if (head == "and" || head == "or") {
      std::vector<Condition> cs;
      for (std::size_t i = 1; i < e.items.size(); ++i) cs.push_back(condition(e.items[i], scope));
      return head == "and" ? Condition::all_of(std::move(cs)) : Condition::any_of(std::move(cs));
    }
    if (head == "not") {
      if (e.items.size() != 2) syntax(e, "(not X) takes one argument");
      return Condition::negate(condition(e.items[1], scope));
    }
    if (head == "forall" || head == "exists") {
      if (e.items.size() != 3) syntax(e, "quantifier takes a variable list and a body");
      const auto& decl = e.items[1];
      if (!decl.is_list || decl.items.size() != 3 || atom_of(decl.items[1], "'-'") != "-") syntax(decl, "expected (?var - category)");
      const auto& var = atom_of(decl.items[0], "a variable");
      if (!var.starts_with("?") || var.size() < 2) syntax(decl, "variables start with '?'");
      const auto& cat = atom_of(decl.items[2], "a category");
      ArgInfo info{cat, false, false};
      if (reg_.find_object(cat) == nullptr) {
        const auto* f = reg_.find_furniture(cat);
        if (f == nullptr) throw TaskError(TaskErrorKind::UnknownCategory, "unknown category '" + cat + "'", decl.line);
        info.furniture = true;
        info.floor = f->has(kFloor);
      }
      scope.emplace_back(var, info);
      Condition body = condition(e.items[2], scope);
      scope.pop_back();
      return head == "forall" ? Condition::for_all(var, cat, std::move(body)) : Condition::exists(var, cat, std::move(body));
    }
    if (head == "InRoom") throw TaskError(TaskErrorKind::InvalidDirective, "InRoom is only allowed in :init", e.line);
    const Predicate p = predicate(head, e.line);
    std::vector<std::string> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(atom_of(e.items[i], "an argument"));
    check_atom(p, args, e.line, scope, false);
    return Condition::atom(p, std::move(args));
  }

 private:
  Predicate predicate(const std::string& name, int line) const {
    const auto p = parse_predicate(name);
    if (!p) throw TaskError(TaskErrorKind::UnknownPredicate, "unknown predicate '" + name + "'", line);
    return *p;
  }

  ArgInfo entity_arg(const std::string& arg, int line, const std::vector<std::pair<std::string, ArgInfo>>& scope) const {
    if (arg.starts_with("?")) {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == arg) return it->second;
      }
      throw TaskError(TaskErrorKind::UnknownEntity, "unbound variable '" + arg + "'", line);
    }
    if (arg.starts_with(kFloorPrefix)) {
      const auto label = arg.substr(kFloorPrefix.size());
      if (task_.layout.file.empty() &&
          std::find(task_.layout.rooms.begin(), task_.layout.rooms.end(), label) == task_.layout.rooms.end()) {
        throw TaskError(TaskErrorKind::UnknownEntity, "unknown room '" + label + "'", line);
      }
      return {"floor", true, true};
    }
    const auto* d = task_.find_entity(arg);
    if (d == nullptr) throw TaskError(TaskErrorKind::UnknownEntity, "undeclared entity '" + arg + "'", line);
    return {d->category, d->furniture, false};
  }

  StateSet capable(const ArgInfo& a) const {
    if (a.furniture) return reg_.find_furniture(a.category)->capable;
    return reg_.find_object(a.category)->capable;
  }

  bool container(const ArgInfo& a) const {
    if (a.furniture) return reg_.find_furniture(a.category)->has(kFurnContainer);
    return reg_.find_object(a.category)->has(kContainer);
  }

  void check_atom(Predicate p, const std::vector<std::string>& args, int line,
                  const std::vector<std::pair<std::string, ArgInfo>>& scope, bool init) const {
    if (static_cast<int>(args.size()) != arity(p)) {
      throw TaskError(TaskErrorKind::ArityMismatch,
                      std::string(to_string(p)) + " takes " + std::to_string(arity(p)) + " argument(s)", line);
    }
    const auto incapable = [&](const std::string& why) {
      throw TaskError(TaskErrorKind::UnknownCapability, std::string(to_string(p)) + ": " + why, line);
    };
    // A bare `floor` is the init-only "on the floor of its room" directive.
    if (p == Predicate::OnTop && args.size() == 2 && args[1] == "floor") {
      if (!init) throw TaskError(TaskErrorKind::InvalidDirective, "OnTop(x, floor) is only allowed in :init", line);
      if (entity_arg(args[0], line, scope).furniture) incapable("furniture cannot rest on the floor");
      return;
    }
    std::vector<ArgInfo> info;
    for (const auto& a : args) info.push_back(entity_arg(a, line, scope));
    switch (kind_of(p)) {
      case PredicateKind::Agent:
        if (info[0].furniture) incapable(args[0] + " is furniture");
        break;
      case PredicateKind::Absolute:
        if (p == Predicate::OnFloor) {
          if (info[0].furniture) incapable(args[0] + " is furniture");
        } else if (!capable(info[0]).has(*as_state(p))) {
          incapable(info[0].category + " cannot be " + std::string(to_string(p)));
        }
        break;
      case PredicateKind::Relative:
        if ((p == Predicate::Inside || p == Predicate::OnTop) && info[0].furniture) incapable(args[0] + " is furniture");
        if (p == Predicate::Under && info[1].furniture) incapable(args[1] + " is furniture");
        if (p == Predicate::Inside && !container(info[1])) incapable(info[1].category + " is not a container");
        if (args[0] == args[1]) incapable("an entity cannot relate to itself");
        break;
    }
  }

  const Registry& reg_;
  TaskDefinition& task_;
};

std::string join_args(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    out += ' ';
    out += a;
  }
  return out;
}

// Evaluation -------------------------------------------------------------

struct Binding {
  std::string_view var;
  EntityRef value;
};

std::optional<EntityRef> resolve_arg(const GridWorld& w, const std::string& arg, const std::vector<Binding>& env) {
  if (arg.starts_with("?")) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->var == arg) return it->value;
    }
    return std::nullopt;
  }
  if (arg.starts_with(kFloorPrefix)) {
    const auto room = w.find_room(std::string_view(arg).substr(kFloorPrefix.size()));
    if (!room) return std::nullopt;
    return EntityRef::furniture(w.rooms()[static_cast<std::size_t>(*room)].floor);
  }
  if (auto o = w.find_object(arg)) return EntityRef::object(*o);
  if (auto f = w.find_furniture(arg)) return EntityRef::furniture(*f);
  return std::nullopt;
}

std::vector<EntityRef> domain(const GridWorld& w, const std::string& category) {
  std::vector<EntityRef> out;
  if (const auto* oc = w.registry().find_object(category)) {
    for (const auto& o : w.objects()) {
      if (o.category == oc->id) out.push_back(EntityRef::object(o.id));
    }
  } else if (const auto* fc = w.registry().find_furniture(category)) {
    for (const auto& f : w.furniture()) {
      if (f.category == fc->id) out.push_back(EntityRef::furniture(f.id));
    }
  }
  return out;
}

bool eval(const GridWorld& w, const Condition& c, std::vector<Binding>& env) {
  switch (c.kind) {
    case Condition::Kind::Atom: {
      const auto a = resolve_arg(w, c.args[0], env);
      if (!a) return false;
      std::optional<EntityRef> b;
      if (c.args.size() > 1) {
        b = resolve_arg(w, c.args[1], env);
        if (!b) return false;
      }
      return eval_atom(w, c.pred, *a, b);
    }
    case Condition::Kind::Not: return !eval(w, c.children[0], env);
    case Condition::Kind::And:
      return std::all_of(c.children.begin(), c.children.end(), [&](const Condition& k) { return eval(w, k, env); });
    case Condition::Kind::Or:
      return std::any_of(c.children.begin(), c.children.end(), [&](const Condition& k) { return eval(w, k, env); });
    case Condition::Kind::ForAll:
    case Condition::Kind::Exists: {
      const bool all = c.kind == Condition::Kind::ForAll;
      for (auto e : domain(w, c.var_category)) {
        env.push_back({c.var, e});
        const bool v = eval(w, c.children[0], env);
        env.pop_back();
        if (all && !v) return false;
        if (!all && v) return true;
      }
      return all;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(TaskErrorKind k) {
  switch (k) {
    case TaskErrorKind::SyntaxError: return "SyntaxError";
    case TaskErrorKind::UnknownPredicate: return "UnknownPredicate";
    case TaskErrorKind::UnknownCategory: return "UnknownCategory";
    case TaskErrorKind::UnknownEntity: return "UnknownEntity";
    case TaskErrorKind::ArityMismatch: return "ArityMismatch";
    case TaskErrorKind::UnknownCapability: return "UnknownCapability";
    case TaskErrorKind::InvalidDirective: return "InvalidDirective";
    case TaskErrorKind::BadMilestones: return "BadMilestones";
    case TaskErrorKind::VersionMismatch: return "VersionMismatch";
    case TaskErrorKind::UnknownTask: return "UnknownTask";
  }
  return "?";
}

TaskError::TaskError(TaskErrorKind kind, std::string message, int line)
    : std::runtime_error(std::string(to_string(kind)) + (line > 0 ? " (line " + std::to_string(line) + ")" : "") + ": " + message),
      kind_(kind),
      line_(line) {}

Condition Condition::atom(Predicate p, std::vector<std::string> args) {
  Condition c;
  c.kind = Kind::Atom;
  c.pred = p;
  c.args = std::move(args);
  return c;
}

Condition Condition::negate(Condition inner) {
  Condition c;
  c.kind = Kind::Not;
  c.children.push_back(std::move(inner));
  return c;
}

Condition Condition::all_of(std::vector<Condition> cs) {
  Condition c;
  c.kind = Kind::And;
  c.children = std::move(cs);
  return c;
}

Condition Condition::any_of(std::vector<Condition> cs) {
  Condition c;
  c.kind = Kind::Or;
  c.children = std::move(cs);
  return c;
}

Condition Condition::for_all(std::string var, std::string category, Condition body) {
  Condition c;
  c.kind = Kind::ForAll;
  c.var = std::move(var);
  c.var_category = std::move(category);
  c.children.push_back(std::move(body));
  return c;
}

Condition Condition::exists(std::string var, std::string category, Condition body) {
  Condition c = for_all(std::move(var), std::move(category), std::move(body));
  c.kind = Kind::Exists;
  return c;
}

const EntityDecl* TaskDefinition::find_entity(std::string_view n) const {
  for (const auto& e : entities) {
    if (e.name == n) return &e;
  }
  return nullptr;
}

std::vector<TaskEntity> TaskDefinition::cartesian_entities() const {
  std::vector<TaskEntity> out;
  for (const auto& e : entities) out.push_back({e.name, e.category});
  return out;
}

TaskDefinition parse_task(std::string_view text, const Registry& registry) {
  const SExpr doc = Reader(text).read_document();
  if (!is_head(doc, "define") || doc.items.size() < 2 || !is_head(doc.items[1], "task") || doc.items[1].items.size() != 2) {
    syntax(doc, "expected (define (task NAME) ...)");
  }
  TaskDefinition task;
  task.name = atom_of(doc.items[1].items[1], "a task name");
  Builder b(registry, task);

  // Sections may appear in any order; objects and layout are needed before conditions.
  const SExpr* goal = nullptr;
  const SExpr* milestones = nullptr;
  const SExpr* init = nullptr;
  bool have_version = false;
  for (std::size_t i = 2; i < doc.items.size(); ++i) {
    const auto& s = doc.items[i];
    if (!s.is_list || s.items.empty()) syntax(s, "expected a section");
    const auto& head = atom_of(s.items[0], "a section name");
    if (head == ":version") {
      if (s.items.size() != 2) syntax(s, "(:version N)");
      task.version = int_of(s.items[1]);
      have_version = true;
    } else if (head == ":layout") {
      b.layout(s);
    } else if (head == ":objects") {
      b.objects(s);
    } else if (head == ":init") {
      init = &s;
    } else if (head == ":goal") {
      if (s.items.size() != 2) syntax(s, "(:goal EXPR) takes one expression");
      goal = &s;
    } else if (head == ":milestones") {
      milestones = &s;
    } else {
      syntax(s, "unknown section '" + head + "'");
    }
  }
  if (!have_version) syntax(doc, "missing (:version N)");
  if (task.version != kTaskFormatVersion) {
    throw TaskError(TaskErrorKind::VersionMismatch, "task format version " + std::to_string(task.version) + " is not supported", doc.line);
  }
  if (task.layout.rooms.empty() && task.layout.file.empty()) task.layout.rooms.push_back("room");
  if (goal == nullptr) syntax(doc, "missing (:goal ...)");
  if (init != nullptr) b.init(*init);
  std::vector<std::pair<std::string, ArgInfo>> scope;
  task.goal = b.condition(goal->items[1], scope);
  if (milestones != nullptr) {
    for (std::size_t i = 1; i < milestones->items.size(); ++i) task.milestones.push_back(b.condition(milestones->items[i], scope));
    if (task.milestones.empty() || !(task.milestones.back() == task.goal)) {
      throw TaskError(TaskErrorKind::BadMilestones, "the last milestone must be the goal itself", milestones->line);
    }
  }
  return task;
}

TaskDefinition load_task_file(const std::filesystem::path& path, const Registry& registry) {
  std::ifstream in(path);
  if (!in) throw TaskError(TaskErrorKind::UnknownTask, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_task(ss.str(), registry);
  } catch (const TaskError& e) {
    throw TaskError(e.kind(), path.filename().string() + ": " + e.what(), e.line());
  }
}

std::string render_condition(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::Atom: return "(" + std::string(to_string(c.pred)) + join_args(c.args) + ")";
    case Condition::Kind::Not: return "(not " + render_condition(c.children[0]) + ")";
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      std::string out = c.kind == Condition::Kind::And ? "(and" : "(or";
      for (const auto& k : c.children) out += " " + render_condition(k);
      return out + ")";
    }
    case Condition::Kind::ForAll:
    case Condition::Kind::Exists:
      return std::string(c.kind == Condition::Kind::ForAll ? "(forall (" : "(exists (") + c.var + " - " + c.var_category +
             ") " + render_condition(c.children[0]) + ")";
  }
  return "";
}

std::string render_task(const TaskDefinition& t) {
  std::ostringstream out;
  out << "(define (task " << t.name << ")\n";
  out << "  (:version " << t.version << ")\n";
  out << "  (:layout";
  if (!t.layout.file.empty()) {
    out << " (file " << t.layout.file << ")";
  } else {
    out << " (grid " << t.layout.width << " " << t.layout.height << ")";
  }
  if (!t.layout.rooms.empty()) out << " (rooms" << join_args(t.layout.rooms) << ")";
  out << ")\n";
  out << "  (:objects";
  for (std::size_t i = 0; i < t.entities.size(); ++i) {
    out << (i == 0 ? " " : "\n    ") << t.entities[i].name << " - " << t.entities[i].category;
  }
  out << ")\n";
  out << "  (:init";
  for (const auto& lit : t.init) {
    std::string atom = "(" + (lit.pred ? std::string(to_string(*lit.pred)) : std::string("InRoom")) + join_args(lit.args) + ")";
    out << "\n    " << (lit.negated ? "(not " + atom + ")" : atom);
  }
  out << ")\n";
  out << "  (:goal " << render_condition(t.goal) << ")";
  if (!t.milestones.empty()) {
    out << "\n  (:milestones";
    for (const auto& m : t.milestones) out << "\n    " << render_condition(m);
    out << ")";
  }
  out << ")\n";
  return out.str();
}

bool check_goal(const GridWorld& world, const Condition& expr) {
  std::vector<Binding> env;
  return eval(world, expr, env);
}

GoalProgress initial_progress(const TaskDefinition& task) {
  GoalProgress p;
  p.latched.assign(task.milestones.size(), false);
  return p;
}

double compute_reward(const GridWorld& world, const TaskDefinition& task, GoalProgress& progress, RewardMode mode) {
  if (mode == RewardMode::Dense && task.milestones.empty()) {
    throw TaskError(TaskErrorKind::BadMilestones, "dense reward unavailable: task " + task.name + " has no milestones");
  }
  if (progress.goal_met) return 0.0;
  const bool goal = check_goal(world, task.goal);
  if (mode == RewardMode::Sparse) {
    progress.goal_met = goal;
    return goal ? 1.0 : 0.0;
  }
  if (progress.latched.size() != task.milestones.size()) progress.latched.assign(task.milestones.size(), false);
  int newly = 0;
  for (std::size_t i = 0; i < task.milestones.size(); ++i) {
    if (progress.latched[i]) continue;
    if (goal || check_goal(world, task.milestones[i])) {
      progress.latched[i] = true;
      ++newly;
    }
  }
  progress.satisfied_milestones += newly;
  progress.goal_met = goal;
  return static_cast<double>(newly) / static_cast<double>(task.milestones.size());
}

TaskLibrary TaskLibrary::load(const std::filesystem::path& dir, const Registry& registry) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".task") files.push_back(entry.path());
  }
  if (ec) throw TaskError(TaskErrorKind::UnknownTask, "cannot list task directory " + dir.string());
  std::sort(files.begin(), files.end());
  TaskLibrary lib;
  for (const auto& f : files) {
    auto t = load_task_file(f, registry);
    if (lib.find(t.name) != nullptr) throw TaskError(TaskErrorKind::SyntaxError, "duplicate task name " + t.name);
    lib.tasks_.push_back(std::move(t));
  }
  return lib;
}

const TaskLibrary& TaskLibrary::builtin() {
  static const TaskLibrary lib = load(data_dir() / "tasks");
  return lib;
}

const TaskDefinition* TaskLibrary::find(std::string_view name) const {
  for (const auto& t : tasks_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::vector<std::string> TaskLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& t : tasks_) out.push_back(t.name);
  return out;
}

TaskDefinition resolve_task(std::string_view name_or_path, const Registry& registry) {
  if (&registry == &Registry::builtin()) {
    if (const auto* t = TaskLibrary::builtin().find(name_or_path)) return *t;
  }
  const std::filesystem::path p(name_or_path);
  if (std::filesystem::is_regular_file(p)) return load_task_file(p, registry);
  throw TaskError(TaskErrorKind::UnknownTask, "unknown task '" + std::string(name_or_path) + "'");
}

}  // namespace gridhouse
