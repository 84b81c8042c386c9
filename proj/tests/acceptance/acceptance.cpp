// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "gridhouse/agents.hpp"
#include "gridhouse/bench.hpp"
#include "gridhouse/demo.hpp"
#include "gridhouse/state.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gh_test;
using namespace gh_oracle;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(GRIDHOUSE_TEST_DIR) / "fixtures";

// Collects counterexamples; keeps the first few for the report line.
struct Verdict {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;
  std::string first;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

int run_gate(const char* name, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    ++v.failures;
    if (v.first.empty()) v.first = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream line;
  line << (v.failures == 0 ? "PASS" : "FAIL") << "  " << name << "  checks=" << v.checked << " failures=" << v.failures;
  for (const auto& n : v.notes) line << "  " << n;
  line << "  (" << std::fixed;
  line.precision(1);
  line << secs << "s)";
  if (v.failures) line << "\n      first failure: " << v.first;
  std::cout << line.str() << std::endl;
  return v.failures == 0 ? 0 : 1;
}

std::vector<fs::path> fixture_demos() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kFixtures)) {
    if (e.path().extension() == ".demo") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

#ifdef GRIDHOUSE_CLI
int cli_exit(const std::string& args) {
  const std::string cmd = std::string("\"") + GRIDHOUSE_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

std::string fmt(double x, int prec = 0) {
  std::ostringstream s;
  s << std::fixed;
  s.precision(prec);
  s << x;
  return s.str();
}

// --- gates ------------------------------------------------------------------

void throughput(Verdict& v) {
  EnvConfig c;
  c.task = "installing_printer";
  c.grid_size = 10;
  c.action_mode = ActionMode::Primitive;
  const auto r = run_bench(c, 100'000, 1);
  v.expect(r.steps == 100'000, [&] { return "ran " + std::to_string(r.steps) + " steps"; });
  v.expect(r.threads <= 1, [&] { return std::to_string(r.threads) + " threads while stepping"; });
  v.expect(r.steps_per_second >= 600.0, [&] { return fmt(r.steps_per_second) + " steps/s < 600"; });
  v.note("steps/s=" + fmt(r.steps_per_second) + " (threshold 600, x" + fmt(r.steps_per_second / 600.0, 1) + ")");
}

void action_spaces(Verdict& v) {
  const auto& lib = TaskLibrary::builtin();
  for (const auto& t : lib.tasks()) {
    EnvConfig c;
    c.task = t.name;
    Environment env(c);
    v.expect(env.action_space_size() == 15, [&] { return t.name + " primitive size " + std::to_string(env.action_space_size()); });
  }
  // Random validity tables; expected dimension from distinct verbs per category.
  const std::vector<std::string> cats = {"c0", "c1", "c2", "c3", "c4", "c5"};
  Rng rng(0xacce97);
  for (int trial = 0; trial < 1000; ++trial) {
    ValidityTable table;
    std::map<std::string, std::set<int>> distinct;
    for (const auto& cat : cats) {
      auto& verbs = table[cat];
      const auto n = rng.uniform(0, 12);
      for (int k = 0; k < n; ++k) {
        const auto verb = static_cast<int>(rng.uniform(0, kNumCartesianVerbs));
        verbs.push_back(static_cast<CartesianVerb>(verb));
        distinct[cat].insert(verb);
      }
    }
    std::vector<TaskEntity> ents;
    std::size_t expected = 4;
    const auto count = rng.uniform(0, 12);
    for (int k = 0; k < count; ++k) {
      const auto& cat = rng.pick(cats);
      ents.push_back({cat + "_" + std::to_string(k), cat});
      expected += distinct[cat].size();
    }
    const auto got = build_cartesian_space(ents, table).dimension();
    v.expect(got == expected, [&] { return "trial " + std::to_string(trial) + ": " + std::to_string(got) + " != " + std::to_string(expected); });
  }
  const auto table = default_validity_table(Registry::builtin());
  const auto printer = build_cartesian_space(lib.find("installing_printer")->cartesian_entities(), table).dimension();
  const auto salad = build_cartesian_space(lib.find("preparing_salad")->cartesian_entities(), table).dimension();
  // Frozen from the shipped registry; differs from the published 5 and 54.
  v.expect(printer == 8, [&] { return "printer cartesian dim " + std::to_string(printer); });
  v.expect(salad == 55, [&] { return "salad cartesian dim " + std::to_string(salad); });
  v.note("cartesian installing_printer=" + std::to_string(printer) + " (published 5), preparing_salad=" + std::to_string(salad) +
         " (published 54)");
}

bool is_empty_cell(const GridWorld& w, Pos p) {
  const auto& c = w.cell(p);
  if (c.wall || c.furniture != kNoId || w.agent().pos == p) return false;
  for (auto s : c.slots) {
    if (s != kNoId) return false;
  }
  if (c.room == kNoId) return true;
  const auto& floor = w.furniture(w.rooms()[static_cast<std::size_t>(c.room)].floor);
  return !floor.states.has(AbsState::Dusty) && !floor.states.has(AbsState::Stained);
}

void observation_shapes(Verdict& v) {
  for (int n = 8; n <= 20; ++n) {
    for (auto mode : {ObsMode::Partial, ObsMode::Full}) {
      EnvConfig c;
      c.task = "installing_printer";
      c.grid_size = n;
      c.obs_mode = mode;
      Environment env(c);
      const int side = mode == ObsMode::Partial ? 7 : n;
      const auto expect_shape = [&](const Observation& o, const char* when) {
        v.expect(o.rows == side && o.cols == side && o.data.size() == static_cast<std::size_t>(side * side * 31),
                 [&] { return "n=" + std::to_string(n) + " " + when + " shape " + std::to_string(o.rows) + "x" + std::to_string(o.cols); });
      };
      expect_shape(env.reset(static_cast<std::uint64_t>(n)), "reset");
      v.expect(env.observation_shape() == std::vector<int>{side, side, 31}, [&] { return "observation_shape n=" + std::to_string(n); });
      RandomAgent agent(static_cast<std::uint64_t>(n), true);
      for (int i = 0; i < 50 && !env.finished(); ++i) expect_shape(env.step(agent.act(env)).observation, "step");
    }
  }
  std::size_t empties = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto w = random_world(seed);
    const auto full = encode_observation(w, ObsMode::Full);
    for (int y = 0; y < w.height(); ++y) {
      for (int x = 0; x < w.width(); ++x) {
        const auto px = pixel(full, y, x);
        v.expect(px == expected_pixel(w, {x, y}), [&] { return "full pixel seed " + std::to_string(seed); });
        if (!is_empty_cell(w, {x, y})) continue;
        ++empties;
        v.expect(px == decltype(px){}, [&] { return "empty cell not zero, seed " + std::to_string(seed); });
      }
    }
    const auto part = encode_observation(w, ObsMode::Partial);
    for (int r = 0; r < 7; ++r) {
      for (int c = 0; c < 7; ++c) {
        const Pos p = partial_cell(w, r, c);
        const auto px = pixel(part, r, c);
        v.expect(px == expected_pixel(w, p), [&] { return "partial pixel seed " + std::to_string(seed); });
        if (!w.in_bounds(p) || is_empty_cell(w, p)) v.expect(px == decltype(px){}, [&] { return "partial empty not zero"; });
      }
    }
  }
  v.note("empty cells checked=" + std::to_string(empties));
}

void task_library(Verdict& v) {
  const auto& lib = TaskLibrary::builtin();
  v.expect(lib.tasks().size() == 20, [&] { return std::to_string(lib.tasks().size()) + " tasks"; });
  std::size_t worlds = 0;
  for (const auto& t : lib.tasks()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto w = instantiate_task(t, seed);
      ++worlds;
      const auto where = [&] { return t.name + " seed " + std::to_string(seed); };
      const auto failing = failing_init_literals(w, t);
      v.expect(failing.empty(), [&] { return where() + ": init " + failing.front(); });
      v.expect(reachability_check(w), [&] { return where() + ": unreachable"; });
      v.expect(free_components(w) == 1, [&] { return where() + ": free cells split"; });
      v.expect(footprints_disjoint(w), [&] { return where() + ": footprints overlap"; });
      v.expect(!w.check_invariants().has_value(), [&] { return where() + ": " + *w.check_invariants(); });
    }
  }
  // Task files list their furniture explicitly, so the count formulas are
  // exercised on randomly furnished worlds.
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    ProcGenConfig cfg;
    cfg.width = 8 + static_cast<int>(seed % 13);
    cfg.height = 8 + static_cast<int>((seed / 13) % 13);
    cfg.num_rooms = 1 + static_cast<int>(seed % 4);
    cfg.seed = seed;
    std::optional<GridWorld> w;
    while (!w) {
      try {
        w = generate_random_world(cfg);
      } catch (const ProcGenError&) {
        if (cfg.num_rooms == 1) throw;
        --cfg.num_rooms;
      }
    }
    ++worlds;
    const auto bad = count_violation(*w);
    v.expect(!bad, [&] { return "random world " + std::to_string(seed) + ": " + *bad; });
    v.expect(free_components(*w) == 1 && footprints_disjoint(*w), [&] { return "random world " + std::to_string(seed) + " layout"; });
  }
  v.note("worlds=" + std::to_string(worlds));
}

struct Episode {
  double total = 0.0;
  bool terminated = false;
  bool truncated = false;
  std::size_t steps = 0;
};

Episode run_plan(Environment& env, const std::vector<int>& plan) {
  Episode e;
  for (int a : plan) {
    if (env.finished()) break;
    const auto r = env.step(a);
    e.total += r.reward;
    e.terminated = r.terminated;
    e.truncated = r.truncated;
    ++e.steps;
  }
  return e;
}

Episode run_scripted(const std::string& task, std::uint64_t seed, RewardMode mode) {
  EnvConfig c;
  c.task = task;
  c.reward_mode = mode;
  c.atom_deltas = false;
  Environment env(c);
  env.reset(seed);
  std::string why;
  const auto plan = scripted_solution(env.world(), env.task(), &why);
  if (!plan) throw std::runtime_error(task + " seed " + std::to_string(seed) + ": " + why);
  return run_plan(env, *plan);
}

void solvability(Verdict& v) {
  for (const char* task : {"installing_printer", "putting_away_dishes", "washing_pots_and_pans"}) {
    for (std::uint64_t seed : {0, 1, 2}) {
      const auto e = run_scripted(task, seed, RewardMode::Sparse);
      v.expect(e.total == 1.0 && e.terminated && !e.truncated,
               [&] { return std::string(task) + " seed " + std::to_string(seed) + " reward " + fmt(e.total, 3); });
    }
  }
  const auto demo = load_demo(kFixtures / "installing_printer_bfs_6x6.demo");
  Environment env(demo.config);
  env.reset();
  const auto plan = bfs_solve(env);
  v.expect(plan.has_value(), [] { return "bfs found no solution"; });
  if (!plan) return;
  const auto oracle = shortest_solution(env.world(), env.task());
  v.expect(oracle && *oracle == plan->size(), [&] { return "bfs length " + std::to_string(plan->size()) + " vs independent search"; });
  v.expect(plan->size() == demo.steps.size(), [&] { return "bfs length " + std::to_string(plan->size()) + " vs fixture"; });
  v.expect(plan->size() == 5, [&] { return "bfs length " + std::to_string(plan->size()) + " vs frozen 5"; });
  const auto e = run_plan(env, *plan);
  v.expect(e.terminated && e.total == 1.0, [] { return "bfs plan does not finish the task"; });
  v.note("bfs 6x6 length=" + std::to_string(plan->size()));
}

void reward_contracts(Verdict& v) {
  const auto& lib = TaskLibrary::builtin();
  for (const auto& t : lib.tasks()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      EnvConfig c;
      c.task = t.name;
      c.max_steps = 300;
      c.atom_deltas = false;
      Environment env(c);
      env.reset(seed);
      RandomAgent agent(seed, true);
      double total = 0.0;
      while (!env.finished()) total += env.step(agent.act(env)).reward;
      v.expect(total == 0.0 || total == 1.0, [&] { return t.name + " sparse random total " + fmt(total, 6); });
      v.expect(total == env.episode_reward(), [&] { return t.name + " episode_reward disagrees"; });
      const auto s = run_scripted(t.name, seed, RewardMode::Sparse);
      v.expect(s.total == 1.0, [&] { return t.name + " sparse scripted total " + fmt(s.total, 6); });
    }
  }
  for (const char* task : {"putting_away_dishes", "washing_pots_and_pans"}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      EnvConfig c;
      c.task = task;
      c.reward_mode = RewardMode::Dense;
      c.max_steps = 400;
      c.atom_deltas = false;
      Environment env(c);
      env.reset(seed);
      RandomAgent agent(seed, true);
      double total = 0.0;
      while (!env.finished()) {
        const auto r = env.step(agent.act(env));
        v.expect(r.reward >= 0.0, [&] { return std::string(task) + " negative dense reward"; });
        total += r.reward;
      }
      v.expect(total >= 0.0 && total <= 1.0 + 1e-9, [&] { return std::string(task) + " dense random total " + fmt(total, 6); });
    }
    for (std::uint64_t seed : {0, 1, 2}) {
      const auto e = run_scripted(task, seed, RewardMode::Dense);
      v.expect(std::abs(e.total - 1.0) <= 1e-9 && e.terminated,
               [&] { return std::string(task) + " dense scripted total " + fmt(e.total, 12); });
    }
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EnvConfig c;
    c.task = "installing_printer";
    c.atom_deltas = false;
    Environment env(c);
    env.reset(seed);
    StepResult r;
    int steps = 0;
    while (!env.finished()) {
      r = env.step(static_cast<int>(PrimitiveAction::TurnLeft));
      ++steps;
    }
    v.expect(steps == 1000 && r.truncated && !r.terminated, [&] { return "truncation after " + std::to_string(steps); });
    v.expect(r.reward == 0.0 && env.episode_reward() == 0.0, [] { return "truncation changed the reward"; });
  }
  // Truncation after partial progress leaves the earned dense reward intact.
  EnvConfig c;
  c.task = "putting_away_dishes";
  c.reward_mode = RewardMode::Dense;
  c.atom_deltas = false;
  Environment env(c);
  env.reset(0);
  const auto plan = scripted_solution(env.world(), env.task());
  double earned = 0.0;
  for (std::size_t i = 0; i + 1 < plan->size(); ++i) earned += env.step((*plan)[i]).reward;
  StepResult last;
  while (!env.finished()) last = env.step(static_cast<int>(PrimitiveAction::TurnLeft));
  v.expect(last.truncated && last.reward == 0.0 && env.episode_reward() == earned,
           [&] { return "dense truncation total " + fmt(env.episode_reward(), 6) + " vs earned " + fmt(earned, 6); });
}

void determinism_and_replay(Verdict& v) {
  const auto& tasks = TaskLibrary::builtin().tasks();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EnvConfig c;
    c.task = tasks[seed % tasks.size()].name;
    c.obs_mode = seed % 2 ? ObsMode::Full : ObsMode::Partial;
    c.action_mode = seed % 3 == 0 ? ActionMode::Cartesian : ActionMode::Primitive;
    c.max_steps = 250;
    c.seed = seed;
    Environment a(c);
    Environment b(c);
    const auto where = [&] { return c.task + " seed " + std::to_string(seed); };
    v.expect(a.reset() == b.reset(), [&] { return where() + ": reset observation"; });
    // Actions come from a seeded stream independent of either environment.
    Rng actions(seed * 7919 + 1);
    while (!a.finished()) {
      const int act = static_cast<int>(actions.uniform(0, static_cast<std::int64_t>(a.action_space_size())));
      const auto ra = a.step(act);
      const auto rb = b.step(act);
      v.expect(ra.observation == rb.observation && ra.reward == rb.reward && ra.terminated == rb.terminated &&
                   ra.truncated == rb.truncated,
               [&] { return where() + ": streams diverge"; });
    }
    v.expect(b.finished() && a.state_hash() == b.state_hash(), [&] { return where() + ": final hash"; });
  }
  std::size_t tampers = 0;
  for (const auto& p : fixture_demos()) {
    const auto d = load_demo(p);
    const auto r = replay_demo(d);
    v.expect(r.ok(), [&] { return p.filename().string() + ": " + std::string(to_string(r.status)) + " " + r.detail; });
#ifdef GRIDHOUSE_CLI
    v.expect(cli_exit("replay \"" + p.string() + "\"") == 0, [&] { return "cli replay " + p.filename().string(); });
#endif
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      for (int bit = 0; bit < 5; ++bit) {
        auto t = d;
        t.steps[i].action ^= 1 << bit;
        ++tampers;
        v.expect(!replay_demo(t).ok(), [&] { return p.filename().string() + " tamper undetected at step " + std::to_string(i); });
      }
    }
  }
#ifdef GRIDHOUSE_CLI
  {
    auto d = load_demo(kFixtures / "installing_printer_seed0.demo");
    d.steps[0].action ^= 1;
    const auto tmp = fs::temp_directory_path() / "gridhouse_acceptance_tampered.demo";
    save_demo(d, tmp);
    v.expect(cli_exit("replay \"" + tmp.string() + "\"") == 3, [] { return "cli replay of a tampered demo did not exit 3"; });
    fs::remove(tmp);
  }
#endif
  v.note("fixtures=" + std::to_string(fixture_demos().size()) + " tampers=" + std::to_string(tampers));
}

void predicate_oracle(Verdict& v) {
  std::size_t atoms = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto w = random_world(seed);
    const auto listed = all_true_predicates(w);
    const std::set<GroundAtom> truth(listed.begin(), listed.end());
    v.expect(truth.size() == listed.size(), [&] { return "duplicate atoms, seed " + std::to_string(seed); });
    const auto ents = all_entities(w);
    for (int pi = 0; pi < kNumPredicates; ++pi) {
      const auto p = static_cast<Predicate>(pi);
      for (auto a : ents) {
        if (arity(p) == 1) {
          ++atoms;
          v.expect(eval_atom(w, p, a) == (truth.count({p, a, std::nullopt}) == 1),
                   [&] { return "seed " + std::to_string(seed) + " " + render_atom(w, {p, a, std::nullopt}); });
          continue;
        }
        for (auto b : ents) {
          ++atoms;
          v.expect(eval_atom(w, p, a, b) == (truth.count({p, a, b}) == 1),
                   [&] { return "seed " + std::to_string(seed) + " " + render_atom(w, {p, a, b}); });
        }
      }
    }
    for (auto a : ents) {
      if (a.is_object()) {
        v.expect(eval_atom(w, Predicate::InReach, a) == (eval_atom(w, Predicate::InFOV, a) || eval_atom(w, Predicate::InHand, a)),
                 [&] { return "InReach law, seed " + std::to_string(seed); });
      }
      for (auto b : ents) {
        v.expect(eval_atom(w, Predicate::OnTop, a, b) == eval_atom(w, Predicate::Under, b, a),
                 [&] { return "OnTop/Under, seed " + std::to_string(seed); });
        v.expect(eval_atom(w, Predicate::NextTo, a, b) == eval_atom(w, Predicate::NextTo, b, a),
                 [&] { return "NextTo symmetry, seed " + std::to_string(seed); });
        v.expect(eval_atom(w, Predicate::AtSameLocation, a, b) == eval_atom(w, Predicate::AtSameLocation, b, a),
                 [&] { return "AtSameLocation symmetry, seed " + std::to_string(seed); });
      }
    }
  }
  v.note("ground atoms=" + std::to_string(atoms));
}

GridWorld kitchen() {
  auto w = GridWorld::walled_room(10, 10, "kitchen");
  w.set_agent({2, 2}, Heading::East);
  return w;
}

void transitions(Verdict& v) {
  const auto only = [&](const std::vector<StateChange>& got, StateChange want, const char* rule) {
    v.expect(got.size() == 1 && got[0] == want, [&] { return std::string(rule) + ": " + std::to_string(got.size()) + " changes"; });
  };
  {  // T1 soak: rag inside a running sink
    auto w = kitchen();
    const auto sink = put(w, "sink", "sink_0", 5, 5);
    const auto rag = add(w, "rag", "rag_0", 5, 5, 0);
    v.expect(apply_transitions(w).empty(), [] { return "T1 fired with the tap off"; });
    w.set_furniture_state(sink, AbsState::ToggledOn, true);
    only(apply_transitions(w), {O(rag), AbsState::Soaked, true, ChangeCause::Soak}, "T1");
  }
  {  // T2 freeze: fish inside a running fridge
    auto w = kitchen();
    const auto fridge = put(w, "refrigerator", "refrigerator_0", 5, 5);
    const auto fish = add(w, "fish", "fish_0", 5, 5, 1);
    v.expect(apply_transitions(w).empty(), [] { return "T2 fired with the fridge off"; });
    w.set_furniture_state(fridge, AbsState::ToggledOn, true);
    only(apply_transitions(w), {O(fish), AbsState::Frozen, true, ChangeCause::Freeze}, "T2");
  }
  {  // T3 clean dust: soaked rag next to a dusty shoe
    auto w = kitchen();
    const auto shoe = add(w, "shoe", "shoe_0", 5, 5, 0);
    const auto rag = add(w, "rag", "rag_0", 5, 6, 0);
    w.set_object_state(shoe, AbsState::Dusty, true);
    v.expect(apply_transitions(w).empty(), [] { return "T3 fired with a dry rag"; });
    w.set_object_state(rag, AbsState::Soaked, true);
    only(apply_transitions(w), {O(shoe), AbsState::Dusty, false, ChangeCause::CleanDust}, "T3");
  }
  {  // T4 clean stain: also needs soap in reach
    auto w = kitchen();
    const auto plate = add(w, "plate", "plate_0", 5, 5, 0);
    const auto rag = add(w, "rag", "rag_0", 5, 6, 0);
    w.set_object_state(plate, AbsState::Stained, true);
    w.set_object_state(rag, AbsState::Soaked, true);
    v.expect(apply_transitions(w).empty(), [] { return "T4 fired without soap"; });
    add(w, "soap", "soap_0", 4, 5, 0);
    only(apply_transitions(w), {O(plate), AbsState::Stained, false, ChangeCause::CleanStain}, "T4");
  }
  {  // T5 sweep: carried broom facing the floor
    auto w = kitchen();
    const auto floor = w.rooms()[0].floor;
    w.set_furniture_state(floor, AbsState::Dusty, true);
    const auto broom = add(w, "broom", "broom_0", 3, 2, 0);
    v.expect(apply_transitions(w).empty(), [] { return "T5 fired with the broom on the floor"; });
    w.carry_object(broom);
    w.set_agent({1, 1}, Heading::North);
    v.expect(apply_transitions(w).empty(), [] { return "T5 fired facing a wall"; });
    w.set_agent({1, 1}, Heading::South);
    only(apply_transitions(w), {F(floor), AbsState::Dusty, false, ChangeCause::Sweep}, "T5");
  }
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto w = random_world(seed);
    apply_transitions(w);
    const auto h = w.state_hash();
    const auto again = apply_transitions(w);
    v.expect(again.empty() && w.state_hash() == h, [&] { return "not idempotent, seed " + std::to_string(seed); });
  }
}

}  // namespace

int main() {
  int failed = 0;
  failed += run_gate("throughput", throughput);
  failed += run_gate("action-space-counts", action_spaces);
  failed += run_gate("observation-shapes", observation_shapes);
  failed += run_gate("task-library", task_library);
  failed += run_gate("solvability", solvability);
  failed += run_gate("reward-contracts", reward_contracts);
  failed += run_gate("determinism-and-replay", determinism_and_replay);
  failed += run_gate("predicate-oracle", predicate_oracle);
  failed += run_gate("transition-rules", transitions);
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << std::endl;
  return failed == 0 ? 0 : 1;
}
