#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridhouse/agents.hpp"
#include "gridhouse/demo.hpp"
#include "gridhouse/render.hpp"
#include "gridhouse/session.hpp"

namespace py = pybind11;
using namespace gridhouse;

namespace {

py::array_t<std::uint8_t> to_array(const Observation& o) {
  py::array_t<std::uint8_t> a({o.rows, o.cols, kObsChannels});
  std::copy(o.data.begin(), o.data.end(), a.mutable_data());
  return a;
}

py::dict info_dict(const Environment& env, const StepInfo& info) {
  py::dict d;
  d["succeeded"] = info.outcome.succeeded;
  d["reason"] = std::string(to_string(info.outcome.reason));
  d["satisfied_milestones"] = info.progress.satisfied_milestones;
  d["goal_met"] = info.progress.goal_met;
  py::list added;
  py::list removed;
  for (const auto& a : info.atoms_added) added.append(render_atom(env.world(), a));
  for (const auto& a : info.atoms_removed) removed.append(render_atom(env.world(), a));
  d["atoms_added"] = added;
  d["atoms_removed"] = removed;
  return d;
}

EnvConfig make_config(const std::string& task, const std::string& action_mode, const std::string& obs_mode, const std::string& reward_mode,
                      int max_steps, std::optional<int> grid_size, std::optional<int> rooms, std::uint64_t seed, bool atom_deltas) {
  EnvConfig c;
  c.task = task;
  c.action_mode = parse_action_mode(action_mode);
  c.obs_mode = parse_obs_mode(obs_mode);
  c.reward_mode = parse_reward_mode(reward_mode);
  c.max_steps = max_steps;
  c.grid_size = grid_size;
  c.rooms = rooms;
  c.seed = seed;
  c.atom_deltas = atom_deltas;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "gridhouse simulator core";
  py::register_exception<TaskError>(m, "TaskError", PyExc_ValueError);
  py::register_exception<ProcGenError>(m, "ProcGenError", PyExc_RuntimeError);
  py::register_exception<EpisodeFinished>(m, "EpisodeFinished", PyExc_RuntimeError);
  py::register_exception<InvalidAction>(m, "InvalidAction", PyExc_IndexError);

  m.attr("OBS_CHANNELS") = kObsChannels;
  m.attr("NUM_PRIMITIVE_ACTIONS") = kNumPrimitiveActions;

  py::class_<Environment>(m, "Env")
      .def(py::init([](const std::string& task, const std::string& action_mode, const std::string& obs_mode, const std::string& reward_mode,
                       int max_steps, std::optional<int> grid_size, std::optional<int> rooms, std::uint64_t seed, bool atom_deltas) {
             return std::make_unique<Environment>(
                 make_config(task, action_mode, obs_mode, reward_mode, max_steps, grid_size, rooms, seed, atom_deltas));
           }),
           py::arg("task") = "installing_printer", py::arg("action_mode") = "primitive", py::arg("obs_mode") = "partial",
           py::arg("reward_mode") = "sparse", py::arg("max_steps") = 1000, py::arg("grid_size") = py::none(), py::arg("rooms") = py::none(),
           py::arg("seed") = 0, py::arg("atom_deltas") = true)
      .def(
          "reset", [](Environment& e, std::optional<std::uint64_t> seed) { return to_array(seed ? e.reset(*seed) : e.reset()); },
          py::arg("seed") = py::none())
      .def("step",
           [](Environment& e, int action) {
             const auto r = e.step(action);
             return py::make_tuple(to_array(r.observation), r.reward, r.terminated, r.truncated, info_dict(e, r.info));
           })
      .def_property_readonly("action_space_size", &Environment::action_space_size)
      .def_property_readonly("observation_shape", &Environment::observation_shape)
      .def("action_label", &Environment::action_label)
      .def("valid_actions", &Environment::valid_actions)
      .def_property_readonly("state_hash", &Environment::state_hash)
      .def_property_readonly("task_name", [](const Environment& e) { return e.task().name; })
      .def_property_readonly("step_count", [](const Environment& e) { return e.world().step_count(); })
      .def_property_readonly("terminated", &Environment::terminated)
      .def_property_readonly("truncated", &Environment::truncated)
      .def_property_readonly("episode_reward", &Environment::episode_reward)
      .def("true_atoms",
           [](const Environment& e) {
             std::vector<std::string> out;
             for (const auto& a : all_true_predicates(e.world())) out.push_back(render_atom(e.world(), a));
             return out;
           })
      .def("render", [](const Environment& e) { return render_ascii(e.world()); })
      .def("snapshot", [](const Environment& e) { return snapshot_json(e).dump(); })
      .def("scripted_solution",
           [](const Environment& e) -> std::optional<std::vector<int>> { return scripted_solution(e.world(), e.task()); })
      .def("bfs_solution", [](const Environment& e, std::size_t max_states) { return bfs_solve(e, max_states); },
           py::arg("max_states") = 2'000'000);

  m.def("task_names", [] { return TaskLibrary::builtin().names(); });
  m.def("primitive_actions", [] {
    std::vector<std::string> out;
    for (int i = 0; i < kNumPrimitiveActions; ++i) out.emplace_back(to_string(static_cast<PrimitiveAction>(i)));
    return out;
  });
  m.def("replay_demo_text", [](const std::string& text) { return std::string(to_string(replay_demo_text(text).status)); });
}
