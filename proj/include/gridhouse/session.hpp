#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "gridhouse/demo.hpp"
#include "gridhouse/json_io.hpp"

namespace gridhouse {

inline constexpr int kProtocolVersion = 1;

// Full symbolic view of the episode; the same document the server sends.
// Fields are written in a fixed order so dump(parse(dump(s))) == dump(s).
Json snapshot_json(const Environment& env, double last_reward = 0.0, int last_action = -1);

// Keyboard letters shared by the terminal and browser controllers.
char action_key(PrimitiveAction a);
std::optional<PrimitiveAction> action_for_key(char key);
Json action_legend();

// One client connection: protocol state machine around one environment.
// Transport-free so it can be driven directly by tests.
class Session {
 public:
  explicit Session(std::uint64_t id = 0, std::filesystem::path autosave_dir = {});

  // Every message is answered by exactly one reply.
  Json handle(const Json& message);
  std::string handle_text(std::string_view text);

  std::uint64_t id() const { return id_; }
  bool greeted() const { return greeted_; }
  const Environment* environment() const { return env_.get(); }
  // Current demo buffer; empty before the first reset.
  std::optional<DemoRecord> demo() const;
  // Writes the buffer under the autosave directory if there is anything to keep.
  std::optional<std::filesystem::path> flush();

 private:
  Json on_hello(const Json& m);
  Json on_reset(const Json& m);
  Json on_action(const Json& m);
  Json on_set_view(const Json& m);
  Json on_save_demo(const Json& m);

  std::uint64_t id_;
  std::filesystem::path autosave_dir_;
  bool greeted_ = false;
  std::unique_ptr<Environment> env_;
  std::unique_ptr<DemoRecorder> recorder_;
  std::string view_mode_ = "default";
  int view_z_ = 0;
  bool closeup_ = false;
};

Json error_message(std::string_view code, std::string_view message);

}  // namespace gridhouse
