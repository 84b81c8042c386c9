#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>

namespace gridhouse {

class BindFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  unsigned short port = 8765;      // 0 picks a free port
  std::filesystem::path demo_dir;  // session demo buffers are flushed here on shutdown
};

// WebSocket front end: one Session per connection, one thread per connection,
// text frames carrying one JSON message each.
class Server {
 public:
  explicit Server(ServerOptions options);  // binds; throws BindFailure
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  // Serves until stop(); then flushes and closes every live session.
  void run();
  void stop();  // thread-safe

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gridhouse
