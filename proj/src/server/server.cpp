#include "gridhouse/server.hpp"

#include <atomic>
#include <iostream>
#include <list>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "gridhouse/session.hpp"

namespace gridhouse {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct Connection {
  explicit Connection(tcp::socket s, std::uint64_t id, const std::filesystem::path& dir) : ws(std::move(s)), session(id, dir) {}
  websocket::stream<tcp::socket> ws;
  Session session;
  std::mutex mu;  // session state; held while a message is handled and at shutdown
  bool closed = false;
};

struct Server::Impl {
  ServerOptions options;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::atomic<bool> stopping{false};
  std::atomic<std::uint64_t> next_id{1};
  std::mutex mu;
  std::list<std::shared_ptr<Connection>> live;
  std::vector<std::thread> threads;

  void accept_next() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec || stopping) return;
      auto c = std::make_shared<Connection>(std::move(socket), next_id++, options.demo_dir);
      {
        std::lock_guard lock(mu);
        live.push_back(c);
        threads.emplace_back([this, c] { serve(c); });
      }
      accept_next();
    });
  }

  void serve(const std::shared_ptr<Connection>& c) {
    try {
      c->ws.accept();
      beast::flat_buffer buf;
      for (;;) {
        buf.clear();
        c->ws.read(buf);
        std::string reply;
        {
          std::lock_guard lock(c->mu);
          if (c->closed) break;
          reply = c->session.handle_text(beast::buffers_to_string(buf.data()));
        }
        c->ws.text(true);
        c->ws.write(asio::buffer(reply));
      }
    } catch (const std::exception&) {
      // Client went away or the server is shutting down.
    }
    std::lock_guard lock(c->mu);
    if (!c->closed) {
      c->closed = true;
      try {
        c->session.flush();
      } catch (const std::exception& e) {
        std::cerr << "session " << c->session.id() << ": demo flush failed: " << e.what() << "\n";
      }
    }
  }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  try {
    const tcp::endpoint ep{asio::ip::make_address(impl_->options.host), impl_->options.port};
    impl_->acceptor.open(ep.protocol());
    impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
    impl_->acceptor.bind(ep);
    impl_->acceptor.listen();
  } catch (const std::exception& e) {
    throw BindFailure("cannot bind " + impl_->options.host + ":" + std::to_string(impl_->options.port) + ": " + e.what());
  }
}

Server::~Server() {
  stop();
  for (auto& t : impl_->threads) {
    if (t.joinable()) t.join();
  }
}

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  impl_->accept_next();
  impl_->io.run();
  // Flush and disconnect whatever is still attached.
  std::list<std::shared_ptr<Connection>> live;
  {
    std::lock_guard lock(impl_->mu);
    live = impl_->live;
  }
  for (auto& c : live) {
    std::lock_guard lock(c->mu);
    if (c->closed) continue;
    c->closed = true;
    try {
      c->session.flush();
    } catch (const std::exception& e) {
      std::cerr << "session " << c->session.id() << ": demo flush failed: " << e.what() << "\n";
    }
    beast::error_code ec;
    c->ws.next_layer().shutdown(tcp::socket::shutdown_both, ec);
  }
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(impl_->mu);
    threads.swap(impl_->threads);
  }
  for (auto& t : threads) t.join();
}

void Server::stop() {
  if (impl_->stopping.exchange(true)) return;
  asio::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
    impl_->io.stop();
  });
}

}  // namespace gridhouse
