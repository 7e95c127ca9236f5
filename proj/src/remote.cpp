// Child-process transport for remotely served problems.
//
// Wire format: one JSON object per line on the child's stdin/stdout.
//   {"op":"info"}                        -> {"name":str,"dim":int,"x0":[...]}
//   {"id":n,"op":"eval_f","x":[...]}     -> {"id":n,"f":float}
//   {"id":n,"op":"eval_grad","x":[...]}  -> {"id":n,"g":[...]}
//   {"op":"shutdown"}                    -> child exits 0

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>
#include <mutex>
#include <string>

#include "cbo/problems.hpp"
#include "json.hpp"

namespace cbo {
namespace {

using nlohmann::json;

class RemoteEndpoint {
 public:
  RemoteEndpoint(const std::string& command, std::chrono::milliseconds handshake_timeout) {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0)
      throw ConnectionError(std::string("socketpair: ") + std::strerror(errno));
    pid_ = ::fork();
    if (pid_ < 0) {
      ::close(fds[0]);
      ::close(fds[1]);
      throw ConnectionError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid_ == 0) {
      // Own process group, so shutdown also reaches whatever sh spawns.
      ::setpgid(0, 0);
      // dup2 clears CLOEXEC on the new descriptors.
      ::dup2(fds[1], STDIN_FILENO);
      ::dup2(fds[1], STDOUT_FILENO);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::setpgid(pid_, pid_);  // also from the parent, whichever runs first
    ::close(fds[1]);
    fd_ = fds[0];

    json info;
    try {
      send(json{{"op", "info"}});
      info = receive(handshake_timeout);
    } catch (const TransportError& e) {
      shutdown();
      throw ConnectionError(std::string("handshake failed: ") + e.what());
    }
    if (info.contains("error")) {
      shutdown();
      throw ConnectionError("remote refused handshake: " + info["error"].dump());
    }
    try {
      name_ = info.at("name").get<std::string>();
      dim_ = info.at("dim").get<Eigen::Index>();
      const auto x0 = info.at("x0").get<std::vector<double>>();
      if (dim_ < 1 || static_cast<Eigen::Index>(x0.size()) != dim_)
        throw ProtocolError("x0 length does not match dim");
      x0_ = Eigen::Map<const Point>(x0.data(), dim_);
    } catch (const json::exception& e) {
      shutdown();
      throw ConnectionError(std::string("malformed handshake: ") + e.what());
    } catch (const ProtocolError& e) {
      shutdown();
      throw ConnectionError(std::string("malformed handshake: ") + e.what());
    }
  }

  RemoteEndpoint(const RemoteEndpoint&) = delete;
  RemoteEndpoint& operator=(const RemoteEndpoint&) = delete;
  ~RemoteEndpoint() { shutdown(); }

  const std::string& name() const { return name_; }
  Eigen::Index dim() const { return dim_; }
  const Point& x0() const { return x0_; }

  double eval_f(const Point& x) {
    const json reply = call("eval_f", x);
    try {
      return reply.at("f").get<double>();
    } catch (const json::exception& e) {
      throw ProtocolError(std::string("bad eval_f reply: ") + e.what());
    }
  }

  Point eval_grad(const Point& x) {
    const json reply = call("eval_grad", x);
    std::vector<double> g;
    try {
      g = reply.at("g").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ProtocolError(std::string("bad eval_grad reply: ") + e.what());
    }
    if (static_cast<Eigen::Index>(g.size()) != dim_)
      throw ProtocolError("eval_grad reply has wrong length");
    return Eigen::Map<const Point>(g.data(), dim_);
  }

 private:
  json call(const char* op, const Point& x) {
    std::lock_guard lock(mu_);
    if (fd_ < 0) throw TransportError("remote problem '" + name_ + "' is closed");
    const std::int64_t id = next_id_++;
    send(json{{"id", id}, {"op", op}, {"x", std::vector<double>(x.data(), x.data() + x.size())}});
    json reply = receive(std::chrono::milliseconds(-1));
    if (reply.contains("error")) throw ProtocolError("remote error: " + reply["error"].dump());
    if (!reply.contains("id") || reply["id"] != id)
      throw ProtocolError("response id does not match request " + std::to_string(id));
    return reply;
  }

  void send(const json& msg) {
    const std::string line = msg.dump() + "\n";
    std::size_t off = 0;
    while (off < line.size()) {
      const ssize_t n = ::send(fd_, line.data() + off, line.size() - off, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("write to remote problem failed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  // Negative timeout waits forever.
  json receive(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (auto pos = buffer_.find('\n'); pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        try {
          return json::parse(line);
        } catch (const json::parse_error&) {
          throw ProtocolError("unparseable line from remote problem: " + line.substr(0, 200));
        }
      }
      int wait_ms = -1;
      if (timeout.count() >= 0) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) throw ConnectionError("timed out waiting for remote problem");
        wait_ms = static_cast<int>(left.count());
      }
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, wait_ms);
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("poll: ") + std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("read from remote problem failed: ") + std::strerror(errno));
      }
      if (n == 0) throw TransportError("remote problem exited");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  void shutdown() {
    if (fd_ >= 0) {
      const std::string bye = "{\"op\":\"shutdown\"}\n";
      (void)::send(fd_, bye.data(), bye.size(), MSG_NOSIGNAL);
      ::close(fd_);
      fd_ = -1;
    }
    if (pid_ > 0) {
      // Give a well-behaved child a moment, then make sure it is gone.
      for (int i = 0; i < 50; ++i) {
        if (::waitpid(pid_, nullptr, WNOHANG) == pid_) {
          ::kill(-pid_, SIGKILL);  // stragglers left in the group
          pid_ = -1;
          return;
        }
        ::usleep(10'000);
      }
      ::kill(-pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
    }
  }

  std::mutex mu_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
  std::int64_t next_id_ = 0;
  std::string name_;
  Eigen::Index dim_ = 0;
  Point x0_;
};

}  // namespace

Problem connect_remote(const std::string& command, std::chrono::milliseconds handshake_timeout) {
  auto endpoint = std::make_shared<RemoteEndpoint>(command, handshake_timeout);
  Problem p;
  p.name = endpoint->name();
  p.dim = endpoint->dim();
  p.x0 = endpoint->x0();
  p.eval_f = [endpoint](const Point& x) { return endpoint->eval_f(x); };
  p.eval_grad = [endpoint](const Point& x) { return endpoint->eval_grad(x); };
  // The protocol does not carry the optimum; a native twin can fill it in.
  if (auto native = find_builtin(p.name)) p.f_star = native->f_star;
  return p;
}

}  // namespace cbo
