#include "purifier/sync.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <vector>

#include <json.hpp>

namespace purifier {

using json = nlohmann::json;

const char* to_string(Role r) {
  return r == Role::Collector ? "collector" : "medic";
}

Role role_from_string(const std::string& s) {
  if (s == "collector") return Role::Collector;
  if (s == "medic") return Role::Medic;
  throw Error(ErrorKind::Config, "unknown role: " + s);
}

// ---------------------------------------------------------------------------
// Transport

namespace {

class FdTransport final : public Transport {
 public:
  explicit FdTransport(int fd) : fd_(fd) {}
  ~FdTransport() override {
    if (fd_ >= 0) ::close(fd_);
  }

  void send_line(const std::string& line) override {
    std::string msg = line;
    msg.push_back('\n');
    const char* p = msg.data();
    std::size_t left = msg.size();
    while (left > 0) {
      ssize_t n = ::send(fd_, p, left, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorKind::Sync, "peer lost (send failed)");
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
  }

  std::optional<std::string> recv_line(
      std::chrono::milliseconds timeout) override {
    auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      auto now = std::chrono::steady_clock::now();
      if (now >= deadline) return std::nullopt;
      auto remaining =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
      struct pollfd pfd{fd_, POLLIN, 0};
      int pr = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
      if (pr < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorKind::Sync, "peer lost (poll failed)");
      }
      if (pr == 0) return std::nullopt;
      char chunk[4096];
      ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw Error(ErrorKind::Sync, "peer lost (recv failed)");
      }
      if (n == 0) throw Error(ErrorKind::Sync, "peer lost (connection closed)");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  int fd_;
  std::string buffer_;
};

struct Endpoint {
  std::string host;
  std::uint16_t port;
};

Endpoint parse_endpoint(const std::string& s) {
  auto colon = s.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::Config, "endpoint must be host:port, got " + s);
  }
  Endpoint ep;
  ep.host = s.substr(0, colon);
  if (ep.host.empty()) ep.host = "127.0.0.1";
  int port = std::stoi(s.substr(colon + 1));
  if (port <= 0 || port > 65535) {
    throw Error(ErrorKind::Config, "invalid port in endpoint " + s);
  }
  ep.port = static_cast<std::uint16_t>(port);
  return ep;
}

sockaddr_in make_addr(const Endpoint& ep) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(ep.port);
  if (::inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) != 1) {
    throw Error(ErrorKind::Config, "cannot parse address " + ep.host);
  }
  return addr;
}

}  // namespace

std::unique_ptr<Transport> make_fd_transport(int fd) {
  return std::make_unique<FdTransport>(fd);
}

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>
make_transport_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw Error(ErrorKind::Runtime, "socketpair failed");
  }
  return {make_fd_transport(fds[0]), make_fd_transport(fds[1])};
}

std::unique_ptr<Transport> tcp_listen_accept(
    const std::string& endpoint, std::chrono::milliseconds timeout) {
  Endpoint ep = parse_endpoint(endpoint);
  int lfd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (lfd < 0) throw Error(ErrorKind::Runtime, "socket failed");
  int one = 1;
  ::setsockopt(lfd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = make_addr(ep);
  if (::bind(lfd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(lfd);
    throw Error(ErrorKind::Runtime,
                "bind failed on " + endpoint + ": " + std::strerror(errno));
  }
  if (::listen(lfd, 1) != 0) {
    ::close(lfd);
    throw Error(ErrorKind::Runtime, "listen failed");
  }
  struct pollfd pfd{lfd, POLLIN, 0};
  int pr = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  if (pr <= 0) {
    ::close(lfd);
    throw Error(ErrorKind::Sync, "peer lost (no connection within timeout)");
  }
  int cfd = ::accept(lfd, nullptr, nullptr);
  ::close(lfd);
  if (cfd < 0) throw Error(ErrorKind::Sync, "accept failed");
  return make_fd_transport(cfd);
}

std::unique_ptr<Transport> tcp_connect(const std::string& endpoint,
                                       std::chrono::milliseconds timeout) {
  Endpoint ep = parse_endpoint(endpoint);
  auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw Error(ErrorKind::Runtime, "socket failed");
    sockaddr_in addr = make_addr(ep);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0) {
      return make_fd_transport(fd);
    }
    ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline) {
      throw Error(ErrorKind::Sync, "peer lost (connect timeout to " +
                                       endpoint + ")");
    }
    // listener may not be up yet; retry shortly
    ::usleep(50 * 1000);
  }
}

// ---------------------------------------------------------------------------
// Digest

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back((v >> (8 * i)) & 0xff);
}

void put_double(std::vector<unsigned char>& buf, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  put_u64(buf, bits);
}

void put_vec3(std::vector<unsigned char>& buf, const Vec3& v) {
  put_double(buf, v.x);
  put_double(buf, v.y);
  put_double(buf, v.z);
}

}  // namespace

std::uint64_t state_digest(const Scene& scene, const RoverState& rover) {
  std::vector<const SceneObject*> objs;
  objs.reserve(scene.objects.size());
  for (const auto& o : scene.objects) objs.push_back(&o);
  std::sort(objs.begin(), objs.end(),
            [](const SceneObject* a, const SceneObject* b) {
              return a->id < b->id;
            });

  std::vector<unsigned char> buf;
  for (const auto* o : objs) {
    buf.insert(buf.end(), o->id.begin(), o->id.end());
    buf.push_back(0);
    buf.push_back(static_cast<unsigned char>(o->status));
    put_vec3(buf, o->position);
  }
  buf.push_back(static_cast<unsigned char>(rover.phase));
  put_u64(buf, rover.leg_index);
  put_double(buf, rover.remaining_time);
  put_vec3(buf, rover.position);
  put_u64(buf, static_cast<std::uint64_t>(rover.summary.total_ticks));
  return fnv1a64(buf.data(), buf.size());
}

// ---------------------------------------------------------------------------
// Wire encoding

namespace {

json pose_to_json(const Pose& p) {
  return json::array({p.position.x, p.position.y, p.position.z,
                      p.orientation.w, p.orientation.x, p.orientation.y,
                      p.orientation.z});
}

Pose pose_from_json(const json& j) {
  if (!j.is_array() || j.size() != 7) {
    throw Error(ErrorKind::Sync, "malformed pose in wire message");
  }
  Pose p;
  p.position = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  p.orientation = {j[3].get<double>(), j[4].get<double>(), j[5].get<double>(),
                   j[6].get<double>()};
  return p;
}

std::string hex16(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace

Session::Session(std::unique_ptr<Transport> transport,
                 const SessionConfig& config)
    : transport_(std::move(transport)), config_(config) {}

void Session::handshake() {
  json join = {{"t", "join"},
               {"role", to_string(config_.local_role)},
               {"scenario", config_.scenario_id},
               {"seed", config_.seed},
               {"tick_rate", config_.tick_rate}};
  transport_->send_line(join.dump());

  auto line = transport_->recv_line(config_.peer_timeout);
  if (!line) throw Error(ErrorKind::Sync, "peer lost (no join message)");
  json msg;
  try {
    msg = json::parse(*line);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Sync, std::string("protocol error: ") + e.what());
  }
  if (msg.value("t", "") != "join") {
    throw Error(ErrorKind::Sync, "protocol error: expected join");
  }
  Role remote_role = role_from_string(msg.at("role").get<std::string>());
  if (remote_role == config_.local_role) {
    throw Error(ErrorKind::Config, "role taken: " + std::string(to_string(
                                       config_.local_role)));
  }
  if (msg.at("scenario").get<std::string>() != config_.scenario_id ||
      msg.at("seed").get<std::uint64_t>() != config_.seed ||
      msg.at("tick_rate").get<double>() != config_.tick_rate) {
    throw Error(ErrorKind::Config, "config mismatch");
  }
  current_tick_ = 0;
  local_sent_ = false;
}

void Session::handle_message(const std::string& line) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Sync, std::string("protocol error: ") + e.what());
  }
  std::string t = msg.value("t", "");
  if (t == "input") {
    InputFrame f;
    f.tick = msg.at("tick").get<std::uint64_t>();
    f.role = role_from_string(msg.at("role").get<std::string>());
    f.head = pose_from_json(msg.at("head"));
    f.primary_controller = pose_from_json(msg.at("primary"));
    f.secondary_controller = pose_from_json(msg.at("secondary"));
    f.trigger = msg.at("trigger").get<bool>();
    f.reel_input = msg.at("reel").get<double>();
    remote_inputs_.push_back(f);
  } else if (t == "digest") {
    std::uint64_t tick = msg.at("tick").get<std::uint64_t>();
    std::uint64_t hash =
        std::stoull(msg.at("hash").get<std::string>(), nullptr, 16);
    remote_digests_.emplace_back(tick, hash);
  } else if (t == "bye") {
    peer_gone_ = true;
  } else {
    throw Error(ErrorKind::Sync, "protocol error: unknown message type '" +
                                     t + "'");
  }
}

void Session::poll(std::chrono::milliseconds timeout) {
  auto line = transport_->recv_line(timeout);
  if (line) handle_message(*line);
}

std::optional<SimStep> Session::lockstep_advance(const InputFrame& local) {
  if (local.tick != current_tick_) {
    throw Error(ErrorKind::Sync, "input frame out of order: expected tick " +
                                     std::to_string(current_tick_));
  }
  if (!local_sent_) {
    json msg = {{"t", "input"},
                {"tick", local.tick},
                {"role", to_string(local.role)},
                {"head", pose_to_json(local.head)},
                {"primary", pose_to_json(local.primary_controller)},
                {"secondary", pose_to_json(local.secondary_controller)},
                {"trigger", local.trigger},
                {"reel", local.reel_input}};
    transport_->send_line(msg.dump());
    local_sent_ = true;
    pending_local_ = local;
  }

  auto deadline = std::chrono::steady_clock::now() + config_.peer_timeout;
  while (remote_inputs_.empty() ||
         remote_inputs_.front().tick < current_tick_) {
    if (!remote_inputs_.empty() &&
        remote_inputs_.front().tick < current_tick_) {
      remote_inputs_.pop_front();  // stale duplicate
      continue;
    }
    if (peer_gone_) throw Error(ErrorKind::Sync, "peer lost (bye received)");
    if (std::chrono::steady_clock::now() >= deadline) {
      throw Error(ErrorKind::Sync, "peer lost (input timeout at tick " +
                                       std::to_string(current_tick_) + ")");
    }
    poll(std::chrono::milliseconds(20));
  }
  const InputFrame& remote = remote_inputs_.front();
  if (remote.tick != current_tick_) {
    throw Error(ErrorKind::Sync, "tick gap: got " +
                                     std::to_string(remote.tick) +
                                     ", expected " +
                                     std::to_string(current_tick_));
  }

  SimStep step;
  step.tick = current_tick_;
  if (pending_local_->role == Role::Collector) {
    step.collector = *pending_local_;
    step.medic = remote;
  } else {
    step.collector = remote;
    step.medic = *pending_local_;
  }
  if (step.collector.role != Role::Collector ||
      step.medic.role != Role::Medic) {
    throw Error(ErrorKind::Sync, "role authority violation at tick " +
                                     std::to_string(current_tick_));
  }
  remote_inputs_.pop_front();
  pending_local_.reset();
  local_sent_ = false;
  ++current_tick_;
  return step;
}

void Session::exchange_digest(std::uint64_t tick, std::uint64_t hash) {
  json msg = {{"t", "digest"}, {"tick", tick}, {"hash", hex16(hash)}};
  transport_->send_line(msg.dump());

  auto deadline = std::chrono::steady_clock::now() + config_.peer_timeout;
  for (;;) {
    while (!remote_digests_.empty()) {
      auto [rtick, rhash] = remote_digests_.front();
      remote_digests_.pop_front();
      if (rtick < tick) continue;  // late duplicate
      if (rtick != tick) {
        throw Error(ErrorKind::Sync, "digest tick mismatch");
      }
      if (rhash != hash) {
        throw Error(ErrorKind::Sync,
                    "desync at tick " + std::to_string(tick));
      }
      return;
    }
    if (peer_gone_) throw Error(ErrorKind::Sync, "peer lost (bye received)");
    if (std::chrono::steady_clock::now() >= deadline) {
      throw Error(ErrorKind::Sync, "peer lost (digest timeout)");
    }
    poll(std::chrono::milliseconds(20));
  }
}

void Session::send_bye() {
  try {
    transport_->send_line(R"({"t":"bye"})");
  } catch (const Error&) {
    // peer already gone; nothing to do
  }
}

}  // namespace purifier
