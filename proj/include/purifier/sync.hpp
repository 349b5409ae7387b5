#pragma once

// Two-client deterministic lockstep replication. Peers exchange per-tick
// input frames over an ordered byte stream (newline-delimited JSON) and each
// advances an identical simulation; periodic state digests catch divergence.

#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>

#include "purifier/math.hpp"
#include "purifier/scene.hpp"

namespace purifier {

enum class Role { Collector, Medic };

const char* to_string(Role r);
Role role_from_string(const std::string& s);

struct InputFrame {
  std::uint64_t tick = 0;
  Role role = Role::Collector;
  Pose head;
  Pose primary_controller;
  Pose secondary_controller;
  bool trigger = false;
  double reel_input = 0.0;  // in [-1, 1]
};

// Both roles' inputs for one tick, ready to feed the simulation.
struct SimStep {
  std::uint64_t tick = 0;
  InputFrame collector;
  InputFrame medic;
};

// Ordered, reliable line transport. TCP loopback in production, a socketpair
// in tests; both go through the fd-backed implementation below.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send_line(const std::string& line) = 0;
  // Blocks up to `timeout`; empty optional on timeout, throws on peer close.
  virtual std::optional<std::string> recv_line(
      std::chrono::milliseconds timeout) = 0;
};

// Takes ownership of the file descriptor.
std::unique_ptr<Transport> make_fd_transport(int fd);
// Pair of connected in-process transports (socketpair).
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>
make_transport_pair();

// Blocking loopback TCP helpers; endpoint is "host:port".
std::unique_ptr<Transport> tcp_listen_accept(const std::string& endpoint,
                                             std::chrono::milliseconds timeout);
std::unique_ptr<Transport> tcp_connect(const std::string& endpoint,
                                       std::chrono::milliseconds timeout);

std::uint64_t fnv1a64(const void* data, std::size_t len);

// Canonical bit-exact digest of the simulation state: objects in id order,
// double bit patterns little-endian, then the rover phase/leg/timer/position.
std::uint64_t state_digest(const Scene& scene, const RoverState& rover);

struct SessionConfig {
  Role local_role = Role::Collector;
  std::string scenario_id;
  std::uint64_t seed = 0;
  double tick_rate = 90.0;
  std::chrono::milliseconds peer_timeout{5000};
  std::uint64_t digest_interval = 30;  // ticks
};

class Session {
 public:
  Session(std::unique_ptr<Transport> transport, const SessionConfig& config);

  // Exchange join messages and validate role uniqueness and config equality.
  void handshake();

  // Send the local input for the current tick (once) and poll for the remote
  // one; returns the complete SimStep when both are present, nothing when the
  // remote input has not arrived yet. Tick order is strict: local_input.tick
  // must equal the session's current tick.
  std::optional<SimStep> lockstep_advance(const InputFrame& local_input);

  // Exchange digests for `tick` and compare; throws ErrorKind::Sync on
  // mismatch ("desync at tick k") or peer loss.
  void exchange_digest(std::uint64_t tick, std::uint64_t hash);

  void send_bye();

  std::uint64_t current_tick() const { return current_tick_; }
  std::uint64_t digest_interval() const { return config_.digest_interval; }

 private:
  void handle_message(const std::string& line);
  void poll(std::chrono::milliseconds timeout);

  std::unique_ptr<Transport> transport_;
  SessionConfig config_;
  std::uint64_t current_tick_ = 0;
  bool local_sent_ = false;
  std::deque<InputFrame> remote_inputs_;
  std::optional<InputFrame> pending_local_;
  std::deque<std::pair<std::uint64_t, std::uint64_t>> remote_digests_;
  bool peer_gone_ = false;
};

}  // namespace purifier
