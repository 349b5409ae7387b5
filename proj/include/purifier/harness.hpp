#pragma once

// Deterministic trace replay, aim-noise modeling, benchmarks, and metrics.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "purifier/homer.hpp"
#include "purifier/reel.hpp"
#include "purifier/rng.hpp"
#include "purifier/scene.hpp"
#include "purifier/sync.hpp"

namespace purifier {

// Piecewise-constant scripted input; poses are rover-local and the harness
// translates them by the rover position each tick.
struct TraceSegment {
  std::uint64_t ticks = 0;
  Pose head;
  Pose primary;
  Pose secondary;
  bool trigger = false;
  double reel_input = 0.0;
};

struct Trace {
  std::vector<TraceSegment> segments;

  std::uint64_t total_ticks() const;
  // Neutral (idle) frame past the end of the script.
  TraceSegment at(std::uint64_t tick) const;
};

struct Scenario {
  int schema_version = 1;
  std::string id;
  std::uint64_t seed = 0;
  double tick_rate = 90.0;

  Scene scene;
  Route route;
  Vec3 bin_position;        // rover-local
  double capture_radius = 0.75;
  double feed_radius = 1.0;

  FlowMatchConfig flow_match;
  ReelConfig reel;
  double noise_sigma = 0.0;  // radians

  Trace collector_trace;
  Trace medic_trace;
  std::uint64_t max_ticks = 90 * 600;  // safety cap

  double dt() const { return 1.0 / tick_rate; }
};

// Parses and validates; error messages carry the source name and, for parse
// failures, the byte offset reported by the JSON parser.
Scenario scenario_from_json_text(const std::string& text,
                                 const std::string& source_name);
Scenario load_scenario(const std::string& path);

struct SelectionAttemptRecord {
  std::uint64_t attempt = 0;
  std::string technique;
  double deviation_rad = 0.0;
  bool hit = false;
};

struct ReelSessionRecord {
  double start_t = 0.0;
  double end_t = 0.0;
  std::uint64_t ticks = 0;
};

struct RunMetrics {
  std::uint64_t seed = 0;
  double tick_rate = 90.0;
  RunSummary summary;
  std::vector<StopOutcome> stop_outcomes;
  std::vector<SelectionAttemptRecord> attempts;
  std::vector<ReelSessionRecord> reel_sessions;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> digests;

  std::string to_json_text() const;       // canonical key order
  std::string attempts_csv() const;       // attempt,technique,deviation_rad,hit
  std::string summary_text() const;       // end-of-route report
};

// Fixed-timestep core shared by the solo and lockstep paths; feed it one
// SimStep per tick.
class SimRunner {
 public:
  explicit SimRunner(const Scenario& scenario);

  bool done() const;
  std::uint64_t tick() const { return tick_; }
  void step(const InputFrame& collector, const InputFrame& medic);

  InputFrame input_for(Role role, std::uint64_t tick) const;

  const Scene& scene() const { return scene_; }
  const RoverState& rover() const { return rover_; }
  std::uint64_t digest() const;
  void record_digest(std::uint64_t tick, std::uint64_t hash);

  // Fault injection for desync tests: XOR the low mantissa bit of the first
  // object's x coordinate.
  void flip_state_bit();

  RunMetrics take_metrics();

 private:
  void handle_collector(const InputFrame& frame);
  void handle_medic(const InputFrame& frame);
  Vec3 perturbed_aim(const Vec3& axis, double* deviation_out);

  const Scenario scenario_;
  Scene scene_;
  Route route_;
  RoverState rover_;
  FlowMatch flow_match_;
  RawrXd rawr_xd_;
  SplitMix64 rng_;
  std::uint64_t tick_ = 0;
  RunMetrics metrics_;
  std::optional<std::pair<double, std::uint64_t>> open_reel_;  // start_t, tick
  double last_reel_t_ = 0.0;
};

RunMetrics run_scenario(const Scenario& scenario);

// Lockstep variant: local inputs from the local role's trace, remote inputs
// via the session. `inject_flip_tick` < 0 disables fault injection.
RunMetrics coop_run(const Scenario& scenario, Role local_role,
                    Session& session, std::int64_t inject_flip_tick = -1);

enum class SelectionTechnique { Ray, Flashlight };

struct SelectBenchParams {
  double distance = 100.0;           // meters
  double target_radius = 0.0;        // meters; <= 0 means point-like
  double sigma = 0.0;                // radians
  std::uint64_t attempts = 1;
  SelectionTechnique technique = SelectionTechnique::Ray;
  double cone_half_angle = deg_to_rad(5.0);
  std::uint64_t seed = 0;
};

double selection_benchmark(const SelectBenchParams& params,
                           std::vector<SelectionAttemptRecord>* rows = nullptr);

enum class ReelTechnique { FishingReel, RawrXd };

struct ReelBenchParams {
  double start_t = 5.0;
  double goal_t = 15.0;
  ReelTechnique technique = ReelTechnique::FishingReel;
  double tilt = 0.0;  // radians, constant over the run
  double base_speed = 2.0;
  double dt = 1.0 / 90.0;
  double theta_max = deg_to_rad(60.0);
  double t_min = 0.25;
  double t_max = 200.0;
};

std::uint64_t reel_benchmark(const ReelBenchParams& params);

void write_run_outputs(const RunMetrics& metrics, const std::string& out_dir);

// Re-runs every *.json scenario in the directory twice and compares all
// outputs byte-for-byte; throws on any difference.
void verify_scenarios(const std::string& scenarios_dir);

}  // namespace purifier
