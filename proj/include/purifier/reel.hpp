#pragma once

// Fishing Reel ray-constrained translation and the RAWR-XD bi-manual
// wrist-tilt speed multiplier.

#include <optional>
#include <string>

#include "purifier/math.hpp"
#include "purifier/scene.hpp"
#include "purifier/selection.hpp"

namespace purifier {

struct ReelConfig {
  double theta_max = deg_to_rad(60.0);  // roll at which the multiplier caps
  double base_speed = 2.0;              // m/s
  double t_min = 0.25;                  // meters along the ray
  double t_max = 200.0;
  bool mirror = false;  // flip roll sign for right-handed non-selecting hand
  double max_range = kDefaultSelectionRange;
};

// Piecewise-linear tilt -> speed multiplier. Left cap 0.5, neutral 1.0,
// right cap 5.0; linear between the knots.
double wrist_multiplier(double roll, double theta_max = deg_to_rad(60.0));

struct WristModulation {
  double roll = 0.0;        // radians, signed
  double multiplier = 1.0;  // in [0.5, 5.0]
  double slider_value = 0.0;  // (multiplier - 0.5) / 4.5, in [0, 1]
};

WristModulation wrist_modulation(double roll, double theta_max);

struct ReelState {
  std::string object_id;
  Ray ray;        // re-aimed each tick from the selecting controller
  double t;       // meters along the ray, kept in [t_min, t_max]
  double base_speed;
};

// t' = clamp(t + input * base_speed * multiplier * dt); the object sits at
// ray.origin + t' * direction afterwards.
ReelState reel_tick(const ReelState& state, double reel_input,
                    double multiplier, double dt, double t_min, double t_max);

struct RawrXdTickResult {
  std::optional<std::string> released_object;
  std::optional<SelectionResult> selection_attempt;
  std::optional<WristModulation> modulation;  // present while reeling
};

// Idle -> (trigger press: ray_select; hit => Reeling at t = hit distance)
//      -> Reeling (roll vs. the non-selecting pose at reel start, multiplier,
//                  reel_tick; object tracks the re-aimed ray)
//      -> (trigger release: commit) -> Idle
class RawrXd {
 public:
  explicit RawrXd(const ReelConfig& config) : config_(config) {}

  RawrXdTickResult tick(const Pose& selecting, const Pose& non_selecting,
                        bool trigger, double reel_input, Scene& scene,
                        double dt);

  bool reeling() const { return reel_.has_value(); }
  const std::optional<ReelState>& reel_state() const { return reel_; }

  void set_aim_override(const Vec3& direction) { aim_override_ = direction; }
  void set_candidate_filter(CandidateFilter filter) {
    filter_ = std::move(filter);
  }

  bool trigger_was_down() const { return prev_trigger_; }

 private:
  ReelConfig config_;
  std::optional<ReelState> reel_;
  Quat roll_reference_;  // non-selecting orientation at reel start
  bool prev_trigger_ = false;
  std::optional<Vec3> aim_override_;
  CandidateFilter filter_;
};

}  // namespace purifier
