#include "purifier/reel.hpp"

namespace purifier {

double wrist_multiplier(double roll, double theta_max) {
  if (roll <= -theta_max) return 0.5;
  if (roll >= theta_max) return 5.0;
  if (roll < 0.0) {
    // left segment: -theta_max -> 0.5, 0 -> 1.0
    return 1.0 + (roll / theta_max) * 0.5;
  }
  // right segment: 0 -> 1.0, +theta_max -> 5.0
  return 1.0 + (roll / theta_max) * 4.0;
}

WristModulation wrist_modulation(double roll, double theta_max) {
  WristModulation mod;
  mod.roll = roll;
  mod.multiplier = wrist_multiplier(roll, theta_max);
  mod.slider_value = (mod.multiplier - 0.5) / 4.5;
  return mod;
}

ReelState reel_tick(const ReelState& state, double reel_input,
                    double multiplier, double dt, double t_min, double t_max) {
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::Runtime, "non-positive timestep");
  }
  ReelState next = state;
  next.t = clamp(state.t + reel_input * state.base_speed * multiplier * dt,
                 t_min, t_max);
  return next;
}

RawrXdTickResult RawrXd::tick(const Pose& selecting, const Pose& non_selecting,
                              bool trigger, double reel_input, Scene& scene,
                              double dt) {
  RawrXdTickResult result;
  bool pressed = trigger && !prev_trigger_;
  prev_trigger_ = trigger;

  if (!reel_) {
    if (pressed) {
      Vec3 dir = aim_override_ ? *aim_override_ : selecting.forward();
      aim_override_.reset();
      Ray ray(selecting.position, dir);
      SelectionResult sel = ray_select(ray, scene, config_.max_range, filter_);
      result.selection_attempt = sel;
      if (sel.hit()) {
        double t = clamp(sel.score, config_.t_min, config_.t_max);
        reel_ = ReelState{*sel.object_id, ray, t, config_.base_speed};
        roll_reference_ = non_selecting.orientation;
        scene.get(reel_->object_id).position = ray.at(t);
      }
    }
    return result;
  }

  if (trigger) {
    reel_->ray = Ray(selecting.position, selecting.forward());  // re-aim
    double roll =
        roll_about_forward(non_selecting.orientation, roll_reference_);
    if (config_.mirror) roll = -roll;
    WristModulation mod = wrist_modulation(roll, config_.theta_max);
    *reel_ = reel_tick(*reel_, reel_input, mod.multiplier, dt, config_.t_min,
                       config_.t_max);
    scene.get(reel_->object_id).position = reel_->ray.at(reel_->t);
    result.modulation = mod;
  } else {
    // release: the last committed position stands
    result.released_object = reel_->object_id;
    reel_.reset();
  }
  return result;
}

}  // namespace purifier
