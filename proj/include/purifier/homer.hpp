#pragma once

// HOMER manipulation and the FLOW-MATCH composite technique
// (Flashlight selection, hand-centered HOMER repositioning).

#include <optional>
#include <string>

#include "purifier/math.hpp"
#include "purifier/scene.hpp"
#include "purifier/selection.hpp"

namespace purifier {

// Parameters captured at grab time and frozen for the life of the grab.
//
// scale_factor = |object - anchor| / |controller - anchor|
// offset       = object - (anchor + scale_factor * (controller - anchor))
//
// so that re-evaluating the mapping at the grab pose returns the object's
// grab position exactly.
struct HomerGrabState {
  std::string object_id;
  double scale_factor = 0.0;
  Vec3 offset;
  Vec3 user_anchor_at_grab;
  Quat grab_controller_orientation;
  Vec3 grab_object_position;
  Quat grab_object_orientation;
  bool released = false;
};

struct ManipPose {
  Vec3 position;
  Quat orientation;
};

// `user_anchor` is the torso anchor (head position minus the configured
// vertical offset); the technique layer derives it, the mapping itself is
// anchor-agnostic.
HomerGrabState homer_grab(const Vec3& user_anchor, const Pose& controller,
                          const SceneObject& object);

// Scaled hand mapping with the frozen grab parameters and the live anchor
// and controller. Orientation is a 1:1 relative rotation from the grab pose.
ManipPose homer_update(const HomerGrabState& state, const Vec3& user_anchor,
                       const Pose& controller);

// Commit the final manipulated pose to the scene and retire the grab state.
// A second release of the same state is an error.
void homer_release(HomerGrabState& state, Scene& scene,
                   const ManipPose& final_pose);

struct FlowMatchConfig {
  double cone_half_angle = deg_to_rad(5.0);
  double torso_offset = 0.25;  // meters below the head
  double max_range = kDefaultSelectionRange;
};

// Per-tick outcome; `released_object` is set on the tick the grab ends so the
// caller can run delivery checks (try_collect).
struct FlowMatchTickResult {
  std::optional<std::string> released_object;
  std::optional<SelectionResult> selection_attempt;
};

// Idle -> (trigger press: flashlight_select; hit => homer_grab)
//      -> Grabbing (homer_update each tick, scene object follows)
//      -> (trigger release: homer_release) -> Idle
class FlowMatch {
 public:
  explicit FlowMatch(const FlowMatchConfig& config) : config_(config) {}

  FlowMatchTickResult tick(const Pose& head, const Pose& controller,
                           bool trigger, Scene& scene);

  bool grabbing() const { return grab_.has_value(); }
  const std::optional<HomerGrabState>& grab_state() const { return grab_; }

  // Aim override hook for the noise model: when set, the next selection
  // attempt uses this cone axis instead of the controller's forward.
  void set_aim_override(const Vec3& axis) { aim_override_ = axis; }
  void set_candidate_filter(CandidateFilter filter) {
    filter_ = std::move(filter);
  }

  bool trigger_was_down() const { return prev_trigger_; }

 private:
  FlowMatchConfig config_;
  std::optional<HomerGrabState> grab_;
  ManipPose last_pose_;
  bool prev_trigger_ = false;
  std::optional<Vec3> aim_override_;
  CandidateFilter filter_;
};

Vec3 torso_anchor(const Pose& head, double torso_offset);

}  // namespace purifier
