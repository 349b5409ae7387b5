#include "purifier/homer.hpp"

namespace purifier {

Vec3 torso_anchor(const Pose& head, double torso_offset) {
  return head.position - Vec3{0.0, torso_offset, 0.0};
}

HomerGrabState homer_grab(const Vec3& user_anchor, const Pose& controller,
                          const SceneObject& object) {
  if (object.status != ObjectStatus::Active) {
    throw Error(ErrorKind::Runtime, "object not grabbable: " + object.id);
  }
  Vec3 user_to_controller = controller.position - user_anchor;
  double uc_len = norm(user_to_controller);
  if (uc_len <= 1e-6) {
    throw Error(ErrorKind::Runtime, "degenerate controller offset");
  }
  Vec3 user_to_object = object.position - user_anchor;

  HomerGrabState state;
  state.object_id = object.id;
  state.scale_factor = norm(user_to_object) / uc_len;
  state.offset = object.position -
                 (user_anchor + state.scale_factor * user_to_controller);
  state.user_anchor_at_grab = user_anchor;
  state.grab_controller_orientation = controller.orientation;
  state.grab_object_position = object.position;
  state.grab_object_orientation = object.orientation;
  return state;
}

ManipPose homer_update(const HomerGrabState& state, const Vec3& user_anchor,
                       const Pose& controller) {
  Vec3 user_to_controller = controller.position - user_anchor;
  ManipPose pose;
  pose.position =
      user_anchor + state.scale_factor * user_to_controller + state.offset;
  Quat delta =
      controller.orientation * state.grab_controller_orientation.conjugate();
  pose.orientation = (delta * state.grab_object_orientation).normalized();
  return pose;
}

void homer_release(HomerGrabState& state, Scene& scene,
                   const ManipPose& final_pose) {
  if (state.released) {
    throw Error(ErrorKind::Runtime, "stale grab state");
  }
  SceneObject& obj = scene.get(state.object_id);
  obj.position = final_pose.position;
  obj.orientation = final_pose.orientation;
  state.released = true;
}

FlowMatchTickResult FlowMatch::tick(const Pose& head, const Pose& controller,
                                    bool trigger, Scene& scene) {
  FlowMatchTickResult result;
  bool pressed = trigger && !prev_trigger_;
  prev_trigger_ = trigger;
  Vec3 anchor = torso_anchor(head, config_.torso_offset);

  if (!grab_) {
    if (pressed) {
      Vec3 axis = aim_override_ ? *aim_override_ : controller.forward();
      aim_override_.reset();
      Cone cone(controller.position, axis, config_.cone_half_angle);
      SelectionResult sel =
          flashlight_select(cone, scene, config_.max_range, filter_);
      result.selection_attempt = sel;
      if (sel.hit()) {
        grab_ = homer_grab(anchor, controller, scene.get(*sel.object_id));
        last_pose_ = {grab_->grab_object_position,
                      grab_->grab_object_orientation};
      }
    }
    return result;
  }

  if (trigger) {
    last_pose_ = homer_update(*grab_, anchor, controller);
    SceneObject& obj = scene.get(grab_->object_id);
    obj.position = last_pose_.position;
    obj.orientation = last_pose_.orientation;
  } else {
    homer_release(*grab_, scene, last_pose_);
    result.released_object = grab_->object_id;
    grab_.reset();
  }
  return result;
}

}  // namespace purifier
