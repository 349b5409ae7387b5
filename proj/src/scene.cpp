#include "purifier/scene.hpp"

#include <algorithm>

namespace purifier {

const char* to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::Trash: return "trash";
    case ObjectKind::Wildlife: return "wildlife";
    case ObjectKind::Medication: return "medication";
  }
  return "?";
}

const char* to_string(ObjectStatus s) {
  switch (s) {
    case ObjectStatus::Active: return "active";
    case ObjectStatus::Collected: return "collected";
    case ObjectStatus::Healed: return "healed";
    case ObjectStatus::Consumed: return "consumed";
  }
  return "?";
}

const char* to_string(RoverPhase p) {
  switch (p) {
    case RoverPhase::Traveling: return "traveling";
    case RoverPhase::Stopped: return "stopped";
    case RoverPhase::Completed: return "completed";
  }
  return "?";
}

SceneObject* Scene::find(const std::string& id) {
  for (auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const SceneObject* Scene::find(const std::string& id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

SceneObject& Scene::get(const std::string& id) {
  if (auto* o = find(id)) return *o;
  throw Error(ErrorKind::Runtime, "unknown object id: " + id);
}

const SceneObject& Scene::get(const std::string& id) const {
  if (const auto* o = find(id)) return *o;
  throw Error(ErrorKind::Runtime, "unknown object id: " + id);
}

int Scene::count_with_status(ObjectKind kind, ObjectStatus status) const {
  int n = 0;
  for (const auto& o : objects) {
    if (o.kind == kind && o.status == status) ++n;
  }
  return n;
}

RoverState RoverState::at_route_start(const Route& route) {
  RoverState s;
  s.phase = route.legs.empty() ? RoverPhase::Completed : RoverPhase::Traveling;
  s.leg_index = 0;
  s.position = route.start;
  return s;
}

bool objective_resolved(const Scene& scene, const std::string& id) {
  return scene.get(id).status != ObjectStatus::Active;
}

bool all_objectives_resolved(const Scene& scene, const RouteLeg& leg) {
  return std::all_of(leg.objective_ids.begin(), leg.objective_ids.end(),
                     [&](const std::string& id) {
                       return objective_resolved(scene, id);
                     });
}

namespace {

void refresh_counts(RunSummary& summary, const Scene& scene) {
  summary.trash_collected =
      scene.count_with_status(ObjectKind::Trash, ObjectStatus::Collected);
  summary.wildlife_healed =
      scene.count_with_status(ObjectKind::Wildlife, ObjectStatus::Healed);
}

// Leave the current stop; either advances to the next leg or completes the
// route when this was the last one.
void depart(RoverState& next, const Route& route, StopOutcome outcome) {
  next.stop_outcomes.push_back(outcome);
  if (outcome == StopOutcome::ObjectivesComplete) {
    ++next.summary.stops_fully_cleared;
  }
  if (next.leg_index + 1 >= route.legs.size()) {
    next.phase = RoverPhase::Completed;
  } else {
    ++next.leg_index;
    next.phase = RoverPhase::Traveling;
  }
  next.remaining_time = 0.0;
}

}  // namespace

RoverState rover_step(const RoverState& state, const Scene& scene,
                      const Route& route, double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::Runtime, "non-positive timestep");
  }
  RoverState next = state;
  if (state.phase == RoverPhase::Completed) {
    return next;  // terminal; no-op, counts stay frozen
  }
  ++next.summary.total_ticks;
  refresh_counts(next.summary, scene);

  const RouteLeg& leg = route.legs[state.leg_index];
  switch (state.phase) {
    case RoverPhase::Traveling: {
      Vec3 to_waypoint = leg.waypoint - state.position;
      double dist = norm(to_waypoint);
      double step = route.travel_speed * dt;
      // epsilon absorbs accumulated FP error so exact-length legs arrive on
      // the analytic tick
      if (dist <= step + 1e-9) {
        next.position = leg.waypoint;  // snap, no overshoot
        next.phase = RoverPhase::Stopped;
        next.remaining_time = leg.shield_open_duration;
      } else {
        next.position = state.position + to_waypoint * (step / dist);
      }
      break;
    }
    case RoverPhase::Stopped: {
      // Completion is checked before the timer: finishing all objectives
      // closes the shield immediately even with time left. A stop with no
      // objectives only ends by timer.
      if (!leg.objective_ids.empty() && all_objectives_resolved(scene, leg)) {
        depart(next, route, StopOutcome::ObjectivesComplete);
        break;
      }
      next.remaining_time = state.remaining_time - dt;
      if (next.remaining_time <= 0.0) {
        depart(next, route, StopOutcome::TimerExpired);
      }
      break;
    }
    case RoverPhase::Completed:
      break;
  }
  return next;
}

bool try_collect(Scene& scene, const std::string& object_id,
                 const Vec3& bin_position, double capture_radius) {
  SceneObject& obj = scene.get(object_id);
  if (obj.kind != ObjectKind::Trash) {
    throw Error(ErrorKind::Runtime, "not collectible: " + object_id);
  }
  if (obj.status != ObjectStatus::Active) return false;
  if (norm(obj.position - bin_position) > capture_radius) return false;
  obj.status = ObjectStatus::Collected;
  return true;
}

bool try_medicate(Scene& scene, const std::string& medication_id,
                  const std::string& wildlife_id, double feed_radius) {
  SceneObject& med = scene.get(medication_id);
  SceneObject& animal = scene.get(wildlife_id);
  if (med.kind != ObjectKind::Medication ||
      animal.kind != ObjectKind::Wildlife) {
    throw Error(ErrorKind::Runtime, "invalid pairing: " + medication_id +
                                        " / " + wildlife_id);
  }
  if (med.status != ObjectStatus::Active ||
      animal.status != ObjectStatus::Active) {
    return false;
  }
  if (norm(med.position - animal.position) > feed_radius) return false;
  med.status = ObjectStatus::Consumed;
  animal.status = ObjectStatus::Healed;
  return true;
}

}  // namespace purifier
