#pragma once

// Virtual-environment data model and the purifying-rover state machine.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "purifier/math.hpp"

namespace purifier {

enum class ObjectKind { Trash, Wildlife, Medication };
enum class ObjectStatus { Active, Collected, Healed, Consumed };

const char* to_string(ObjectKind k);
const char* to_string(ObjectStatus s);

struct SceneObject {
  std::string id;
  ObjectKind kind = ObjectKind::Trash;
  Vec3 position;
  double bounding_radius = 0.1;  // > 0
  ObjectStatus status = ObjectStatus::Active;
  Quat orientation;
};

struct Scene {
  std::vector<SceneObject> objects;

  SceneObject* find(const std::string& id);
  const SceneObject* find(const std::string& id) const;
  SceneObject& get(const std::string& id);
  const SceneObject& get(const std::string& id) const;

  int count_with_status(ObjectKind kind, ObjectStatus status) const;
};

struct RouteLeg {
  Vec3 waypoint;
  double shield_open_duration = 60.0;  // seconds, > 0
  std::vector<std::string> objective_ids;
};

struct Route {
  std::vector<RouteLeg> legs;
  Vec3 start;
  double travel_speed = 5.0;  // m/s
};

struct RunSummary {
  int trash_collected = 0;
  int wildlife_healed = 0;
  int stops_fully_cleared = 0;
  std::int64_t total_ticks = 0;
};

enum class RoverPhase { Traveling, Stopped, Completed };

const char* to_string(RoverPhase p);

// Why a stop ended; recorded per leg for metrics.
enum class StopOutcome { ObjectivesComplete, TimerExpired };

struct RoverState {
  RoverPhase phase = RoverPhase::Traveling;
  std::size_t leg_index = 0;
  double remaining_time = 0.0;  // valid while Stopped
  Vec3 position;
  RunSummary summary;
  std::vector<StopOutcome> stop_outcomes;

  static RoverState at_route_start(const Route& route);
};

// Advance the rover by one fixed timestep. Traveling moves toward the current
// waypoint and snaps to it when the remaining distance fits in this step.
// Stopped leaves early when every leg objective is resolved, otherwise when
// the shield timer runs out; after the last leg the rover is Completed and the
// summary counts are frozen from the scene.
RoverState rover_step(const RoverState& state, const Scene& scene,
                      const Route& route, double dt);

// True when the object's status is anything but Active.
bool objective_resolved(const Scene& scene, const std::string& id);
bool all_objectives_resolved(const Scene& scene, const RouteLeg& leg);

// Deposit a trash object into the collection bin. Closed-ball test
// (distance <= capture_radius). Returns false without touching the scene if
// the object is not Active or out of reach.
bool try_collect(Scene& scene, const std::string& object_id,
                 const Vec3& bin_position, double capture_radius);

// Feed a medication object to a wildlife object. Both must be Active and
// within feed_radius (closed ball); on success the medication is Consumed and
// the wildlife Healed.
bool try_medicate(Scene& scene, const std::string& medication_id,
                  const std::string& wildlife_id, double feed_radius);

}  // namespace purifier
