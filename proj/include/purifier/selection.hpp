#pragma once

// Target acquisition: ray-casting and the Flashlight cone volume.

#include <functional>
#include <optional>
#include <string>

#include "purifier/math.hpp"
#include "purifier/scene.hpp"

namespace purifier {

inline constexpr double kDefaultSelectionRange = 200.0;  // meters

struct SelectionResult {
  std::optional<std::string> object_id;
  // Meters (ray parameter) for ray_select, radians (angle to axis) for
  // flashlight_select.
  double score = 0.0;
  int candidates_considered = 0;

  bool hit() const { return object_id.has_value(); }
};

// Narrows the candidate set (e.g. to the current stop's objectives); null
// means every Active object is a candidate.
using CandidateFilter = std::function<bool(const SceneObject&)>;

// Nearest Active bounding sphere intersected by the ray at a non-negative
// parameter; score is that parameter.
SelectionResult ray_select(const Ray& ray, const Scene& scene,
                           double max_range = kDefaultSelectionRange,
                           const CandidateFilter& filter = nullptr);

// Flashlight membership via angular inflation: an Active object is in the
// cone when angle_to_axis(center) - asin(min(1, r/dist)) <= half_angle.
// Smallest angle wins; ties within 1e-9 rad go to the closer object.
// An object center coincident with the apex is skipped, not an error.
SelectionResult flashlight_select(const Cone& cone, const Scene& scene,
                                  double max_range = kDefaultSelectionRange,
                                  const CandidateFilter& filter = nullptr);

}  // namespace purifier
