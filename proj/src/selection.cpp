#include "purifier/selection.hpp"

namespace purifier {

SelectionResult ray_select(const Ray& ray, const Scene& scene,
                           double max_range, const CandidateFilter& filter) {
  SelectionResult result;
  double best_t = 0.0;
  for (const auto& obj : scene.objects) {
    if (obj.status != ObjectStatus::Active) continue;
    if (filter && !filter(obj)) continue;
    Vec3 oc = obj.position - ray.origin;
    if (norm(oc) > max_range) continue;
    ++result.candidates_considered;

    double tca = dot(oc, ray.direction);
    double d2 = dot(oc, oc) - tca * tca;
    double r2 = obj.bounding_radius * obj.bounding_radius;
    if (d2 > r2) continue;
    double thc = std::sqrt(r2 - d2);
    double t = tca - thc;
    if (t < 0.0) t = tca + thc;  // origin inside the sphere
    if (t < 0.0) continue;      // sphere entirely behind the origin

    if (!result.object_id || t < best_t) {
      result.object_id = obj.id;
      best_t = t;
    }
  }
  result.score = result.object_id ? best_t : 0.0;
  return result;
}

SelectionResult flashlight_select(const Cone& cone, const Scene& scene,
                                  double max_range,
                                  const CandidateFilter& filter) {
  SelectionResult result;
  double best_angle = 0.0;
  double best_dist = 0.0;
  for (const auto& obj : scene.objects) {
    if (obj.status != ObjectStatus::Active) continue;
    if (filter && !filter(obj)) continue;
    Vec3 d = obj.position - cone.apex;
    double dist = norm(d);
    if (dist <= 1e-12) continue;  // degenerate candidate, skip
    if (dist > max_range) continue;
    ++result.candidates_considered;

    double angle = angle_between(cone.axis, d);
    double angular_radius = std::asin(std::min(1.0, obj.bounding_radius / dist));
    if (angle - angular_radius > cone.half_angle) continue;

    bool better = false;
    if (!result.object_id) {
      better = true;
    } else if (angle < best_angle - 1e-9) {
      better = true;
    } else if (std::abs(angle - best_angle) <= 1e-9 && dist < best_dist) {
      better = true;  // angular tie, closer object wins
    }
    if (better) {
      result.object_id = obj.id;
      best_angle = angle;
      best_dist = dist;
    }
  }
  result.score = result.object_id ? best_angle : 0.0;
  return result;
}

}  // namespace purifier
