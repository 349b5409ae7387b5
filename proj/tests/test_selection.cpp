#include <doctest.h>

#include "purifier/rng.hpp"
#include "purifier/selection.hpp"

using namespace purifier;

namespace {

SceneObject make_obj(const std::string& id, const Vec3& pos, double radius) {
  return {id, ObjectKind::Trash, pos, radius};
}

// Independent sphere-vs-cone oracle: sample the sphere surface on a
// deterministic grid and report whether any sample lies inside the cone.
bool cone_overlap_sampled(const Cone& cone, const Vec3& center, double radius) {
  const int n = 48;
  for (int i = 0; i <= n; ++i) {
    double theta = kPi * i / n;
    for (int j = 0; j < 2 * n; ++j) {
      double phi = kPi * j / n;
      Vec3 p = center + radius * Vec3{std::sin(theta) * std::cos(phi),
                                      std::sin(theta) * std::sin(phi),
                                      std::cos(theta)};
      Vec3 d = p - cone.apex;
      if (norm(d) < 1e-12) continue;
      if (angle_between(cone.axis, d) <= cone.half_angle) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("ray_select hits the sphere at the quadratic-root distance") {
  Scene scene;
  scene.objects.push_back(make_obj("a", {0, 0, 10}, 0.5));
  Ray ray({0, 0, 0}, {0, 0, 1});
  SelectionResult r = ray_select(ray, scene);
  REQUIRE(r.hit());
  CHECK(*r.object_id == "a");
  CHECK(r.score == doctest::Approx(9.5).epsilon(1e-12));
}

TEST_CASE("ray_select misses a laterally offset sphere") {
  Scene scene;
  scene.objects.push_back(make_obj("a", {2, 0, 10}, 0.5));
  SelectionResult r = ray_select(Ray({0, 0, 0}, {0, 0, 1}), scene);
  CHECK_FALSE(r.hit());
  CHECK(r.candidates_considered == 1);
}

TEST_CASE("ray_select picks the nearest of two hits") {
  Scene scene;
  scene.objects.push_back(make_obj("far", {0, 0, 10}, 0.5));
  scene.objects.push_back(make_obj("near", {0, 0, 5}, 0.5));
  SelectionResult r = ray_select(Ray({0, 0, 0}, {0, 0, 1}), scene);
  REQUIRE(r.hit());
  CHECK(*r.object_id == "near");
}

TEST_CASE("flashlight_select on-axis and off-axis membership") {
  Cone cone({0, 0, 0}, {0, 0, 1}, deg_to_rad(5.0));

  Scene on_axis;
  on_axis.objects.push_back(make_obj("a", {0, 0, 5}, 1e-9));
  SelectionResult r = flashlight_select(cone, on_axis);
  REQUIRE(r.hit());
  CHECK(r.score == doctest::Approx(0.0));

  Scene off_axis;  // ~11.31 degrees off
  off_axis.objects.push_back(make_obj("a", {1, 0, 5}, 1e-9));
  CHECK_FALSE(flashlight_select(cone, off_axis).hit());
}

TEST_CASE("flashlight_select picks the smallest angle") {
  Cone cone({0, 0, 0}, {0, 0, 1}, deg_to_rad(5.0));
  Scene scene;
  scene.objects.push_back(make_obj("steeper", {0, 0.2, 5}, 1e-9));
  scene.objects.push_back(make_obj("closer_to_axis", {0.1, 0, 5}, 1e-9));
  SelectionResult r = flashlight_select(cone, scene);
  REQUIRE(r.hit());
  CHECK(*r.object_id == "closer_to_axis");
  CHECK(r.candidates_considered == 2);
}

TEST_CASE("flashlight angular tie breaks toward the closer object") {
  Cone cone({0, 0, 0}, {0, 0, 1}, deg_to_rad(5.0));
  Scene scene;
  scene.objects.push_back(make_obj("far", {0, 0, 8}, 0.05));
  scene.objects.push_back(make_obj("near", {0, 0, 4}, 0.05));
  SelectionResult r = flashlight_select(cone, scene);
  REQUIRE(r.hit());
  CHECK(*r.object_id == "near");
}

TEST_CASE("an object at the apex is skipped, not an error") {
  Cone cone({0, 0, 0}, {0, 0, 1}, deg_to_rad(5.0));
  Scene scene;
  scene.objects.push_back(make_obj("degenerate", {0, 0, 0}, 0.5));
  scene.objects.push_back(make_obj("good", {0, 0, 5}, 0.1));
  SelectionResult r = flashlight_select(cone, scene);
  REQUIRE(r.hit());
  CHECK(*r.object_id == "good");
}

TEST_CASE("inactive objects are never selectable") {
  Scene scene;
  scene.objects.push_back(make_obj("a", {0, 0, 5}, 0.5));
  scene.objects.front().status = ObjectStatus::Collected;
  CHECK_FALSE(ray_select(Ray({0, 0, 0}, {0, 0, 1}), scene).hit());
  Cone cone({0, 0, 0}, {0, 0, 1}, deg_to_rad(5.0));
  CHECK_FALSE(flashlight_select(cone, scene).hit());
}

TEST_CASE("objects beyond the maximum range are not candidates") {
  Scene scene;
  scene.objects.push_back(make_obj("a", {0, 0, 250}, 5.0));
  SelectionResult r = ray_select(Ray({0, 0, 0}, {0, 0, 1}), scene);
  CHECK_FALSE(r.hit());
  CHECK(r.candidates_considered == 0);
  CHECK(ray_select(Ray({0, 0, 0}, {0, 0, 1}), scene, 300.0).hit());
}

TEST_CASE("enlarging the half-angle never shrinks the member set") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Scene scene;
    int count = 1 + static_cast<int>(rng.next() % 50);
    for (int i = 0; i < count; ++i) {
      auto [a, b] = rng.next_gaussian_pair();
      auto [c, d] = rng.next_gaussian_pair();
      scene.objects.push_back(make_obj("o" + std::to_string(i),
                                       {a * 5, b * 5, 5 + std::abs(c) * 20},
                                       0.05 + std::abs(d) * 0.2));
    }
    double small = deg_to_rad(2.0 + rng.next_double() * 10.0);
    double large = small + deg_to_rad(rng.next_double() * 30.0);
    Cone narrow({0, 0, 0}, {0, 0, 1}, small);
    Cone wide({0, 0, 0}, {0, 0, 1}, large);
    for (const auto& obj : scene.objects) {
      double dist = norm(obj.position);
      double ang = angle_between(narrow.axis, obj.position);
      double ang_r = std::asin(std::min(1.0, obj.bounding_radius / dist));
      bool in_narrow = ang - ang_r <= narrow.half_angle;
      bool in_wide = ang - ang_r <= wide.half_angle;
      if (in_narrow) CHECK(in_wide);
    }
  }
}

TEST_CASE("any ray hit along the cone axis is a flashlight member") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Scene scene;
    auto [a, b] = rng.next_gaussian_pair();
    Vec3 center{a, b, 5 + rng.next_double() * 50};
    scene.objects.push_back(make_obj("o", center, 0.3 + rng.next_double()));
    Ray ray({0, 0, 0}, {0, 0, 1});
    if (!ray_select(ray, scene).hit()) continue;
    Cone cone(ray.origin, ray.direction, deg_to_rad(0.5));
    CHECK(flashlight_select(cone, scene).hit());
  }
}

TEST_CASE("membership matches a sampled sphere-vs-cone oracle") {
  SplitMix64 rng(13);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto [a, b] = rng.next_gaussian_pair();
    Vec3 center{a * 3, b * 3, 4 + rng.next_double() * 30};
    double radius = 0.05 + rng.next_double() * 1.5;
    double half_angle = deg_to_rad(3.0 + rng.next_double() * 25.0);
    Cone cone({0, 0, 0}, {0, 0, 1}, half_angle);

    double dist = norm(center);
    double ang = angle_between(cone.axis, center);
    double ang_r = std::asin(std::min(1.0, radius / dist));
    // skip cases within the approximation's boundary band
    if (std::abs(ang - ang_r - half_angle) < 5e-3) continue;

    Scene scene;
    scene.objects.push_back(make_obj("o", center, radius));
    bool member = flashlight_select(cone, scene).hit();
    CHECK(member == cone_overlap_sampled(cone, center, radius));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("point-like membership is exactly the angle threshold") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    auto [a, b] = rng.next_gaussian_pair();
    Vec3 center{a * 2, b * 2, 3 + rng.next_double() * 20};
    double half_angle = deg_to_rad(1.0 + rng.next_double() * 40.0);
    Cone cone({0, 0, 0}, {0, 0, 1}, half_angle);
    Scene scene;
    scene.objects.push_back(make_obj("o", center, 1e-9));
    bool member = flashlight_select(cone, scene).hit();
    double ang = angle_between(cone.axis, center);
    if (std::abs(ang - half_angle) > 1e-9) {
      CHECK(member == (ang < half_angle));
    }
  }
}
