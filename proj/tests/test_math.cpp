#include <doctest.h>

#include "purifier/math.hpp"
#include "purifier/rng.hpp"

using namespace purifier;

namespace {

Vec3 random_unit_vec(SplitMix64& rng) {
  for (;;) {
    auto [a, b] = rng.next_gaussian_pair();
    auto [c, d] = rng.next_gaussian_pair();
    (void)d;
    Vec3 v{a, b, c};
    if (norm(v) > 1e-6) return normalized(v);
  }
}

Quat random_unit_quat(SplitMix64& rng) {
  auto [a, b] = rng.next_gaussian_pair();
  auto [c, d] = rng.next_gaussian_pair();
  return Quat{a, b, c, d}.normalized();
}

}  // namespace

TEST_CASE("angle_to_axis on-axis, perpendicular, off-axis") {
  Cone cone({0, 0, 0}, {0, 0, 1}, deg_to_rad(10.0));
  CHECK(angle_to_axis(cone, {0, 0, 5}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(angle_to_axis(cone, {1, 0, 0}) == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(angle_to_axis(cone, {1, 0, 5}) ==
        doctest::Approx(std::atan(1.0 / 5.0)).epsilon(1e-12));
}

TEST_CASE("angle_to_axis rejects a point at the apex") {
  Cone cone({1, 2, 3}, {0, 1, 0}, 0.5);
  CHECK_THROWS_WITH_AS(angle_to_axis(cone, {1, 2, 3}),
                       "coincident with apex", Error);
}

TEST_CASE("cone half_angle bounds") {
  CHECK_THROWS_AS(Cone({0, 0, 0}, {0, 0, 1}, 0.0), Error);
  CHECK_THROWS_AS(Cone({0, 0, 0}, {0, 0, 1}, kPi / 2), Error);
}

TEST_CASE("roll_about_forward examples") {
  Quat id = Quat::identity();
  CHECK(roll_about_forward(id, id) == doctest::Approx(0.0));

  Quat plus90 = Quat::from_axis_angle(kForward, kPi / 2);
  CHECK(roll_about_forward(plus90, id) == doctest::Approx(kPi / 2).epsilon(1e-12));

  Quat minus30 = Quat::from_axis_angle(kForward, -kPi / 6);
  CHECK(roll_about_forward(minus30, id) ==
        doctest::Approx(-kPi / 6).epsilon(1e-12));
}

TEST_CASE("roll_about_forward is zero against itself and odd in the tilt") {
  SplitMix64 rng(17);
  for (int i = 0; i < 500; ++i) {
    Quat q = random_unit_quat(rng);
    CHECK(std::abs(roll_about_forward(q, q)) < 1e-9);

    double theta = (rng.next_double() * 2.0 - 1.0) * (kPi - 1e-6);
    Quat ref = random_unit_quat(rng);
    Quat pos = ref * Quat::from_axis_angle(kForward, theta);
    Quat neg = ref * Quat::from_axis_angle(kForward, -theta);
    double a = roll_about_forward(pos, ref);
    double b = roll_about_forward(neg, ref);
    CHECK(std::abs(a + b) < 1e-9);
    CHECK(std::abs(a - theta) < 1e-9);
  }
}

TEST_CASE("dot-product and cross-product angle forms agree") {
  SplitMix64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    Vec3 a = random_unit_vec(rng);
    Vec3 b = random_unit_vec(rng);
    double via_atan2 = angle_between(a, b);
    double via_acos = std::acos(clamp(dot(a, b), -1.0, 1.0));
    CHECK(std::abs(via_atan2 - via_acos) < 1e-7);
  }
}

TEST_CASE("quaternion rotation preserves length") {
  SplitMix64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    Quat q = random_unit_quat(rng);
    auto [a, b] = rng.next_gaussian_pair();
    auto [c, d] = rng.next_gaussian_pair();
    Vec3 v{a * 10, b * 10, c * 10};
    (void)d;
    CHECK(std::abs(norm(q.rotate(v)) - norm(v)) < 1e-9 * (1.0 + norm(v)));
  }
}

TEST_CASE("ray direction is normalized on construction") {
  Ray r({0, 0, 0}, {0, 0, -8});
  CHECK(std::abs(norm(r.direction) - 1.0) < 1e-12);
  CHECK_THROWS_AS(Ray({0, 0, 0}, {0, 0, 0}), Error);
}
