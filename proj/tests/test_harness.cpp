#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "purifier/harness.hpp"

using namespace purifier;

namespace {

// single trash within arm's reach; the rover starts at its only waypoint
const char* kGrabAndDropScenario = R"({
  "schema_version": 1,
  "id": "grab_and_drop",
  "seed": 5,
  "tick_rate": 90.0,
  "scene": {
    "objects": [
      {"id": "a_decoy", "kind": "trash", "position": [30, 1, -3], "radius": 0.2},
      {"id": "t", "kind": "trash", "position": [0, 1, -3], "radius": 0.2}
    ],
    "bin_position": [0, 1, -3],
    "capture_radius": 0.75
  },
  "route": {
    "start": [0, 0, 0],
    "travel_speed": 5.0,
    "legs": [
      {"waypoint": [0, 0, 0], "shield_open_duration": 30.0, "objectives": ["t"]}
    ]
  },
  "traces": {
    "collector": [
      {"ticks": 5, "head": [0, 1.6, 0], "primary": [0, 1, 0]},
      {"ticks": 10, "head": [0, 1.6, 0], "primary": [0, 1, 0], "trigger": true}
    ]
  },
  "max_ticks": 4000
})";

const char* kEmptyRunScenario = R"({
  "schema_version": 1,
  "id": "empty",
  "seed": 0,
  "tick_rate": 90.0,
  "scene": {"objects": []},
  "route": {
    "start": [0, 0, 0],
    "travel_speed": 5.0,
    "legs": [{"waypoint": [0, 0, -5], "shield_open_duration": 1.0, "objectives": []}]
  },
  "max_ticks": 4000
})";

}  // namespace

TEST_CASE("scenario validation failures name the offender") {
  CHECK_THROWS_AS(scenario_from_json_text("{", "bad.json"), Error);
  CHECK_THROWS_AS(scenario_from_json_text("{}", "bad.json"), Error);

  const char* bad_ref = R"({
    "schema_version": 1,
    "scene": {"objects": []},
    "route": {"legs": [{"waypoint": [0,0,-5], "objectives": ["ghost"]}]}
  })";
  try {
    scenario_from_json_text(bad_ref, "bad.json");
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }

  const char* dup = R"({
    "schema_version": 1,
    "scene": {"objects": [
      {"id": "x", "kind": "trash", "position": [0,0,0], "radius": 0.1},
      {"id": "x", "kind": "trash", "position": [1,0,0], "radius": 0.1}
    ]},
    "route": {"legs": [{"waypoint": [0,0,-5]}]}
  })";
  CHECK_THROWS_AS(scenario_from_json_text(dup, "dup.json"), Error);
}

TEST_CASE("seed precedence: file beats PURIFIER_SEED, env beats default") {
  const char* no_seed = R"({
    "schema_version": 1,
    "scene": {"objects": []},
    "route": {"legs": [{"waypoint": [0,0,-5]}]}
  })";
  ::setenv("PURIFIER_SEED", "777", 1);
  CHECK(scenario_from_json_text(no_seed, "s").seed == 777);
  CHECK(scenario_from_json_text(kEmptyRunScenario, "s").seed == 0);
  ::unsetenv("PURIFIER_SEED");
  CHECK(scenario_from_json_text(no_seed, "s").seed == 0);
}

TEST_CASE("trace segments are piecewise constant with a neutral tail") {
  Trace trace;
  trace.segments.push_back({10, {}, {}, {}, false, 0.0});
  trace.segments.push_back({5, {}, {}, {}, true, -1.0});
  CHECK(trace.total_ticks() == 15);
  CHECK_FALSE(trace.at(9).trigger);
  CHECK(trace.at(10).trigger);
  CHECK(trace.at(14).reel_input == -1.0);
  CHECK_FALSE(trace.at(15).trigger);  // past the end
}

TEST_CASE("empty scene run ends at shield-timer expiry with zero counters") {
  Scenario sc = scenario_from_json_text(kEmptyRunScenario, "empty");
  RunMetrics m = run_scenario(sc);
  CHECK(m.summary.trash_collected == 0);
  CHECK(m.summary.wildlife_healed == 0);
  CHECK(m.summary.stops_fully_cleared == 0);
  REQUIRE(m.stop_outcomes.size() == 1);
  CHECK(m.stop_outcomes[0] == StopOutcome::TimerExpired);
  // 1 s travel + 1 s shield at 90 Hz
  CHECK(m.summary.total_ticks == 181);
}

TEST_CASE("scripted grab-and-drop collects the trash") {
  Scenario sc = scenario_from_json_text(kGrabAndDropScenario, "grab");
  RunMetrics m = run_scenario(sc);
  CHECK(m.summary.trash_collected == 1);
  CHECK(m.summary.stops_fully_cleared == 1);
  REQUIRE(m.stop_outcomes.size() == 1);
  CHECK(m.stop_outcomes[0] == StopOutcome::ObjectivesComplete);
  REQUIRE(m.attempts.size() == 1);
  CHECK(m.attempts[0].hit);
}

TEST_CASE("identical scenarios produce byte-identical outputs") {
  Scenario sc = scenario_from_json_text(kGrabAndDropScenario, "grab");
  RunMetrics a = run_scenario(sc);
  RunMetrics b = run_scenario(sc);
  CHECK(a.to_json_text() == b.to_json_text());
  CHECK(a.attempts_csv() == b.attempts_csv());
  CHECK(a.summary_text() == b.summary_text());
  CHECK_FALSE(a.digests.empty());
}

TEST_CASE("perfect aim always selects") {
  SelectBenchParams p;
  p.distance = 50.0;
  p.target_radius = 0.5;
  p.sigma = 0.0;
  p.attempts = 100;
  p.technique = SelectionTechnique::Ray;
  CHECK(selection_benchmark(p) == 1.0);
  p.technique = SelectionTechnique::Flashlight;
  p.target_radius = 0.0;
  CHECK(selection_benchmark(p) == 1.0);
}

TEST_CASE("selection rates track the Rayleigh analytic oracle") {
  const double sigma = deg_to_rad(2.0);
  const double theta_target = deg_to_rad(0.5);
  const double half_angle = deg_to_rad(5.0);
  const std::uint64_t attempts = 20000;

  SelectBenchParams ray;
  ray.distance = 100.0;
  ray.target_radius = 100.0 * std::sin(theta_target);
  ray.sigma = sigma;
  ray.attempts = attempts;
  ray.seed = 99;
  ray.technique = SelectionTechnique::Ray;
  double ray_rate = selection_benchmark(ray);
  double ray_expected = 1.0 - std::exp(-theta_target * theta_target /
                                       (2.0 * sigma * sigma));
  double ray_se = std::sqrt(ray_expected * (1 - ray_expected) / attempts);
  CHECK(std::abs(ray_rate - ray_expected) < 4.0 * ray_se + 1e-4);

  SelectBenchParams flash = ray;
  flash.target_radius = 0.0;  // point-like
  flash.technique = SelectionTechnique::Flashlight;
  flash.cone_half_angle = half_angle;
  double flash_rate = selection_benchmark(flash);
  double flash_expected =
      1.0 - std::exp(-half_angle * half_angle / (2.0 * sigma * sigma));
  double flash_se =
      std::sqrt(flash_expected * (1 - flash_expected) / attempts);
  CHECK(std::abs(flash_rate - flash_expected) < 4.0 * flash_se + 1e-4);
}

TEST_CASE("flashlight dominates ray on paired seeds") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SelectBenchParams ray;
    ray.distance = 100.0;
    ray.target_radius = 100.0 * std::sin(deg_to_rad(0.5));
    ray.sigma = deg_to_rad(2.0);
    ray.attempts = 5000;
    ray.seed = seed;
    ray.technique = SelectionTechnique::Ray;

    SelectBenchParams flash = ray;
    flash.technique = SelectionTechnique::Flashlight;
    flash.cone_half_angle = deg_to_rad(5.0);
    CHECK(selection_benchmark(flash) >= selection_benchmark(ray));
  }
}

TEST_CASE("reel benchmark tick counts") {
  ReelBenchParams p;  // 10 m at 2 m/s, 90 Hz
  CHECK(reel_benchmark(p) == 450);

  p.technique = ReelTechnique::RawrXd;
  p.tilt = deg_to_rad(60.0);
  CHECK(reel_benchmark(p) == 90);

  ReelBenchParams zero;
  zero.goal_t = zero.start_t;
  CHECK(reel_benchmark(zero) == 0);

  ReelBenchParams unreachable;
  unreachable.goal_t = 500.0;  // beyond t_max
  CHECK_THROWS_AS(reel_benchmark(unreachable), Error);
}

TEST_CASE("coop lockstep over a socketpair matches the solo run") {
  Scenario sc = scenario_from_json_text(kGrabAndDropScenario, "grab");
  RunMetrics solo = run_scenario(sc);

  auto [ta, tb] = make_transport_pair();
  SessionConfig base;
  base.scenario_id = sc.id;
  base.seed = sc.seed;
  base.tick_rate = sc.tick_rate;

  SessionConfig ca = base;
  ca.local_role = Role::Collector;
  SessionConfig cb = base;
  cb.local_role = Role::Medic;
  Session collector(std::move(ta), ca);
  Session medic(std::move(tb), cb);

  RunMetrics medic_metrics;
  std::thread peer([&] {
    medic.handshake();
    medic_metrics = coop_run(sc, Role::Medic, medic);
  });
  collector.handshake();
  RunMetrics collector_metrics = coop_run(sc, Role::Collector, collector);
  peer.join();

  CHECK(collector_metrics.to_json_text() == medic_metrics.to_json_text());
  CHECK(collector_metrics.summary.trash_collected ==
        solo.summary.trash_collected);
  CHECK(collector_metrics.digests == medic_metrics.digests);
}

TEST_CASE("an injected bit flip is caught as desync on both peers") {
  Scenario sc = scenario_from_json_text(kGrabAndDropScenario, "grab");
  auto [ta, tb] = make_transport_pair();
  SessionConfig base;
  base.scenario_id = sc.id;
  base.seed = sc.seed;
  base.tick_rate = sc.tick_rate;
  SessionConfig ca = base;
  ca.local_role = Role::Collector;
  SessionConfig cb = base;
  cb.local_role = Role::Medic;
  Session collector(std::move(ta), ca);
  Session medic(std::move(tb), cb);

  bool medic_desync = false;
  std::thread peer([&] {
    medic.handshake();
    try {
      coop_run(sc, Role::Medic, medic, /*inject_flip_tick=*/10);
    } catch (const Error& e) {
      medic_desync = e.kind() == ErrorKind::Sync;
    }
  });
  collector.handshake();
  bool collector_desync = false;
  try {
    coop_run(sc, Role::Collector, collector);
  } catch (const Error& e) {
    collector_desync = e.kind() == ErrorKind::Sync;
  }
  peer.join();
  CHECK(medic_desync);
  CHECK(collector_desync);
}
