#include "purifier/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace purifier {

namespace fs = std::filesystem;
using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scenario parsing

namespace {

ObjectKind kind_from_string(const std::string& s) {
  if (s == "trash") return ObjectKind::Trash;
  if (s == "wildlife") return ObjectKind::Wildlife;
  if (s == "medication") return ObjectKind::Medication;
  throw Error(ErrorKind::Config, "unknown object kind: " + s);
}

Vec3 vec3_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorKind::Config, what + " must be a [x, y, z] array");
  }
  Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (!v.finite()) {
    throw Error(ErrorKind::Config, what + " must be finite");
  }
  return v;
}

Quat quat_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorKind::Config, what + " must be a [w, x, y, z] array");
  }
  return Quat{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
              j[3].get<double>()}
      .normalized();
}

Trace trace_from_json(const json& j, const std::string& what) {
  Trace trace;
  if (!j.is_array()) {
    throw Error(ErrorKind::Config, what + " must be an array of segments");
  }
  for (const auto& seg : j) {
    TraceSegment s;
    s.ticks = seg.at("ticks").get<std::uint64_t>();
    if (seg.contains("head")) s.head.position = vec3_from_json(seg["head"], what + ".head");
    if (seg.contains("primary")) s.primary.position = vec3_from_json(seg["primary"], what + ".primary");
    if (seg.contains("secondary")) s.secondary.position = vec3_from_json(seg["secondary"], what + ".secondary");
    if (seg.contains("head_quat")) s.head.orientation = quat_from_json(seg["head_quat"], what);
    if (seg.contains("primary_quat")) s.primary.orientation = quat_from_json(seg["primary_quat"], what);
    if (seg.contains("secondary_quat")) s.secondary.orientation = quat_from_json(seg["secondary_quat"], what);
    s.trigger = seg.value("trigger", false);
    s.reel_input = seg.value("reel", 0.0);
    if (s.reel_input < -1.0 || s.reel_input > 1.0) {
      throw Error(ErrorKind::Config, what + ": reel input outside [-1, 1]");
    }
    trace.segments.push_back(s);
  }
  return trace;
}

}  // namespace

std::uint64_t Trace::total_ticks() const {
  std::uint64_t n = 0;
  for (const auto& s : segments) n += s.ticks;
  return n;
}

TraceSegment Trace::at(std::uint64_t tick) const {
  std::uint64_t base = 0;
  for (const auto& s : segments) {
    if (tick < base + s.ticks) return s;
    base += s.ticks;
  }
  return TraceSegment{};  // neutral past the end
}

Scenario scenario_from_json_text(const std::string& text,
                                 const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config,
                source_name + ": " + e.what());
  }
  try {
    Scenario sc;
    if (!j.contains("schema_version")) {
      throw Error(ErrorKind::Config, source_name + ": missing schema_version");
    }
    sc.schema_version = j["schema_version"].get<int>();
    if (sc.schema_version != 1) {
      throw Error(ErrorKind::Config,
                  source_name + ": unsupported schema_version " +
                      std::to_string(sc.schema_version));
    }
    sc.id = j.value("id", source_name);
    if (j.contains("seed")) {
      sc.seed = j["seed"].get<std::uint64_t>();
    } else if (const char* env = std::getenv("PURIFIER_SEED")) {
      sc.seed = std::strtoull(env, nullptr, 10);
    }
    sc.tick_rate = j.value("tick_rate", 90.0);
    if (!(sc.tick_rate > 0.0)) {
      throw Error(ErrorKind::Config, source_name + ": tick_rate must be > 0");
    }

    const json& scene = j.at("scene");
    for (const auto& o : scene.value("objects", json::array())) {
      SceneObject obj;
      obj.id = o.at("id").get<std::string>();
      if (sc.scene.find(obj.id)) {
        throw Error(ErrorKind::Config,
                    source_name + ": duplicate object id '" + obj.id + "'");
      }
      obj.kind = kind_from_string(o.at("kind").get<std::string>());
      obj.position = vec3_from_json(o.at("position"), "object " + obj.id);
      obj.bounding_radius = o.value("radius", 0.1);
      if (!(obj.bounding_radius > 0.0)) {
        throw Error(ErrorKind::Config, source_name + ": object '" + obj.id +
                                           "' radius must be > 0");
      }
      sc.scene.objects.push_back(obj);
    }
    sc.bin_position = scene.contains("bin_position")
                          ? vec3_from_json(scene["bin_position"], "bin_position")
                          : Vec3{};
    sc.capture_radius = scene.value("capture_radius", 0.75);
    sc.feed_radius = scene.value("feed_radius", 1.0);

    const json& route = j.at("route");
    sc.route.start = route.contains("start")
                         ? vec3_from_json(route["start"], "route.start")
                         : Vec3{};
    sc.route.travel_speed = route.value("travel_speed", 5.0);
    if (!(sc.route.travel_speed > 0.0)) {
      throw Error(ErrorKind::Config, source_name + ": travel_speed must be > 0");
    }
    std::size_t leg_index = 0;
    for (const auto& l : route.at("legs")) {
      RouteLeg leg;
      leg.waypoint = vec3_from_json(l.at("waypoint"),
                                    "leg " + std::to_string(leg_index));
      leg.shield_open_duration = l.value("shield_open_duration", 60.0);
      if (!(leg.shield_open_duration > 0.0)) {
        throw Error(ErrorKind::Config,
                    source_name + ": leg " + std::to_string(leg_index) +
                        " shield_open_duration must be > 0");
      }
      for (const auto& id : l.value("objectives", json::array())) {
        std::string oid = id.get<std::string>();
        if (!sc.scene.find(oid)) {
          throw Error(ErrorKind::Config,
                      source_name + ": unknown object id '" + oid +
                          "' in route leg " + std::to_string(leg_index));
        }
        leg.objective_ids.push_back(oid);
      }
      sc.route.legs.push_back(leg);
      ++leg_index;
    }
    if (sc.route.legs.empty()) {
      throw Error(ErrorKind::Config, source_name + ": route needs >= 1 leg");
    }

    if (j.contains("techniques")) {
      const json& t = j["techniques"];
      sc.flow_match.cone_half_angle =
          deg_to_rad(t.value("cone_half_angle_deg", 5.0));
      sc.flow_match.torso_offset = t.value("torso_offset", 0.25);
      sc.flow_match.max_range = t.value("max_range", kDefaultSelectionRange);
      sc.reel.theta_max = deg_to_rad(t.value("theta_max_deg", 60.0));
      sc.reel.base_speed = t.value("base_speed", 2.0);
      sc.reel.t_min = t.value("t_min", 0.25);
      sc.reel.t_max = t.value("t_max", 200.0);
      sc.reel.mirror = t.value("mirror", false);
      sc.reel.max_range = sc.flow_match.max_range;
      if (!(sc.flow_match.cone_half_angle > 0.0 &&
            sc.flow_match.cone_half_angle < kPi / 2.0)) {
        throw Error(ErrorKind::Config,
                    source_name + ": cone_half_angle_deg out of range");
      }
      if (!(sc.reel.base_speed > 0.0) || !(sc.reel.t_min < sc.reel.t_max)) {
        throw Error(ErrorKind::Config, source_name + ": bad reel parameters");
      }
    }

    if (j.contains("noise")) {
      sc.noise_sigma = deg_to_rad(j["noise"].value("sigma_deg", 0.0));
      if (sc.noise_sigma < 0.0) {
        throw Error(ErrorKind::Config, source_name + ": sigma must be >= 0");
      }
    }

    if (j.contains("traces")) {
      const json& tr = j["traces"];
      if (tr.contains("collector")) {
        sc.collector_trace = trace_from_json(tr["collector"], "traces.collector");
      }
      if (tr.contains("medic")) {
        sc.medic_trace = trace_from_json(tr["medic"], "traces.medic");
      }
    }
    sc.max_ticks = j.value("max_ticks", std::uint64_t{90 * 600});
    return sc;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, source_name + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Config, "cannot open scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Metrics serialization

namespace {

const char* to_string(StopOutcome o) {
  return o == StopOutcome::ObjectivesComplete ? "objectives_complete"
                                              : "timer_expired";
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string RunMetrics::to_json_text() const {
  json j;
  j["schema_version"] = 1;
  j["seed"] = seed;
  j["tick_rate"] = tick_rate;
  j["summary"] = {{"trash_collected", summary.trash_collected},
                  {"wildlife_healed", summary.wildlife_healed},
                  {"stops_fully_cleared", summary.stops_fully_cleared},
                  {"total_ticks", summary.total_ticks}};
  j["stop_outcomes"] = json::array();
  for (auto o : stop_outcomes) j["stop_outcomes"].push_back(to_string(o));
  int hits = 0;
  for (const auto& a : attempts) hits += a.hit ? 1 : 0;
  j["selection"] = {{"attempts", attempts.size()}, {"hits", hits}};
  j["reel_sessions"] = json::array();
  for (const auto& r : reel_sessions) {
    j["reel_sessions"].push_back(
        {{"start_t", r.start_t}, {"end_t", r.end_t}, {"ticks", r.ticks}});
  }
  j["digests"] = json::array();
  for (const auto& [tick, hash] : digests) {
    j["digests"].push_back({{"tick", tick}, {"hash", hex16(hash)}});
  }
  return j.dump(2) + "\n";
}

std::string RunMetrics::attempts_csv() const {
  std::string out = "attempt,technique,deviation_rad,hit\n";
  char line[160];
  for (const auto& a : attempts) {
    std::snprintf(line, sizeof(line), "%llu,%s,%.17g,%d\n",
                  static_cast<unsigned long long>(a.attempt),
                  a.technique.c_str(), a.deviation_rad, a.hit ? 1 : 0);
    out += line;
  }
  return out;
}

std::string RunMetrics::summary_text() const {
  std::ostringstream out;
  out << "Planet purification report\n";
  out << "  trash collected:     " << summary.trash_collected << "\n";
  out << "  wildlife healed:     " << summary.wildlife_healed << "\n";
  out << "  stops fully cleared: " << summary.stops_fully_cleared << " / "
      << stop_outcomes.size() << "\n";
  out << "  total ticks:         " << summary.total_ticks << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// SimRunner

SimRunner::SimRunner(const Scenario& scenario)
    : scenario_(scenario),
      scene_(scenario.scene),
      route_(scenario.route),
      rover_(RoverState::at_route_start(scenario.route)),
      flow_match_(scenario.flow_match),
      rawr_xd_(scenario.reel),
      rng_(scenario.seed) {
  metrics_.seed = scenario.seed;
  metrics_.tick_rate = scenario.tick_rate;
}

bool SimRunner::done() const {
  return rover_.phase == RoverPhase::Completed || tick_ >= scenario_.max_ticks;
}

InputFrame SimRunner::input_for(Role role, std::uint64_t tick) const {
  const Trace& trace =
      role == Role::Collector ? scenario_.collector_trace : scenario_.medic_trace;
  TraceSegment seg = trace.at(tick);
  InputFrame f;
  f.tick = tick;
  f.role = role;
  f.head = seg.head;
  f.primary_controller = seg.primary;
  f.secondary_controller = seg.secondary;
  f.trigger = seg.trigger;
  f.reel_input = seg.reel_input;
  return f;
}

Vec3 SimRunner::perturbed_aim(const Vec3& axis, double* deviation_out) {
  auto [z0, z1] = rng_.next_gaussian_pair();
  double yaw = z0 * scenario_.noise_sigma;
  double pitch = z1 * scenario_.noise_sigma;
  double dev = std::hypot(yaw, pitch);
  *deviation_out = dev;
  if (dev < 1e-15) return axis;
  Vec3 e1 = cross(axis, kUp);
  if (norm(e1) < 1e-9) e1 = cross(axis, kRight);
  e1 = normalized(e1);
  Vec3 e2 = cross(axis, e1);
  double phi = std::atan2(pitch, yaw);
  return axis * std::cos(dev) +
         (e1 * std::cos(phi) + e2 * std::sin(phi)) * std::sin(dev);
}

namespace {

Pose to_world(const Pose& local, const Vec3& rover_position) {
  return Pose{local.position + rover_position, local.orientation};
}

}  // namespace

void SimRunner::handle_collector(const InputFrame& frame) {
  Pose head = to_world(frame.head, rover_.position);
  Pose controller = to_world(frame.primary_controller, rover_.position);

  double deviation = 0.0;
  bool fresh_press = frame.trigger && !flow_match_.trigger_was_down();
  if (fresh_press && !flow_match_.grabbing() && scenario_.noise_sigma > 0.0) {
    flow_match_.set_aim_override(
        perturbed_aim(controller.forward(), &deviation));
  }

  FlowMatchTickResult result =
      flow_match_.tick(head, controller, frame.trigger, scene_);
  if (result.selection_attempt) {
    metrics_.attempts.push_back({metrics_.attempts.size(), "flow_match",
                                 deviation, result.selection_attempt->hit()});
  }
  if (result.released_object) {
    const SceneObject& obj = scene_.get(*result.released_object);
    if (obj.kind == ObjectKind::Trash) {
      try_collect(scene_, obj.id, scenario_.bin_position + rover_.position,
                  scenario_.capture_radius);
    }
  }
}

void SimRunner::handle_medic(const InputFrame& frame) {
  Pose selecting = to_world(frame.primary_controller, rover_.position);
  Pose non_selecting = to_world(frame.secondary_controller, rover_.position);

  double deviation = 0.0;
  bool fresh_press = frame.trigger && !rawr_xd_.trigger_was_down();
  if (fresh_press && !rawr_xd_.reeling() && scenario_.noise_sigma > 0.0) {
    rawr_xd_.set_aim_override(perturbed_aim(selecting.forward(), &deviation));
  }

  RawrXdTickResult result =
      rawr_xd_.tick(selecting, non_selecting, frame.trigger, frame.reel_input,
                    scene_, scenario_.dt());
  if (result.selection_attempt) {
    metrics_.attempts.push_back({metrics_.attempts.size(), "rawr_xd",
                                 deviation, result.selection_attempt->hit()});
    if (result.selection_attempt->hit()) {
      open_reel_ = {rawr_xd_.reel_state()->t, tick_};
      last_reel_t_ = rawr_xd_.reel_state()->t;
    }
  }
  if (result.released_object) {
    if (open_reel_) {
      metrics_.reel_sessions.push_back(
          {open_reel_->first, last_reel_t_, tick_ - open_reel_->second});
      open_reel_.reset();
    }
    const SceneObject& obj = scene_.get(*result.released_object);
    if (obj.kind == ObjectKind::Medication) {
      // nearest Active wildlife in feed range, ties by id
      const SceneObject* best = nullptr;
      double best_dist = 0.0;
      for (const auto& candidate : scene_.objects) {
        if (candidate.kind != ObjectKind::Wildlife ||
            candidate.status != ObjectStatus::Active) {
          continue;
        }
        double d = norm(candidate.position - obj.position);
        if (d > scenario_.feed_radius) continue;
        if (!best || d < best_dist ||
            (d == best_dist && candidate.id < best->id)) {
          best = &candidate;
          best_dist = d;
        }
      }
      if (best) {
        try_medicate(scene_, obj.id, best->id, scenario_.feed_radius);
      }
    }
  } else if (rawr_xd_.reeling()) {
    last_reel_t_ = rawr_xd_.reel_state()->t;
  }
}

void SimRunner::step(const InputFrame& collector, const InputFrame& medic) {
  if (done()) return;
  if (collector.role != Role::Collector || medic.role != Role::Medic) {
    throw Error(ErrorKind::Sync, "role authority violation in SimStep");
  }

  // Objects are only reachable while the rover sits at their stop.
  CandidateFilter filter;
  if (rover_.phase == RoverPhase::Stopped) {
    const RouteLeg& leg = route_.legs[rover_.leg_index];
    filter = [&leg](const SceneObject& obj) {
      return std::find(leg.objective_ids.begin(), leg.objective_ids.end(),
                       obj.id) != leg.objective_ids.end();
    };
  } else {
    filter = [](const SceneObject&) { return false; };
  }
  flow_match_.set_candidate_filter(filter);
  rawr_xd_.set_candidate_filter(filter);

  handle_collector(collector);
  handle_medic(medic);
  rover_ = rover_step(rover_, scene_, route_, scenario_.dt());
  ++tick_;

  if (done()) {
    metrics_.summary = rover_.summary;
    metrics_.stop_outcomes = rover_.stop_outcomes;
  }
}

std::uint64_t SimRunner::digest() const { return state_digest(scene_, rover_); }

void SimRunner::record_digest(std::uint64_t tick, std::uint64_t hash) {
  metrics_.digests.emplace_back(tick, hash);
}

void SimRunner::flip_state_bit() {
  if (scene_.objects.empty()) {
    throw Error(ErrorKind::Runtime, "no object to perturb");
  }
  double& x = scene_.objects.front().position.x;
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof(bits));
  bits ^= 1ull;
  std::memcpy(&x, &bits, sizeof(bits));
}

RunMetrics SimRunner::take_metrics() {
  metrics_.summary = rover_.summary;
  metrics_.stop_outcomes = rover_.stop_outcomes;
  return metrics_;
}

// ---------------------------------------------------------------------------
// Run paths

RunMetrics run_scenario(const Scenario& scenario) {
  SimRunner runner(scenario);
  const std::uint64_t digest_interval = 30;
  while (!runner.done()) {
    std::uint64_t t = runner.tick();
    InputFrame collector = runner.input_for(Role::Collector, t);
    InputFrame medic = runner.input_for(Role::Medic, t);
    runner.step(collector, medic);
    if (runner.tick() % digest_interval == 0) {
      runner.record_digest(runner.tick(), runner.digest());
    }
  }
  if (runner.tick() % digest_interval != 0) {
    runner.record_digest(runner.tick(), runner.digest());  // final checkpoint
  }
  return runner.take_metrics();
}

RunMetrics coop_run(const Scenario& scenario, Role local_role,
                    Session& session, std::int64_t inject_flip_tick) {
  SimRunner runner(scenario);
  bool flipped = false;
  while (!runner.done()) {
    InputFrame local = runner.input_for(local_role, runner.tick());
    std::optional<SimStep> step = session.lockstep_advance(local);
    if (!step) continue;  // session retries internally; defensive
    runner.step(step->collector, step->medic);

    if (inject_flip_tick >= 0 && !flipped &&
        runner.tick() > static_cast<std::uint64_t>(inject_flip_tick)) {
      runner.flip_state_bit();
      flipped = true;
    }
    if (runner.tick() % session.digest_interval() == 0) {
      std::uint64_t hash = runner.digest();
      runner.record_digest(runner.tick(), hash);
      session.exchange_digest(runner.tick(), hash);
    }
  }
  // final digest so short runs still cross-check at least once
  std::uint64_t hash = runner.digest();
  if (runner.tick() % session.digest_interval() != 0) {
    runner.record_digest(runner.tick(), hash);
  }
  session.exchange_digest(runner.tick(), hash);
  session.send_bye();
  return runner.take_metrics();
}

// ---------------------------------------------------------------------------
// Benchmarks

double selection_benchmark(const SelectBenchParams& params,
                           std::vector<SelectionAttemptRecord>* rows) {
  if (params.attempts < 1) {
    throw Error(ErrorKind::Config, "attempts must be >= 1");
  }
  if (!(params.distance > 0.0)) {
    throw Error(ErrorKind::Config, "distance must be > 0");
  }
  if (params.sigma < 0.0) {
    throw Error(ErrorKind::Config, "sigma must be >= 0");
  }

  const Vec3 origin{0.0, 0.0, 0.0};
  const Vec3 base = kForward;
  double radius = params.target_radius > 0.0 ? params.target_radius : 1e-9;

  Scene scene;
  scene.objects.push_back(
      {"target", ObjectKind::Trash, base * params.distance, radius});

  Vec3 e1 = normalized(cross(base, kUp));
  Vec3 e2 = cross(base, e1);

  SplitMix64 rng(params.seed);
  std::uint64_t hits = 0;
  const char* technique_name =
      params.technique == SelectionTechnique::Ray ? "ray" : "flashlight";
  for (std::uint64_t i = 0; i < params.attempts; ++i) {
    auto [z0, z1] = rng.next_gaussian_pair();
    double yaw = z0 * params.sigma;
    double pitch = z1 * params.sigma;
    double dev = std::hypot(yaw, pitch);
    Vec3 dir = base;
    if (dev >= 1e-15) {
      double phi = std::atan2(pitch, yaw);
      dir = base * std::cos(dev) +
            (e1 * std::cos(phi) + e2 * std::sin(phi)) * std::sin(dev);
    }
    bool hit;
    if (params.technique == SelectionTechnique::Ray) {
      hit = ray_select(Ray(origin, dir), scene).hit();
    } else {
      hit = flashlight_select(Cone(origin, dir, params.cone_half_angle), scene)
                .hit();
    }
    if (hit) ++hits;
    if (rows) rows->push_back({i, technique_name, dev, hit});
  }
  return static_cast<double>(hits) / static_cast<double>(params.attempts);
}

std::uint64_t reel_benchmark(const ReelBenchParams& params) {
  if (!(params.dt > 0.0)) {
    throw Error(ErrorKind::Config, "dt must be > 0");
  }
  if (params.goal_t < params.t_min - 1e-6 ||
      params.goal_t > params.t_max + 1e-6) {
    throw Error(ErrorKind::Config, "unreachable goal: outside t bounds");
  }
  const double tol = 1e-6;
  if (std::abs(params.start_t - params.goal_t) <= tol) return 0;

  double multiplier = params.technique == ReelTechnique::FishingReel
                          ? 1.0
                          : wrist_multiplier(params.tilt, params.theta_max);
  double input = params.goal_t > params.start_t ? 1.0 : -1.0;

  ReelState state{"bench", Ray({0, 0, 0}, kForward), params.start_t,
                  params.base_speed};
  std::uint64_t ticks = 0;
  for (;;) {
    ReelState next = reel_tick(state, input, multiplier, params.dt,
                               params.t_min, params.t_max);
    ++ticks;
    if (std::abs(next.t - params.goal_t) <= tol) return ticks;
    if (next.t == state.t) {
      throw Error(ErrorKind::Config, "unreachable goal: clamped at t bound");
    }
    state = next;
  }
}

// ---------------------------------------------------------------------------
// Outputs and verification

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::Runtime, "cannot write " + path.string());
  }
  out << content;
}

}  // namespace

void write_run_outputs(const RunMetrics& metrics, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "metrics.json", metrics.to_json_text());
  write_file(fs::path(out_dir) / "attempts.csv", metrics.attempts_csv());
  write_file(fs::path(out_dir) / "summary.txt", metrics.summary_text());
}

void verify_scenarios(const std::string& scenarios_dir) {
  if (!fs::is_directory(scenarios_dir)) {
    throw Error(ErrorKind::Config,
                "not a scenario directory: " + scenarios_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(scenarios_dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw Error(ErrorKind::Config,
                "no scenario files in " + scenarios_dir);
  }
  for (const auto& file : files) {
    Scenario scenario = load_scenario(file.string());
    RunMetrics a = run_scenario(scenario);
    RunMetrics b = run_scenario(scenario);
    if (a.to_json_text() != b.to_json_text() ||
        a.attempts_csv() != b.attempts_csv() ||
        a.summary_text() != b.summary_text()) {
      throw Error(ErrorKind::Runtime,
                  "verify: outputs differ between runs of " + file.string());
    }
  }
}

}  // namespace purifier
