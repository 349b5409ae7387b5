#include "purifier.h"

#include <fstream>
#include <string>

#include <json.hpp>

#include "purifier/harness.hpp"

using namespace purifier;
using json = nlohmann::json;

namespace {

thread_local std::string g_last_error = "";

purifier_status fail(const std::exception& e, purifier_status fallback) {
  g_last_error = e.what();
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return static_cast<purifier_status>(static_cast<int>(err->kind()));
  }
  return fallback;
}

template <typename Fn>
purifier_status guarded(Fn&& fn) {
  try {
    fn();
    return PURIFIER_OK;
  } catch (const std::exception& e) {
    return fail(e, PURIFIER_ERR_RUNTIME);
  }
}

}  // namespace

struct purifier_scenario {
  json doc;
  std::string source;
  Scenario parsed;

  void reparse() { parsed = scenario_from_json_text(doc.dump(), source); }
};

extern "C" {

const char* purifier_version(void) { return "1.0.0"; }

const char* purifier_last_error(void) { return g_last_error.c_str(); }

purifier_status purifier_scenario_load(const char* path,
                                       purifier_scenario** out) {
  return guarded([&] {
    if (!path || !out) throw Error(ErrorKind::Config, "null argument");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::Config,
                  std::string("cannot open scenario file: ") + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    auto handle = std::make_unique<purifier_scenario>();
    handle->source = path;
    handle->parsed = scenario_from_json_text(text, path);  // validates
    handle->doc = json::parse(text);
    *out = handle.release();
  });
}

purifier_status purifier_scenario_load_string(const char* json_text,
                                              const char* source_name,
                                              purifier_scenario** out) {
  return guarded([&] {
    if (!json_text || !out) throw Error(ErrorKind::Config, "null argument");
    std::string name = source_name ? source_name : "<string>";
    auto handle = std::make_unique<purifier_scenario>();
    handle->source = name;
    handle->parsed = scenario_from_json_text(json_text, name);
    handle->doc = json::parse(json_text);
    *out = handle.release();
  });
}

void purifier_scenario_free(purifier_scenario* scenario) { delete scenario; }

purifier_status purifier_scenario_override(purifier_scenario* scenario,
                                           const char* json_pointer,
                                           const char* json_value) {
  return guarded([&] {
    if (!scenario || !json_pointer || !json_value) {
      throw Error(ErrorKind::Config, "null argument");
    }
    json value;
    try {
      value = json::parse(json_value);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Config,
                  std::string("override value is not valid JSON: ") + e.what());
    }
    try {
      scenario->doc[json::json_pointer(json_pointer)] = value;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Config,
                  std::string("bad override pointer: ") + e.what());
    }
    scenario->reparse();
  });
}

purifier_status purifier_run(const purifier_scenario* scenario,
                             const char* out_dir) {
  return guarded([&] {
    if (!scenario || !out_dir) throw Error(ErrorKind::Config, "null argument");
    RunMetrics metrics = run_scenario(scenario->parsed);
    write_run_outputs(metrics, out_dir);
  });
}

purifier_status purifier_bench_select(const purifier_select_bench_params* p,
                                      double* rate_out, const char* csv_path) {
  return guarded([&] {
    if (!p || !rate_out) throw Error(ErrorKind::Config, "null argument");
    SelectBenchParams params;
    params.distance = p->distance_m;
    params.target_radius = p->target_radius_m;
    params.sigma = p->sigma_rad;
    params.cone_half_angle = p->cone_half_angle_rad;
    params.attempts = p->attempts;
    params.seed = p->seed;
    params.technique = p->technique == PURIFIER_SELECT_RAY
                           ? SelectionTechnique::Ray
                           : SelectionTechnique::Flashlight;
    std::vector<SelectionAttemptRecord> rows;
    *rate_out = selection_benchmark(params, csv_path ? &rows : nullptr);
    if (csv_path) {
      RunMetrics m;
      m.attempts = std::move(rows);
      std::ofstream out(csv_path, std::ios::binary);
      if (!out) {
        throw Error(ErrorKind::Runtime,
                    std::string("cannot write ") + csv_path);
      }
      out << m.attempts_csv();
    }
  });
}

purifier_status purifier_bench_reel(const purifier_reel_bench_params* p,
                                    uint64_t* ticks_out) {
  return guarded([&] {
    if (!p || !ticks_out) throw Error(ErrorKind::Config, "null argument");
    ReelBenchParams params;
    params.start_t = p->start_t_m;
    params.goal_t = p->goal_t_m;
    params.tilt = p->tilt_rad;
    params.base_speed = p->base_speed_mps;
    params.dt = p->dt_s;
    params.theta_max = p->theta_max_rad;
    params.t_min = p->t_min_m;
    params.t_max = p->t_max_m;
    params.technique = p->technique == PURIFIER_REEL_FISHING
                           ? ReelTechnique::FishingReel
                           : ReelTechnique::RawrXd;
    *ticks_out = reel_benchmark(params);
  });
}

purifier_status purifier_coop_run(const purifier_scenario* scenario,
                                  purifier_role role, const char* endpoint,
                                  int listen, const char* out_dir,
                                  int64_t inject_flip_tick) {
  return guarded([&] {
    if (!scenario || !endpoint || !out_dir) {
      throw Error(ErrorKind::Config, "null argument");
    }
    const Scenario& sc = scenario->parsed;
    Role local_role =
        role == PURIFIER_ROLE_COLLECTOR ? Role::Collector : Role::Medic;

    auto timeout = std::chrono::milliseconds(10000);
    std::unique_ptr<Transport> transport =
        listen ? tcp_listen_accept(endpoint, timeout)
               : tcp_connect(endpoint, timeout);

    SessionConfig config;
    config.local_role = local_role;
    config.scenario_id = sc.id;
    config.seed = sc.seed;
    config.tick_rate = sc.tick_rate;
    Session session(std::move(transport), config);
    session.handshake();

    RunMetrics metrics = coop_run(sc, local_role, session, inject_flip_tick);
    write_run_outputs(metrics, out_dir);
  });
}

purifier_status purifier_verify(const char* scenarios_dir) {
  return guarded([&] {
    if (!scenarios_dir) throw Error(ErrorKind::Config, "null argument");
    verify_scenarios(scenarios_dir);
  });
}

}  // extern "C"
