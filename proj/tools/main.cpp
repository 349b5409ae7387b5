// purifier CLI: scenario runs, benchmarks, cooperative sessions, and
// golden-scenario verification, all through the shared-library C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "purifier.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg_to_rad(double deg) { return deg * kPi / 180.0; }

int report(purifier_status status) {
  if (status != PURIFIER_OK) {
    std::fprintf(stderr, "error: %s\n", purifier_last_error());
  }
  return static_cast<int>(status);
}

struct ScenarioHandle {
  purifier_scenario* ptr = nullptr;
  ~ScenarioHandle() { purifier_scenario_free(ptr); }
};

// flag > scenario file > built-in default; PURIFIER_SEED sits below the file.
purifier_status apply_overrides(purifier_scenario* scenario,
                                const CLI::Option* seed_opt, std::uint64_t seed,
                                const CLI::Option* rate_opt, double tick_rate,
                                const CLI::Option* sigma_opt, double sigma_deg) {
  purifier_status st = PURIFIER_OK;
  if (seed_opt->count() > 0) {
    st = purifier_scenario_override(scenario, "/seed",
                                    std::to_string(seed).c_str());
    if (st != PURIFIER_OK) return st;
  }
  if (rate_opt->count() > 0) {
    st = purifier_scenario_override(scenario, "/tick_rate",
                                    std::to_string(tick_rate).c_str());
    if (st != PURIFIER_OK) return st;
  }
  if (sigma_opt->count() > 0) {
    st = purifier_scenario_override(scenario, "/noise/sigma_deg",
                                    std::to_string(sigma_deg).c_str());
  }
  return st;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"purifier: deterministic VR interaction-technique simulator"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  std::string run_scenario_path, run_out = "out";
  std::uint64_t run_seed = 0;
  double run_tick_rate = 90.0, run_sigma_deg = 0.0;
  auto* run = app.add_subcommand("run", "Run a scenario and write metrics");
  run->add_option("scenario", run_scenario_path, "Scenario JSON file")
      ->required();
  run->add_option("--out", run_out, "Output directory (default: out)");
  auto* run_seed_opt = run->add_option("--seed", run_seed, "Seed override");
  auto* run_rate_opt =
      run->add_option("--tick-rate", run_tick_rate, "Tick rate override (Hz)");
  auto* run_sigma_opt = run->add_option("--sigma-deg", run_sigma_deg,
                                        "Aim noise sigma override (degrees)");

  // --- bench -------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Technique benchmarks");
  bench->require_subcommand(1);

  std::string sel_technique = "ray";
  double sel_sigma_deg = 2.0, sel_half_angle_deg = 5.0, sel_distance = 100.0;
  double sel_target_ang_deg = 0.0;
  std::uint64_t sel_attempts = 100000, sel_seed = 1;
  bool sel_json = false;
  std::string sel_csv;
  auto* bsel = bench->add_subcommand(
      "select", "Selection success rate under angular aim noise");
  bsel->add_option("--technique", sel_technique, "ray | flashlight")
      ->check(CLI::IsMember({"ray", "flashlight"}));
  bsel->add_option("--sigma-deg", sel_sigma_deg, "Aim noise sigma (degrees)");
  bsel->add_option("--half-angle-deg", sel_half_angle_deg,
                   "Flashlight cone half-angle (degrees)");
  bsel->add_option("--distance", sel_distance, "Target distance (meters)");
  bsel->add_option("--target-angular-radius-deg", sel_target_ang_deg,
                   "Target angular radius (degrees; 0 = point-like)");
  bsel->add_option("--attempts", sel_attempts, "Number of attempts");
  bsel->add_option("--seed", sel_seed, "RNG seed");
  bsel->add_option("--csv", sel_csv, "Write per-attempt rows to this file");
  bsel->add_flag("--json", sel_json, "Print a JSON object");

  std::string reel_technique = "fishing-reel";
  double reel_distance = 10.0, reel_start_t = 5.0, reel_tilt_deg = 0.0;
  double reel_base_speed = 2.0, reel_tick_rate = 90.0;
  double reel_theta_max_deg = 60.0;
  bool reel_json = false;
  auto* brel = bench->add_subcommand("reel", "Ticks to reel a given distance");
  brel->add_option("--technique", reel_technique, "fishing-reel | rawr-xd")
      ->check(CLI::IsMember({"fishing-reel", "rawr-xd"}));
  brel->add_option("--distance", reel_distance,
                   "Travel distance along the ray (meters; negative = inward)");
  brel->add_option("--start-t", reel_start_t, "Starting ray depth (meters)");
  brel->add_option("--tilt-deg", reel_tilt_deg,
                   "Constant non-selecting wrist tilt (degrees)");
  brel->add_option("--base-speed", reel_base_speed, "Base reel speed (m/s)");
  brel->add_option("--tick-rate", reel_tick_rate, "Tick rate (Hz)");
  brel->add_option("--theta-max-deg", reel_theta_max_deg,
                   "Tilt at which the multiplier caps (degrees)");
  brel->add_flag("--json", reel_json, "Print a JSON object");

  // --- coop --------------------------------------------------------------
  std::string coop_role, coop_listen, coop_connect, coop_scenario_path;
  std::string coop_out = "out";
  std::int64_t coop_inject = -1;
  std::uint64_t coop_seed = 0;
  double coop_tick_rate = 90.0, coop_sigma_deg = 0.0;
  auto* coop =
      app.add_subcommand("coop", "Two-process cooperative lockstep run");
  coop->add_option("scenario", coop_scenario_path, "Scenario JSON file")
      ->required();
  coop->add_option("--role", coop_role, "collector | medic")
      ->required()
      ->check(CLI::IsMember({"collector", "medic"}));
  auto* listen_opt =
      coop->add_option("--listen", coop_listen, "Listen on host:port");
  coop->add_option("--connect", coop_connect, "Connect to host:port")
      ->excludes(listen_opt);
  coop->add_option("--out", coop_out, "Output directory (default: out)");
  coop->add_option("--inject-flip-tick", coop_inject,
                   "Flip one state bit after this tick (desync testing)");
  auto* coop_seed_opt = coop->add_option("--seed", coop_seed, "Seed override");
  auto* coop_rate_opt =
      coop->add_option("--tick-rate", coop_tick_rate, "Tick rate override");
  auto* coop_sigma_opt = coop->add_option("--sigma-deg", coop_sigma_deg,
                                          "Aim noise sigma override");

  // --- verify ------------------------------------------------------------
  std::string verify_dir = "scenarios";
  auto* verify = app.add_subcommand(
      "verify", "Re-run bundled golden scenarios twice and diff the outputs");
  verify->add_option("--scenarios", verify_dir,
                     "Scenario directory (default: scenarios)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(PURIFIER_ERR_CONFIG);
  }

  if (run->parsed()) {
    ScenarioHandle sc;
    purifier_status st =
        purifier_scenario_load(run_scenario_path.c_str(), &sc.ptr);
    if (st != PURIFIER_OK) return report(st);
    st = apply_overrides(sc.ptr, run_seed_opt, run_seed, run_rate_opt,
                         run_tick_rate, run_sigma_opt, run_sigma_deg);
    if (st != PURIFIER_OK) return report(st);
    st = purifier_run(sc.ptr, run_out.c_str());
    if (st == PURIFIER_OK) {
      std::printf("wrote metrics.json, attempts.csv, summary.txt to %s\n",
                  run_out.c_str());
    }
    return report(st);
  }

  if (bsel->parsed()) {
    purifier_select_bench_params p{};
    p.distance_m = sel_distance;
    p.target_radius_m =
        sel_target_ang_deg > 0.0
            ? sel_distance * std::sin(deg_to_rad(sel_target_ang_deg))
            : 0.0;
    p.sigma_rad = deg_to_rad(sel_sigma_deg);
    p.cone_half_angle_rad = deg_to_rad(sel_half_angle_deg);
    p.attempts = sel_attempts;
    p.seed = sel_seed;
    p.technique = sel_technique == "ray" ? PURIFIER_SELECT_RAY
                                         : PURIFIER_SELECT_FLASHLIGHT;
    double rate = 0.0;
    purifier_status st = purifier_bench_select(
        &p, &rate, sel_csv.empty() ? nullptr : sel_csv.c_str());
    if (st != PURIFIER_OK) return report(st);
    if (sel_json) {
      std::printf("{\"technique\":\"%s\",\"attempts\":%llu,\"rate\":%.6f}\n",
                  sel_technique.c_str(),
                  static_cast<unsigned long long>(sel_attempts), rate);
    } else {
      std::printf("technique=%s attempts=%llu rate=%.6f\n",
                  sel_technique.c_str(),
                  static_cast<unsigned long long>(sel_attempts), rate);
    }
    return 0;
  }

  if (brel->parsed()) {
    purifier_reel_bench_params p{};
    p.start_t_m = reel_start_t;
    p.goal_t_m = reel_start_t + reel_distance;
    p.tilt_rad = deg_to_rad(reel_tilt_deg);
    p.base_speed_mps = reel_base_speed;
    if (reel_tick_rate <= 0.0) {
      std::fprintf(stderr, "error: --tick-rate must be > 0\n");
      return static_cast<int>(PURIFIER_ERR_CONFIG);
    }
    p.dt_s = 1.0 / reel_tick_rate;
    p.theta_max_rad = deg_to_rad(reel_theta_max_deg);
    p.t_min_m = 0.25;
    p.t_max_m = 200.0;
    p.technique = reel_technique == "fishing-reel" ? PURIFIER_REEL_FISHING
                                                   : PURIFIER_REEL_RAWR_XD;
    std::uint64_t ticks = 0;
    purifier_status st = purifier_bench_reel(&p, &ticks);
    if (st != PURIFIER_OK) return report(st);
    if (reel_json) {
      std::printf("{\"technique\":\"%s\",\"ticks\":%llu}\n",
                  reel_technique.c_str(),
                  static_cast<unsigned long long>(ticks));
    } else {
      std::printf("technique=%s ticks=%llu\n", reel_technique.c_str(),
                  static_cast<unsigned long long>(ticks));
    }
    return 0;
  }

  if (coop->parsed()) {
    if (coop_listen.empty() == coop_connect.empty()) {
      std::fprintf(stderr,
                   "error: exactly one of --listen / --connect is required\n");
      return static_cast<int>(PURIFIER_ERR_CONFIG);
    }
    ScenarioHandle sc;
    purifier_status st =
        purifier_scenario_load(coop_scenario_path.c_str(), &sc.ptr);
    if (st != PURIFIER_OK) return report(st);
    st = apply_overrides(sc.ptr, coop_seed_opt, coop_seed, coop_rate_opt,
                         coop_tick_rate, coop_sigma_opt, coop_sigma_deg);
    if (st != PURIFIER_OK) return report(st);
    bool listen = !coop_listen.empty();
    const std::string& endpoint = listen ? coop_listen : coop_connect;
    st = purifier_coop_run(sc.ptr,
                           coop_role == "collector" ? PURIFIER_ROLE_COLLECTOR
                                                    : PURIFIER_ROLE_MEDIC,
                           endpoint.c_str(), listen ? 1 : 0, coop_out.c_str(),
                           coop_inject);
    if (st == PURIFIER_OK) {
      std::printf("coop run complete; outputs in %s\n", coop_out.c_str());
    }
    return report(st);
  }

  if (verify->parsed()) {
    purifier_status st = purifier_verify(verify_dir.c_str());
    if (st == PURIFIER_OK) {
      std::printf("verify: all scenarios reproduced byte-identically\n");
    }
    return report(st);
  }

  return static_cast<int>(PURIFIER_ERR_CONFIG);
}
