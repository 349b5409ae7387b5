/* Public C API for the purifier simulation library.
 *
 * All entry points return a purifier_status; on failure a thread-local
 * message is available via purifier_last_error(). Handles are opaque and
 * must be freed with their matching *_free function.
 */

#ifndef PURIFIER_H
#define PURIFIER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum purifier_status {
  PURIFIER_OK = 0,
  PURIFIER_ERR_RUNTIME = 1, /* simulation / lifecycle error */
  PURIFIER_ERR_CONFIG = 2,  /* invalid scenario, flag, or schema input */
  PURIFIER_ERR_SYNC = 3     /* desync or peer fault */
} purifier_status;

typedef struct purifier_scenario purifier_scenario;

const char* purifier_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* purifier_last_error(void);

purifier_status purifier_scenario_load(const char* path,
                                       purifier_scenario** out);
purifier_status purifier_scenario_load_string(const char* json_text,
                                              const char* source_name,
                                              purifier_scenario** out);
void purifier_scenario_free(purifier_scenario* scenario);

/* Override a top-level scenario field after loading. `json_pointer` is a
 * JSON pointer ("/seed", "/tick_rate", "/noise/sigma_deg", ...) and
 * `json_value` the replacement value as JSON text. */
purifier_status purifier_scenario_override(purifier_scenario* scenario,
                                           const char* json_pointer,
                                           const char* json_value);

/* Run the scenario and write metrics.json, attempts.csv, and summary.txt
 * into out_dir (created if missing). */
purifier_status purifier_run(const purifier_scenario* scenario,
                             const char* out_dir);

typedef enum purifier_select_technique {
  PURIFIER_SELECT_RAY = 0,
  PURIFIER_SELECT_FLASHLIGHT = 1
} purifier_select_technique;

typedef struct purifier_select_bench_params {
  double distance_m;
  double target_radius_m; /* <= 0: point-like target */
  double sigma_rad;
  double cone_half_angle_rad;
  uint64_t attempts;
  uint64_t seed;
  purifier_select_technique technique;
} purifier_select_bench_params;

/* Monte-Carlo selection success rate under isotropic angular aim noise.
 * If csv_path is non-NULL, per-attempt rows are written there. */
purifier_status purifier_bench_select(const purifier_select_bench_params* p,
                                      double* rate_out, const char* csv_path);

typedef enum purifier_reel_technique {
  PURIFIER_REEL_FISHING = 0,
  PURIFIER_REEL_RAWR_XD = 1
} purifier_reel_technique;

typedef struct purifier_reel_bench_params {
  double start_t_m;
  double goal_t_m;
  double tilt_rad; /* constant wrist tilt; ignored for fishing reel */
  double base_speed_mps;
  double dt_s;
  double theta_max_rad;
  double t_min_m;
  double t_max_m;
  purifier_reel_technique technique;
} purifier_reel_bench_params;

purifier_status purifier_bench_reel(const purifier_reel_bench_params* p,
                                    uint64_t* ticks_out);

typedef enum purifier_role {
  PURIFIER_ROLE_COLLECTOR = 0,
  PURIFIER_ROLE_MEDIC = 1
} purifier_role;

/* Complete one cooperative lockstep run over TCP loopback. `listen` != 0
 * accepts on the endpoint, otherwise connects to it. inject_flip_tick >= 0
 * flips one state bit after that tick (desync testing); pass -1 normally. */
purifier_status purifier_coop_run(const purifier_scenario* scenario,
                                  purifier_role role, const char* endpoint,
                                  int listen, const char* out_dir,
                                  int64_t inject_flip_tick);

/* Re-run every scenario in the directory twice and compare outputs
 * byte-for-byte. */
purifier_status purifier_verify(const char* scenarios_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PURIFIER_H */
