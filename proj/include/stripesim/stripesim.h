/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * stripesim: simulator for daisy-chained sub-THz radio stripes
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef STRIPESIM_STRIPESIM_H
#define STRIPESIM_STRIPESIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(STRIPESIM_BUILDING_LIBRARY)
#    define STRIPESIM_API __declspec(dllexport)
#  else
#    define STRIPESIM_API __declspec(dllimport)
#  endif
#else
#  define STRIPESIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handles. Every *_free accepts NULL. */
typedef struct stripesim_scenario stripesim_scenario;
typedef struct stripesim_dataset stripesim_dataset;
typedef struct stripesim_model stripesim_model;

typedef enum stripesim_status {
    STRIPESIM_OK = 0,
    STRIPESIM_E_INVALID_ARGUMENT = 1,
    STRIPESIM_E_PARSE = 2,
    STRIPESIM_E_VALIDATION = 3,
    STRIPESIM_E_IO = 4,
    STRIPESIM_E_STATE = 5,
    STRIPESIM_E_INTERNAL = 6
} stripesim_status;

STRIPESIM_API const char *stripesim_version(void);
STRIPESIM_API const char *stripesim_status_name(stripesim_status status);
/* Message of the last failed call on this thread; "" after a success. */
STRIPESIM_API const char *stripesim_last_error(void);

/* ---- scenario ---- */
STRIPESIM_API stripesim_status stripesim_scenario_load(const char *path, stripesim_scenario **out);
STRIPESIM_API stripesim_status stripesim_scenario_parse(const char *text, stripesim_scenario **out);
STRIPESIM_API stripesim_status stripesim_scenario_default(stripesim_scenario **out);
STRIPESIM_API void stripesim_scenario_free(stripesim_scenario *sc);
STRIPESIM_API stripesim_status stripesim_scenario_set_seed(stripesim_scenario *sc, uint64_t seed);
STRIPESIM_API stripesim_status stripesim_scenario_seed(const stripesim_scenario *sc, uint64_t *seed);
STRIPESIM_API stripesim_status stripesim_scenario_ru_count(const stripesim_scenario *sc, int *count);
/* Writes the resolved scenario as text, NUL-terminated. *needed receives the
 * buffer size required including the terminator; buf may be NULL to query. */
STRIPESIM_API stripesim_status stripesim_scenario_serialize(const stripesim_scenario *sc, char *buf, size_t cap,
                                                            size_t *needed);

/* ---- fiber chain ---- */
typedef struct stripesim_tap {
    double position_m;
    double p_sig_dbm;
    double p_noise_dbm;
    double p_imd_dbm;
    double snr_db;
    double sdr_db;
    double sndr_db;
} stripesim_tap;

/* launch_dbm NULL keeps the scenario's launch power. *n_taps receives the
 * tap count; taps may be NULL to query it. A non-NULL taps with cap too small
 * gives STRIPESIM_E_INVALID_ARGUMENT.
 * crossover_m (nullable) is NaN when the chain never turns distortion-limited. */
STRIPESIM_API stripesim_status stripesim_fiber_run(const stripesim_scenario *sc, const double *launch_dbm,
                                                   stripesim_tap *taps, size_t cap, size_t *n_taps,
                                                   double *crossover_m);
STRIPESIM_API stripesim_status stripesim_fiber_write_csv(const stripesim_scenario *sc, const double *launch_dbm,
                                                         const char *path);
STRIPESIM_API stripesim_status stripesim_fiber_sweep_launch(const stripesim_scenario *sc, const double *grid_dbm,
                                                            size_t n, double *best_dbm);

/* ---- over the air ---- */
STRIPESIM_API stripesim_status stripesim_air_write_csv(const stripesim_scenario *sc, double grid_step_m,
                                                       const char *path);
/* booster_gain_db NULL: boosters compensate the hop loss exactly; 0: passive. */
STRIPESIM_API stripesim_status stripesim_endtoend_write_csv(const stripesim_scenario *sc, double atten_db_per_m,
                                                            double coupler_loss_db, const double *booster_gain_db,
                                                            double grid_step_m, const char *path);

/* ---- dual-band selection ---- */
STRIPESIM_API stripesim_status stripesim_dataset_build(const stripesim_scenario *sc, double grid_step_m,
                                                       stripesim_dataset **out);
STRIPESIM_API stripesim_status stripesim_dataset_load(const stripesim_scenario *sc, const char *path,
                                                      stripesim_dataset **out);
STRIPESIM_API stripesim_status stripesim_dataset_write_csv(const stripesim_dataset *ds, const char *path);
STRIPESIM_API stripesim_status stripesim_dataset_size(const stripesim_dataset *ds, size_t *n);
STRIPESIM_API void stripesim_dataset_free(stripesim_dataset *ds);

STRIPESIM_API stripesim_status stripesim_model_train_nn(const stripesim_scenario *sc, const stripesim_dataset *ds,
                                                        stripesim_model **out);
STRIPESIM_API void stripesim_model_free(stripesim_model *m);

typedef struct stripesim_metrics_row {
    int k;
    double topk_rate;
    double mean_gain_loss_db;
    double p95_gain_loss_db;
    double mean_slots;
} stripesim_metrics_row;

/* Test points sit at the midpoints of a grid_step_m floor grid. rows must
 * hold n_k entries. */
STRIPESIM_API stripesim_status stripesim_dualband_evaluate(const stripesim_model *m, const stripesim_scenario *sc,
                                                           double grid_step_m, const int *k, size_t n_k,
                                                           stripesim_metrics_row *rows);
STRIPESIM_API stripesim_status stripesim_dualband_eval_write_csv(const stripesim_model *m,
                                                                 const stripesim_scenario *sc, double grid_step_m,
                                                                 const int *k, size_t n_k, const char *path);

/* ---- energy ---- */
typedef struct stripesim_energy {
    int n_active_rus;
    double total_w;
    double energy_per_bit_j;
    double pj_per_bit;
} stripesim_energy;

STRIPESIM_API stripesim_status stripesim_energy_serving(const stripesim_scenario *sc, int serving_ru,
                                                        stripesim_energy *out);
STRIPESIM_API stripesim_status stripesim_energy_write_csv(const stripesim_scenario *sc, int serving_ru,
                                                          const char *path);

/* ---- figure data ---- */
typedef struct stripesim_fig3_summary {
    double crossover_m; /* NaN if none */
    double end_sndr_db;
    double distributed_p2p_db;
    double central_steered_p2p_db;
    double central_unsteered_p2p_db;
    double single_patch_edge_db;
    double central_steered_edge_db;
} stripesim_fig3_summary;

/* Writes fig3_bottom.csv, fig3_top.csv and fig3_summary.csv into out_dir
 * (created if missing). summary is nullable. */
STRIPESIM_API stripesim_status stripesim_reproduce_fig3(const stripesim_scenario *sc, double grid_step_m,
                                                        const char *out_dir, stripesim_fig3_summary *summary);
/* Writes fig4.csv and fig4_per_ru.csv into out_dir. */
STRIPESIM_API stripesim_status stripesim_reproduce_fig4(const stripesim_scenario *sc, double grid_step_m,
                                                        const char *out_dir);

#ifdef __cplusplus
}
#endif

#endif /* STRIPESIM_STRIPESIM_H */
