/* SPDX-License-Identifier: Apache-2.0 */
/* C interface to the tracking simulator.  Every entry point is
 * exception-free: failures come back as a status code and the calling
 * thread can fetch a human-readable message with ot_last_error(). */
#ifndef OFDMTRACK_H
#define OFDMTRACK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ot_status {
  OT_OK = 0,
  OT_EINVAL = 1,      /* malformed argument or configuration value */
  OT_EINFEASIBLE = 2, /* trajectory sampling exhausted its attempts */
  OT_EIO = 3,         /* a file could not be read or written */
  OT_EINTERNAL = 4    /* unexpected failure; see ot_last_error() */
} ot_status;

typedef struct ot_config ot_config;
typedef struct ot_results ot_results;

/* Library version, static storage. */
const char* ot_version(void);

/* Message of the last failing call on this thread; empty string after a
 * success.  Storage is thread-local and owned by the library. */
const char* ot_last_error(void);

/* Fresh configuration holding the default waveform, scenario and run
 * settings; NULL only on allocation failure. */
ot_config* ot_config_create(void);
void ot_config_destroy(ot_config* cfg);

/* Applies every key=value entry of a flat text file on top of the current
 * settings.  '#' starts a comment, blank lines are skipped, unknown keys
 * are rejected. */
ot_status ot_config_load_file(ot_config* cfg, const char* path);

/* Sets one entry; same keys and value syntax as the file format. */
ot_status ot_config_set(ot_config* cfg, const char* key, const char* value);

/* Runs the batch.  On success *out owns the results until
 * ot_results_destroy. */
ot_status ot_run(const ot_config* cfg, ot_results** out);
void ot_results_destroy(ot_results* res);

/* Writes summary.txt, curves.csv and config.txt under out_dir, creating
 * the directory if needed.  Pass NULL to use the configured directory. */
ot_status ot_results_write(const ot_results* res, const char* out_dir);

/* Directory ot_results_write(res, NULL) would write to; owned by res. */
const char* ot_results_out_dir(const ot_results* res);

/* Shape queries; 0 on a NULL handle. */
size_t ot_results_estimator_count(const ot_results* res);
size_t ot_results_step_count(const ot_results* res);

/* Name of the i-th estimator in reporting order; NULL when out of range. */
const char* ot_results_estimator_name(const ot_results* res, size_t i);

/* Whole-run aggregates of the i-th estimator: out[0] range RMSE (m),
 * out[1] velocity RMSE (m/s), out[2] angle RMSE (rad), out[3] mean
 * position error (m), out[4] arithmetic operations per frame. */
ot_status ot_results_summary(const ot_results* res, size_t i, double out[5]);

/* One sample of the per-step error curve; layout matches the first four
 * summary slots.  step counts from zero. */
ot_status ot_results_curve(const ot_results* res, size_t i, size_t step,
                           double out[4]);

/* Theoretical floors: out[0] average angle CRB (rad^2), out[1] range
 * quantization variance (m^2), out[2] velocity quantization variance
 * ((m/s)^2). */
ot_status ot_results_bounds(const ot_results* res, double out[3]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OFDMTRACK_H */
