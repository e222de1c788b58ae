/* qpathlab C API
 *
 * Flat extern-C surface over the qpathlab core: experiments run through an
 * opaque handle created from a JSON config; scalar utilities are direct
 * calls.  Status codes mirror the CLI exit codes.  Strings returned through
 * qpl_run_report stay owned by the handle; strings returned as char* must be
 * released with qpl_string_free.  qpl_last_error describes the most recent
 * failure on the calling thread.
 */
#ifndef QPATHLAB_H
#define QPATHLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qpl_status {
    QPL_OK = 0,
    QPL_ERR_INTERNAL = 1,
    QPL_ERR_CONFIG = 2,
    QPL_ERR_NUMERICAL = 3,
    QPL_ERR_SIGN_COLLAPSE = 4
} qpl_status;

typedef struct qpl_run qpl_run;

const char* qpl_version(void);

/* Message of the most recent error on this thread (never NULL). */
const char* qpl_last_error(void);

/* ---- experiment runs ---------------------------------------------------- */

/* Creates a run from a JSON config.  `experiment` may be NULL when the config
 * carries an "experiment" key; otherwise it selects the kind and the config
 * (even "{}") is validated against that kind's defaults. */
qpl_status qpl_run_create(const char* experiment, const char* config_json, qpl_run** out_run);

qpl_status qpl_run_set_seed(qpl_run* run, uint64_t seed);
qpl_status qpl_run_set_output_dir(qpl_run* run, const char* dir);

/* Executes the experiment and writes report/tables/plots to the output
 * directory.  Returns the experiment's status (sign collapse and numerical
 * failures still produce a report naming the condition). */
qpl_status qpl_run_execute(qpl_run* run);

/* Report text of the last execute (empty string before execute). */
const char* qpl_run_report(const qpl_run* run);

/* Effective config as canonical JSON (caller frees with qpl_string_free). */
char* qpl_run_config_json(const qpl_run* run);

void qpl_run_destroy(qpl_run* run);

/* Full default config for an experiment kind, as JSON.  NULL on unknown kind;
 * caller frees with qpl_string_free. */
char* qpl_experiment_defaults(const char* experiment);

void qpl_string_free(char* s);

/* ---- scalar utilities ---------------------------------------------------- */

/* Standard-normalization Airy function Ai(x). */
double qpl_airy_ai(double x);
double qpl_airy_ai_prime(double x);

/* ---- file utilities ------------------------------------------------------ */

/* Compares two density tables on matching grids.  Any output pointer may be
 * NULL.  diff_dump_path (optional) receives the per-bin difference table. */
qpl_status qpl_compare_density_files(const char* file_a, const char* file_b,
                                     const char* diff_dump_path, double* l1, double* linf,
                                     double* ks);

#ifdef __cplusplus
}
#endif

#endif /* QPATHLAB_H */
