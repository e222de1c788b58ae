/* Compiled as C11: proves the shared-library header is consumable from C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "qpathlab.h"

int main(void) {
    if (fabs(qpl_airy_ai(0.0) - 0.3550280538878172) > 1e-12) {
        fprintf(stderr, "airy value wrong\n");
        return 1;
    }
    if (strlen(qpl_version()) == 0) return 1;

    char* defaults = qpl_experiment_defaults("airy-figure");
    if (!defaults) return 1;

    qpl_run* run = NULL;
    if (qpl_run_create("airy-figure", defaults, &run) != QPL_OK) {
        fprintf(stderr, "create failed: %s\n", qpl_last_error());
        return 1;
    }
    qpl_string_free(defaults);
    qpl_run_set_output_dir(run, "capi_smoke_out");
    if (qpl_run_execute(run) != QPL_OK) {
        fprintf(stderr, "execute failed: %s\n", qpl_last_error());
        return 1;
    }
    if (strlen(qpl_run_report(run)) == 0) return 1;
    qpl_run_destroy(run);

    /* error path: invalid config must not crash and must set last_error */
    qpl_run* bad = NULL;
    if (qpl_run_create("airy-figure", "{", &bad) != QPL_ERR_CONFIG) return 1;
    if (bad != NULL) return 1;

    printf("capi smoke ok\n");
    return 0;
}
