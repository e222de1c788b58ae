#include "qpathlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/errors.hpp"
#include "functionals/airy.hpp"
#include "run/config.hpp"
#include "run/experiments.hpp"

namespace {

thread_local std::string g_last_error = "";

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qpl_status status_from_exception() {
    try {
        throw;
    } catch (const qpl::SignCollapseError& e) {
        g_last_error = e.what();
        return QPL_ERR_SIGN_COLLAPSE;
    } catch (const qpl::NumericalError& e) {
        g_last_error = e.what();
        return QPL_ERR_NUMERICAL;
    } catch (const qpl::ConfigError& e) {
        g_last_error = e.what();
        return QPL_ERR_CONFIG;
    } catch (const qpl::UsageError& e) {
        g_last_error = e.what();
        return QPL_ERR_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QPL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QPL_ERR_INTERNAL;
    }
}

}  // namespace

struct qpl_run {
    qpl::RunConfig config;
    std::string out_dir_override;
    std::string report;
};

extern "C" {

const char* qpl_version(void) { return "qpathlab 1.0.0"; }

const char* qpl_last_error(void) { return g_last_error.c_str(); }

qpl_status qpl_run_create(const char* experiment, const char* config_json, qpl_run** out_run) {
    if (!out_run || !config_json) {
        g_last_error = "qpl_run_create: null argument";
        return QPL_ERR_CONFIG;
    }
    *out_run = nullptr;
    try {
        std::optional<qpl::ExperimentKind> forced;
        if (experiment) {
            forced = qpl::experiment_from_string(experiment);
            if (!forced) {
                g_last_error = std::string("qpl_run_create: unknown experiment '") + experiment + "'";
                return QPL_ERR_CONFIG;
            }
        }
        auto run = new qpl_run{qpl::parse_config(config_json, forced), {}, {}};
        *out_run = run;
        return QPL_OK;
    } catch (...) {
        return status_from_exception();
    }
}

qpl_status qpl_run_set_seed(qpl_run* run, uint64_t seed) {
    if (!run) {
        g_last_error = "qpl_run_set_seed: null handle";
        return QPL_ERR_CONFIG;
    }
    run->config.seed = seed;
    return QPL_OK;
}

qpl_status qpl_run_set_output_dir(qpl_run* run, const char* dir) {
    if (!run || !dir) {
        g_last_error = "qpl_run_set_output_dir: null argument";
        return QPL_ERR_CONFIG;
    }
    run->out_dir_override = dir;
    return QPL_OK;
}

qpl_status qpl_run_execute(qpl_run* run) {
    if (!run) {
        g_last_error = "qpl_run_execute: null handle";
        return QPL_ERR_CONFIG;
    }
    try {
        const qpl::RunResult res = qpl::run_experiment(run->config, run->out_dir_override);
        run->report = res.report;
        if (res.exit_code != qpl::kExitOk) g_last_error = "experiment failed; see report";
        return static_cast<qpl_status>(res.exit_code);
    } catch (...) {
        return status_from_exception();
    }
}

const char* qpl_run_report(const qpl_run* run) { return run ? run->report.c_str() : ""; }

char* qpl_run_config_json(const qpl_run* run) {
    if (!run) return nullptr;
    return dup_string(qpl::serialize_config(run->config));
}

void qpl_run_destroy(qpl_run* run) { delete run; }

char* qpl_experiment_defaults(const char* experiment) {
    if (!experiment) return nullptr;
    const auto kind = qpl::experiment_from_string(experiment);
    if (!kind) {
        g_last_error = std::string("qpl_experiment_defaults: unknown experiment '") + experiment + "'";
        return nullptr;
    }
    return dup_string(qpl::serialize_config(qpl::default_config(*kind)));
}

void qpl_string_free(char* s) { std::free(s); }

double qpl_airy_ai(double x) { return qpl::airy_ai(x); }

double qpl_airy_ai_prime(double x) { return qpl::airy_ai_prime(x); }

qpl_status qpl_compare_density_files(const char* file_a, const char* file_b,
                                     const char* diff_dump_path, double* l1, double* linf,
                                     double* ks) {
    if (!file_a || !file_b) {
        g_last_error = "qpl_compare_density_files: null path";
        return QPL_ERR_CONFIG;
    }
    try {
        std::optional<std::filesystem::path> dump;
        if (diff_dump_path) dump = std::filesystem::path(diff_dump_path);
        const qpl::DensityComparison c = qpl::compare_density_files(file_a, file_b, dump);
        if (l1) *l1 = c.l1;
        if (linf) *linf = c.linf;
        if (ks) *ks = c.ks;
        return QPL_OK;
    } catch (...) {
        return status_from_exception();
    }
}

}  // extern "C"
