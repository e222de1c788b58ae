// Command-line runner for the qpathlab shared library.  Talks to the core
// exclusively through the C API in qpathlab.h; exit codes follow the library
// status codes (0 ok, 2 config/usage, 3 numerical, 4 sign collapse).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpathlab.h"

namespace {

int fail(qpl_status st) {
    std::cerr << "error: " << qpl_last_error() << "\n";
    return static_cast<int>(st);
}

struct ExperimentArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool list_defaults = false;
};

int run_experiment_command(const std::string& kind, const ExperimentArgs& args) {
    if (args.list_defaults) {
        char* text = qpl_experiment_defaults(kind.c_str());
        if (!text) return fail(QPL_ERR_CONFIG);
        std::cout << text << "\n";
        qpl_string_free(text);
        return 0;
    }

    std::string config_text = "{}";
    if (!args.config_path.empty()) {
        std::ifstream f(args.config_path);
        if (!f) {
            std::cerr << "error: cannot read config file " << args.config_path << "\n";
            return static_cast<int>(QPL_ERR_CONFIG);
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        config_text = ss.str();
    }

    qpl_run* run = nullptr;
    qpl_status st = qpl_run_create(kind.c_str(), config_text.c_str(), &run);
    if (st != QPL_OK) return fail(st);
    if (args.seed) qpl_run_set_seed(run, *args.seed);
    if (!args.out_dir.empty()) qpl_run_set_output_dir(run, args.out_dir.c_str());

    st = qpl_run_execute(run);
    std::cout << qpl_run_report(run);
    qpl_run_destroy(run);
    if (st != QPL_OK) std::cerr << "error: " << qpl_last_error() << "\n";
    return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpathlab: quantum vs stochastic path-integration laboratory"};
    app.require_subcommand(1);

    const std::vector<std::string> kinds = {"airy-figure", "brownian-triple", "quantum-reference",
                                            "classical-limit", "quasi-langevin"};
    std::vector<ExperimentArgs> args(kinds.size());
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        auto* sub = app.add_subcommand(kinds[i], "run the " + kinds[i] + " experiment");
        sub->add_option("--config", args[i].config_path, "JSON config file (defaults when omitted)");
        sub->add_option("--seed", args[i].seed, "override the RNG master seed");
        sub->add_option("--out", args[i].out_dir, "output directory");
        sub->add_flag("--list-defaults", args[i].list_defaults,
                      "print the full effective default config and exit");
    }

    std::string cmp_a, cmp_b, cmp_dump;
    auto* cmp = app.add_subcommand("compare", "compare two density tables (L1, Linf, KS)");
    cmp->add_option("file_a", cmp_a, "first density CSV")->required();
    cmp->add_option("file_b", cmp_b, "second density CSV")->required();
    cmp->add_option("--dump", cmp_dump, "write the per-bin difference table here");

    auto* ver = app.add_subcommand("version", "print the library version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(QPL_ERR_CONFIG);
    }

    if (ver->parsed()) {
        std::cout << qpl_version() << "\n";
        return 0;
    }
    if (cmp->parsed()) {
        double l1 = 0, linf = 0, ks = 0;
        const qpl_status st = qpl_compare_density_files(
            cmp_a.c_str(), cmp_b.c_str(), cmp_dump.empty() ? nullptr : cmp_dump.c_str(), &l1,
            &linf, &ks);
        if (st != QPL_OK) return fail(st);
        std::printf("L1: %.10g\nLinf: %.10g\nKS: %.10g\n", l1, linf, ks);
        return 0;
    }
    for (std::size_t i = 0; i < kinds.size(); ++i)
        if (app.get_subcommand(kinds[i])->parsed()) return run_experiment_command(kinds[i], args[i]);
    return static_cast<int>(QPL_ERR_CONFIG);
}
