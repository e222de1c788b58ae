#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "qpathlab.h"

namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("qpl_capi_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("scalar airy entry points") {
    CHECK(qpl_airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-12));
    CHECK(qpl_airy_ai_prime(0.0) == doctest::Approx(-0.2588194037928068).epsilon(1e-12));
    CHECK(qpl_airy_ai(-3.0) < 0.0);
}

TEST_CASE("run lifecycle over the C surface") {
    const fs::path dir = temp_dir("airy");
    qpl_run* run = nullptr;
    REQUIRE(qpl_run_create("airy-figure", "{}", &run) == QPL_OK);
    REQUIRE(run != nullptr);
    CHECK(qpl_run_set_seed(run, 77) == QPL_OK);
    CHECK(qpl_run_set_output_dir(run, dir.string().c_str()) == QPL_OK);
    CHECK(qpl_run_execute(run) == QPL_OK);
    const std::string report = qpl_run_report(run);
    CHECK(report.find("airy") != std::string::npos);
    CHECK(fs::exists(dir / "airy_function.csv"));

    char* cfg = qpl_run_config_json(run);
    REQUIRE(cfg != nullptr);
    CHECK(std::string(cfg).find("\"seed\": 77") != std::string::npos);
    qpl_string_free(cfg);
    qpl_run_destroy(run);
}

TEST_CASE("config errors surface through status and last_error") {
    qpl_run* run = nullptr;
    CHECK(qpl_run_create("airy-figure", "{not json", &run) == QPL_ERR_CONFIG);
    CHECK(run == nullptr);
    CHECK(std::strlen(qpl_last_error()) > 0);

    CHECK(qpl_run_create("no-such-experiment", "{}", &run) == QPL_ERR_CONFIG);
    CHECK(qpl_run_create("airy-figure", R"({"bogus_key": 1})", &run) == QPL_ERR_CONFIG);
    CHECK(std::string(qpl_last_error()).find("bogus_key") != std::string::npos);
}

TEST_CASE("sign collapse maps to its dedicated status code") {
    const fs::path dir = temp_dir("collapse");
    qpl_run* run = nullptr;
    REQUIRE(qpl_run_create("quasi-langevin",
                           R"({"ensemble":{"n_trajectories":20000}})", &run) == QPL_OK);
    qpl_run_set_output_dir(run, dir.string().c_str());
    CHECK(qpl_run_execute(run) == QPL_ERR_SIGN_COLLAPSE);
    const std::string report = qpl_run_report(run);
    CHECK(report.find("SIGN COLLAPSE") != std::string::npos);
    qpl_run_destroy(run);
}

TEST_CASE("experiment defaults round-trip through create") {
    char* text = qpl_experiment_defaults("brownian-triple");
    REQUIRE(text != nullptr);
    qpl_run* run = nullptr;
    CHECK(qpl_run_create(nullptr, text, &run) == QPL_OK);
    qpl_run_destroy(run);
    qpl_string_free(text);
    CHECK(qpl_experiment_defaults("nope") == nullptr);
}

TEST_CASE("density comparison over the C surface") {
    const fs::path dir = temp_dir("cmp");
    // write two tiny density tables through the library's own CSV format
    const std::string header = "# qpathlab density v1\nx,density\n";
    std::string a = header, b = header;
    for (int i = 0; i < 32; ++i) {
        const double x = -1.0 + i * (2.0 / 31.0);
        a += std::to_string(x) + "," + std::to_string(std::exp(-x * x)) + "\n";
        b += std::to_string(x) + "," + std::to_string(std::exp(-x * x)) + "\n";
    }
    const fs::path pa = dir / "a.csv", pb = dir / "b.csv";
    {
        FILE* f = std::fopen(pa.string().c_str(), "w");
        std::fputs(a.c_str(), f);
        std::fclose(f);
        f = std::fopen(pb.string().c_str(), "w");
        std::fputs(b.c_str(), f);
        std::fclose(f);
    }
    double l1 = -1, linf = -1, ks = -1;
    CHECK(qpl_compare_density_files(pa.string().c_str(), pb.string().c_str(), nullptr, &l1,
                                    &linf, &ks) == QPL_OK);
    CHECK(l1 == 0.0);
    CHECK(linf == 0.0);
    CHECK(ks == 0.0);
    CHECK(qpl_compare_density_files(pa.string().c_str(), (dir / "missing.csv").string().c_str(),
                                    nullptr, &l1, &linf, &ks) == QPL_ERR_CONFIG);
}
