#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "io/svg.hpp"
#include "io/table.hpp"
#include "oracles.hpp"
#include "run/config.hpp"
#include "run/experiments.hpp"

using namespace qpl;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("qpl_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("minimal config fills defaults") {
        const auto cfg = parse_config("{}", ExperimentKind::brownian_triple);
        CHECK(cfg.experiment == ExperimentKind::brownian_triple);
        CHECK(cfg.ensemble.n_trajectories == 100000);
        CHECK(cfg.time.n_slices == 100);
        CHECK(cfg.grid.n_points == 256);
        CHECK(cfg == default_config(ExperimentKind::brownian_triple));
    }
    SUBCASE("negative temperature names the key") {
        try {
            parse_config(R"({"experiment":"brownian-triple","brownian":{"temperature":-1.0}})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("brownian.temperature") != std::string::npos);
        }
    }
    SUBCASE("unknown keys are rejected with their path") {
        try {
            parse_config(R"({"experiment":"airy-figure","airy":{"x_min":-5,"frobnicate":2}})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("airy.frobnicate") != std::string::npos);
        }
    }
    SUBCASE("multiple problems are reported together") {
        try {
            parse_config(
                R"({"experiment":"brownian-triple","brownian":{"temperature":-1},"grid":{"n_points":4},"bogus":1})");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("brownian.temperature") != std::string::npos);
            CHECK(msg.find("grid.n_points") != std::string::npos);
            CHECK(msg.find("bogus") != std::string::npos);
        }
    }
    SUBCASE("round trip: serialize then reparse gives an equal config") {
        for (ExperimentKind k :
             {ExperimentKind::airy_figure, ExperimentKind::brownian_triple,
              ExperimentKind::quantum_reference, ExperimentKind::classical_limit,
              ExperimentKind::quasi_langevin}) {
            auto cfg = default_config(k);
            cfg.seed = 123456;
            cfg.proposal.truncation = 17.5;
            const auto again = parse_config(serialize_config(cfg));
            CHECK(again == cfg);
            CHECK(config_hash(again) == config_hash(cfg));
        }
    }
    SUBCASE("subcommand / config experiment mismatch") {
        CHECK_THROWS_AS(parse_config(R"({"experiment":"airy-figure"})",
                                     ExperimentKind::brownian_triple),
                        ConfigError);
    }
}

TEST_CASE("table round trip") {
    const fs::path dir = temp_dir("table");
    Table t;
    t.kind = "density";
    t.meta = {{"seed", "42"}, {"config_hash", "cafe"}};
    t.columns = {"x", "density"};
    for (int i = 0; i < 57; ++i)
        t.rows.push_back({-3.0 + 0.1 * i, std::exp(-0.5 * std::pow(-3.0 + 0.1 * i, 2))});
    write_table(dir / "t.csv", t);
    const Table back = read_table(dir / "t.csv");
    CHECK(back.kind == t.kind);
    CHECK(back.meta.at("seed") == "42");
    REQUIRE(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t c = 0; c < 2; ++c) CHECK(back.rows[r][c] == t.rows[r][c]);
}

TEST_CASE("airy-figure experiment produces the negative-lobe figure") {
    const fs::path dir = temp_dir("airy_run");
    const auto cfg = default_config(ExperimentKind::airy_figure);
    const auto res = run_experiment(cfg, dir);
    CHECK(res.exit_code == kExitOk);
    CHECK(fs::exists(dir / "airy_function.csv"));
    CHECK(fs::exists(dir / "airy_function.svg"));
    CHECK(fs::exists(dir / "report.txt"));
    const Table t = read_table(dir / "airy_function.csv");
    const auto ai = t.column("ai");
    int neg = 0;
    for (double v : ai) neg += v < 0.0;
    CHECK(neg > 0);
    CHECK(res.report.find("points_below_zero") != std::string::npos);
    const std::string svg = slurp(dir / "airy_function.svg");
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("quasi-langevin on a pure harmonic reports the degenerate branch") {
    const fs::path dir = temp_dir("quasi_harm");
    auto cfg = default_config(ExperimentKind::quasi_langevin);
    cfg.potential = PotentialConfig{};  // harmonic defaults
    cfg.potential.kind = "harmonic";
    cfg.ensemble.n_trajectories = 2000;
    cfg.ensemble.export_trajectories = true;
    const auto res = run_experiment(cfg, dir);
    CHECK(res.exit_code == kExitOk);
    CHECK(res.report.find("degenerate classical branch taken on 100% of slices") !=
          std::string::npos);
    CHECK(fs::exists(dir / "signed_ensemble.csv"));
    const Table t = read_table(dir / "signed_ensemble.csv");
    CHECK(t.columns == std::vector<std::string>{"trajectory", "x_final", "sign", "log_magnitude"});
    CHECK(t.rows.size() == 2000);
}

TEST_CASE("quasi-langevin at the default scale exits with the sign-collapse code") {
    const fs::path dir = temp_dir("quasi_collapse");
    auto cfg = default_config(ExperimentKind::quasi_langevin);
    cfg.ensemble.n_trajectories = 20000;  // enough to certify the collapse
    const auto res = run_experiment(cfg, dir);
    CHECK(res.exit_code == kExitSignCollapse);
    CHECK(res.report.find("SIGN COLLAPSE") != std::string::npos);
    CHECK(res.report.find("truncation L") != std::string::npos);
}

TEST_CASE("brownian-triple smoke run reports three pairwise distances") {
    const fs::path dir = temp_dir("triple_smoke");
    auto cfg = default_config(ExperimentKind::brownian_triple);
    cfg.ensemble.n_trajectories = 20000;
    cfg.time.n_slices = 50;
    const auto res = run_experiment(cfg, dir);
    CHECK(res.exit_code == kExitOk);
    CHECK(res.report.find("L1(langevin,fokker_planck)") != std::string::npos);
    CHECK(res.report.find("L1(langevin,pathintegral)") != std::string::npos);
    CHECK(res.report.find("L1(fokker_planck,pathintegral)") != std::string::npos);
    CHECK(fs::exists(dir / "brownian_triple.svg"));
}

TEST_CASE("reports and tables are byte-reproducible from (config, seed)") {
    const fs::path da = temp_dir("repro_a"), db = temp_dir("repro_b"), dc = temp_dir("repro_c");
    auto cfg = default_config(ExperimentKind::brownian_triple);
    cfg.ensemble.n_trajectories = 5000;
    cfg.time.n_slices = 40;

    // identical (config, seed) twice: every byte identical (no timestamps)
    const auto ra = run_experiment(cfg, da);
    const auto rb = run_experiment(cfg, db);
    CHECK(ra.exit_code == kExitOk);
    CHECK(ra.report == rb.report);
    for (const char* name : {"report.txt", "config.json", "langevin_density.csv",
                             "fokker_planck_density.csv", "pathintegral_density.csv",
                             "brownian_triple.svg"}) {
        CHECK(slurp(da / name) == slurp(db / name));
    }

    // the thread count is an execution detail: numeric content is unchanged
    cfg.threads = 3;
    run_experiment(cfg, dc);
    const Table ta = read_table(da / "langevin_density.csv");
    const Table tc = read_table(dc / "langevin_density.csv");
    REQUIRE(ta.rows.size() == tc.rows.size());
    for (std::size_t r = 0; r < ta.rows.size(); ++r)
        for (std::size_t c = 0; c < ta.rows[r].size(); ++c)
            CHECK(ta.rows[r][c] == tc.rows[r][c]);
}

TEST_CASE("compare_densities") {
    const fs::path dir = temp_dir("compare");
    const int n = 200;
    std::vector<double> xs(n), box_a(n, 0.0), box_b(n, 0.0), g0(n), g_shift(n);
    const double dx = 10.0 / (n - 1);
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] = -5.0 + dx * i;
        const double x = xs[static_cast<std::size_t>(i)];
        if (x >= -2.0 && x < -1.0) box_a[static_cast<std::size_t>(i)] = 1.0;
        if (x >= 1.0 && x < 2.0) box_b[static_cast<std::size_t>(i)] = 1.0;
        g0[static_cast<std::size_t>(i)] = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        g_shift[static_cast<std::size_t>(i)] =
            std::exp(-0.5 * (x - 0.1) * (x - 0.1)) / std::sqrt(2.0 * M_PI);
    }
    write_table(dir / "a.csv", density_table(xs, box_a));
    write_table(dir / "b.csv", density_table(xs, box_b));
    write_table(dir / "g0.csv", density_table(xs, g0));
    write_table(dir / "gs.csv", density_table(xs, g_shift));

    SUBCASE("identical files compare to zero") {
        const auto c = compare_density_files(dir / "a.csv", dir / "a.csv");
        CHECK(c.l1 == 0.0);
        CHECK(c.linf == 0.0);
        CHECK(c.ks == 0.0);
    }
    SUBCASE("disjoint unit boxes have L1 = 2") {
        const auto c = compare_density_files(dir / "a.csv", dir / "b.csv");
        CHECK(c.l1 == doctest::Approx(2.0).epsilon(0.02));
    }
    SUBCASE("shifted gaussian matches the quadrature oracle") {
        const auto c = compare_density_files(dir / "g0.csv", dir / "gs.csv");
        const double expected = oracle::simpson(
            [](double x) {
                return std::abs(std::exp(-0.5 * x * x) -
                                std::exp(-0.5 * (x - 0.1) * (x - 0.1))) /
                       std::sqrt(2.0 * M_PI);
            },
            -5.0, 5.0, 4000);
        CHECK(std::abs(c.l1 - expected) < 1e-3);
    }
    SUBCASE("grid mismatch is a usage error") {
        std::vector<double> xs2 = xs;
        for (auto& v : xs2) v += 0.01;
        write_table(dir / "m.csv", density_table(xs2, box_a));
        CHECK_THROWS_AS(compare_density_files(dir / "a.csv", dir / "m.csv"), UsageError);
    }
    SUBCASE("difference dump is written") {
        const auto c =
            compare_density_files(dir / "g0.csv", dir / "gs.csv", dir / "diff.csv");
        (void)c;
        CHECK(fs::exists(dir / "diff.csv"));
        const Table d = read_table(dir / "diff.csv");
        CHECK(d.columns == std::vector<std::string>{"x", "difference"});
    }
}
