#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "run/config.hpp"

namespace qpl {

// CLI / C-API exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitSignCollapse = 4;

struct RunResult {
    int exit_code = kExitOk;
    std::string report;
    std::vector<std::string> files_written;
};

/// Executes one experiment, writing report.txt, config.json, CSV tables and
/// SVG plots under out_dir (falling back to cfg.out_dir when empty).  Module
/// errors are mapped to exit codes; the report always names what happened.
RunResult run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir = {});

struct DensityComparison {
    double l1 = 0.0;
    double linf = 0.0;
    double ks = 0.0;
};

/// Compares two density tables on identical grids; optionally dumps the
/// per-bin difference.  Grid mismatch is a usage error.
DensityComparison compare_density_files(const std::filesystem::path& file_a,
                                        const std::filesystem::path& file_b,
                                        const std::optional<std::filesystem::path>& dump = {});

}  // namespace qpl
