#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/potential.hpp"

namespace qpl {

enum class ExperimentKind {
    airy_figure,
    brownian_triple,
    quantum_reference,
    classical_limit,
    quasi_langevin,
};

std::string to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_from_string(const std::string& s);

struct ConstantsConfig {
    double hbar = 1.0;
    double mass = 1.0;
    double k_boltzmann = 1.0;

    bool operator==(const ConstantsConfig&) const = default;
};

struct PotentialConfig {
    std::string kind = "harmonic";  // harmonic | quartic | cubic-perturbed-harmonic | polynomial
    double omega = 1.0;
    double lambda = 0.0;
    double a = 0.25;
    std::vector<double> coefficients;  // for kind = polynomial

    bool operator==(const PotentialConfig&) const = default;
};

struct BrownianConfig {
    double gamma = 1.0;
    double temperature = 1.0;

    bool operator==(const BrownianConfig&) const = default;
};

struct GridConfig {
    double x_min = -8.0;
    double x_max = 8.0;
    int n_points = 256;

    bool operator==(const GridConfig&) const = default;
};

struct TimeConfig {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_slices = 100;

    bool operator==(const TimeConfig&) const = default;
};

struct InitialStateConfig {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma = 0.7071067811865476;  // Var(x) = sigma^2 convention

    bool operator==(const InitialStateConfig&) const = default;
};

struct EnsembleConfig {
    std::int64_t n_trajectories = 100000;
    int histogram_bins = 200;
    bool store_paths = false;
    bool export_trajectories = true;
    std::int64_t export_max = 2000000;

    bool operator==(const EnsembleConfig&) const = default;
};

struct ProposalConfig {
    double truncation = 20.0;
    int table_points = 200001;
    double phi_min = 1e-8;
    bool apply_phi_measure = false;
    double mean_sign_floor = 0.01;
    double degenerate_threshold = 1e-10;

    bool operator==(const ProposalConfig&) const = default;
};

struct AiryFigureConfig {
    double x_min = -12.0;
    double x_max = 4.0;
    int n_points = 801;

    bool operator==(const AiryFigureConfig&) const = default;
};

struct QuantumConfig {
    int reference_steps = 1000;  // split-step refinement of the oracle

    bool operator==(const QuantumConfig&) const = default;
};

struct OracleConfig {
    double x_min = -10.0;
    double x_max = 10.0;
    int n_points = 512;
    int steps = 2000;

    bool operator==(const OracleConfig&) const = default;
};

struct FokkerPlanckConfig {
    int substeps_per_slice = 0;  // 0 = auto

    bool operator==(const FokkerPlanckConfig&) const = default;
};

struct PathIntegralConfig {
    std::string drift = "pre-point";  // or "midpoint"

    bool operator==(const PathIntegralConfig&) const = default;
};

struct RunConfig {
    ExperimentKind experiment = ExperimentKind::airy_figure;
    std::uint64_t seed = 20240801;
    int threads = 0;
    std::string out_dir = "qpathlab-out";

    ConstantsConfig constants;
    PotentialConfig potential;
    BrownianConfig brownian;
    GridConfig grid;
    TimeConfig time;
    InitialStateConfig initial_state;
    EnsembleConfig ensemble;
    ProposalConfig proposal;
    AiryFigureConfig airy;
    QuantumConfig quantum;
    OracleConfig oracle;
    FokkerPlanckConfig fokker_planck;
    PathIntegralConfig pathintegral;

    bool operator==(const RunConfig&) const = default;
};

/// Defaults for each experiment kind (the values --list-defaults prints).
RunConfig default_config(ExperimentKind kind);

/// Parses and fully validates a JSON config.  Unknown keys are rejected; all
/// problems are collected and reported together in the ConfigError message.
/// If `forced` is set, the config's experiment must be absent or must match.
RunConfig parse_config(const std::string& text,
                       std::optional<ExperimentKind> forced = std::nullopt);

std::string serialize_config(const RunConfig& cfg);

/// FNV-1a over the canonical serialization; stamped into every report/table.
std::uint64_t config_hash(const RunConfig& cfg);

Potential1D build_potential(const RunConfig& cfg);

}  // namespace qpl
