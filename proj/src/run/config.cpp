#include "run/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "core/errors.hpp"

namespace qpl {

using nlohmann::json;

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::airy_figure: return "airy-figure";
        case ExperimentKind::brownian_triple: return "brownian-triple";
        case ExperimentKind::quantum_reference: return "quantum-reference";
        case ExperimentKind::classical_limit: return "classical-limit";
        case ExperimentKind::quasi_langevin: return "quasi-langevin";
    }
    return "unknown";
}

std::optional<ExperimentKind> experiment_from_string(const std::string& s) {
    for (ExperimentKind k :
         {ExperimentKind::airy_figure, ExperimentKind::brownian_triple,
          ExperimentKind::quantum_reference, ExperimentKind::classical_limit,
          ExperimentKind::quasi_langevin})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

RunConfig default_config(ExperimentKind kind) {
    RunConfig c;
    c.experiment = kind;
    switch (kind) {
        case ExperimentKind::airy_figure:
            break;
        case ExperimentKind::brownian_triple:
            c.grid = {-4.5, 4.5, 256};
            c.time = {0.0, 1.0, 100};
            c.initial_state = {1.5, 0.0, 0.25};
            c.ensemble.n_trajectories = 100000;
            break;
        case ExperimentKind::quantum_reference:
            c.grid = {-5.2, 5.2, 64};
            c.time = {0.0, 1.5707963267948966, 6};  // quarter period at omega = 1
            c.initial_state = {0.3, 0.0, 0.7071067811865476};
            c.quantum.reference_steps = 4000;
            break;
        case ExperimentKind::classical_limit:
            c.grid = {-8.0, 8.0, 256};
            c.time = {0.0, 6.283185307179586, 1200};  // one period
            c.initial_state = {1.0, 0.0, 0.7071067811865476};
            c.ensemble.n_trajectories = 200000;
            c.quantum.reference_steps = 2400;
            break;
        case ExperimentKind::quasi_langevin:
            c.potential.kind = "polynomial";
            c.potential.coefficients = {0.0, 0.0, 0.5, 0.0, 0.0125};  // 1/2 x^2 + 0.05/4 x^4
            c.grid = {-8.0, 8.0, 256};
            c.time = {0.0, 0.5, 25};
            c.initial_state = {1.0, 0.0, 0.7071067811865476};
            c.ensemble.n_trajectories = 1000000;
            c.ensemble.export_trajectories = false;
            c.quantum.reference_steps = 2000;
            break;
    }
    return c;
}

namespace {

// Strict reader: typed getters record errors with dotted paths; unknown keys
// in every visited object are rejected.
class Checker {
public:
    explicit Checker(std::vector<std::string>& errors) : errors_(&errors) {}

    void unknown_keys(const json& obj, const std::string& path,
                      const std::set<std::string>& known) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!known.count(it.key()))
                error(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
    }

    void error(const std::string& path, const std::string& msg) {
        errors_->push_back(path + ": " + msg);
    }

    template <typename T>
    void get(const json& obj, const std::string& path, const char* key, T& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        try {
            if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) throw std::runtime_error("expected boolean");
                out = v.get<bool>();
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer()) throw std::runtime_error("expected integer");
                out = v.get<T>();
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!v.is_number()) throw std::runtime_error("expected number");
                out = v.get<double>();
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw std::runtime_error("expected string");
                out = v.get<std::string>();
            } else {
                out = v.get<T>();
            }
        } catch (const std::exception& e) {
            error(join(path, key), e.what());
        }
    }

    static std::string join(const std::string& path, const char* key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    std::vector<std::string>* errors_;
};

void validate_values(const RunConfig& c, std::vector<std::string>& errors) {
    auto require = [&](bool ok, const std::string& path, const std::string& msg) {
        if (!ok) errors.push_back(path + ": " + msg);
    };

    require(c.constants.hbar > 0.0, "constants.hbar", "must be positive");
    require(c.constants.mass > 0.0, "constants.mass", "must be positive");
    require(c.constants.k_boltzmann > 0.0, "constants.k_boltzmann", "must be positive");
    require(c.brownian.gamma > 0.0, "brownian.gamma", "must be positive");
    require(c.brownian.temperature >= 0.0, "brownian.temperature", "must be non-negative");
    require(c.grid.x_max > c.grid.x_min, "grid.x_max", "must exceed grid.x_min");
    require(c.grid.n_points >= 8, "grid.n_points", "must be >= 8");
    require(c.time.t_end > c.time.t_start, "time.t_end", "must exceed time.t_start");
    require(c.time.n_slices >= 1, "time.n_slices", "must be >= 1");
    require(c.initial_state.sigma > 0.0, "initial_state.sigma", "must be positive");
    require(c.ensemble.n_trajectories >= 0, "ensemble.n_trajectories", "must be >= 0");
    require(c.ensemble.histogram_bins >= 2, "ensemble.histogram_bins", "must be >= 2");
    require(c.proposal.truncation > 0.0, "proposal.truncation", "must be positive");
    require(c.proposal.table_points >= 1000, "proposal.table_points", "must be >= 1000");
    require(c.proposal.phi_min > 0.0, "proposal.phi_min", "must be positive");
    require(c.proposal.degenerate_threshold >= 0.0, "proposal.degenerate_threshold",
            "must be non-negative");
    require(c.airy.x_max > c.airy.x_min, "airy.x_max", "must exceed airy.x_min");
    require(c.airy.n_points >= 8, "airy.n_points", "must be >= 8");
    require(c.quantum.reference_steps >= 1, "quantum.reference_steps", "must be >= 1");
    require(c.oracle.x_max > c.oracle.x_min, "oracle.x_max", "must exceed oracle.x_min");
    require(c.oracle.n_points >= 8, "oracle.n_points", "must be >= 8");
    require(c.oracle.steps >= 1, "oracle.steps", "must be >= 1");
    require(c.fokker_planck.substeps_per_slice >= 0, "fokker_planck.substeps_per_slice",
            "must be >= 0");
    require(c.threads >= 0, "threads", "must be >= 0");

    const std::string pk = c.potential.kind;
    if (pk != "harmonic" && pk != "quartic" && pk != "cubic-perturbed-harmonic" &&
        pk != "polynomial")
        errors.push_back("potential.kind: unknown kind '" + pk + "'");
    if (pk == "polynomial" && c.potential.coefficients.size() > 5)
        errors.push_back("potential.coefficients: polynomial degree must be <= 4");
    for (double v : c.potential.coefficients)
        if (!std::isfinite(v)) {
            errors.push_back("potential.coefficients: non-finite value");
            break;
        }
    if (c.pathintegral.drift != "pre-point" && c.pathintegral.drift != "midpoint")
        errors.push_back("pathintegral.drift: must be 'pre-point' or 'midpoint'");

    // experiments that evolve wave functions need a power-of-two grid
    if (c.experiment == ExperimentKind::quantum_reference ||
        c.experiment == ExperimentKind::classical_limit ||
        c.experiment == ExperimentKind::quasi_langevin) {
        const int n = c.grid.n_points;
        if ((n & (n - 1)) != 0)
            errors.push_back("grid.n_points: must be a power of two for quantum evolution");
        const int on = c.oracle.n_points;
        if ((on & (on - 1)) != 0)
            errors.push_back("oracle.n_points: must be a power of two");
    }
    if (c.experiment == ExperimentKind::brownian_triple && !(c.brownian.temperature > 0.0))
        errors.push_back("brownian.temperature: must be positive for brownian-triple");
}

}  // namespace

RunConfig parse_config(const std::string& text, std::optional<ExperimentKind> forced) {
    std::vector<std::string> errors;
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be a JSON object");

    // experiment kind decides the defaults everything else fills into
    ExperimentKind kind;
    if (root.contains("experiment")) {
        if (!root.at("experiment").is_string())
            throw ConfigError("experiment: expected string");
        const std::string s = root.at("experiment").get<std::string>();
        const auto k = experiment_from_string(s);
        if (!k) throw ConfigError("experiment: unknown experiment '" + s + "'");
        if (forced && *k != *forced)
            throw ConfigError("experiment: config says '" + s + "' but the subcommand is '" +
                              to_string(*forced) + "'");
        kind = *k;
    } else if (forced) {
        kind = *forced;
    } else {
        throw ConfigError("experiment: missing (and no subcommand default)");
    }

    RunConfig c = default_config(kind);
    Checker ck(errors);

    ck.unknown_keys(root, "",
                    {"experiment", "seed", "threads", "out_dir", "constants", "potential",
                     "brownian", "grid", "time", "initial_state", "ensemble", "proposal", "airy",
                     "quantum", "oracle", "fokker_planck", "pathintegral"});

    ck.get(root, "", "seed", c.seed);
    ck.get(root, "", "threads", c.threads);
    ck.get(root, "", "out_dir", c.out_dir);

    auto section = [&](const char* name, auto&& fill) {
        if (!root.contains(name)) return;
        const json& obj = root.at(name);
        if (!obj.is_object()) {
            ck.error(name, "expected object");
            return;
        }
        fill(obj);
    };

    section("constants", [&](const json& o) {
        ck.unknown_keys(o, "constants", {"hbar", "mass", "k_boltzmann"});
        ck.get(o, "constants", "hbar", c.constants.hbar);
        ck.get(o, "constants", "mass", c.constants.mass);
        ck.get(o, "constants", "k_boltzmann", c.constants.k_boltzmann);
    });
    section("potential", [&](const json& o) {
        ck.unknown_keys(o, "potential", {"kind", "omega", "lambda", "a", "coefficients"});
        ck.get(o, "potential", "kind", c.potential.kind);
        ck.get(o, "potential", "omega", c.potential.omega);
        ck.get(o, "potential", "lambda", c.potential.lambda);
        ck.get(o, "potential", "a", c.potential.a);
        if (o.contains("coefficients")) {
            try {
                c.potential.coefficients = o.at("coefficients").get<std::vector<double>>();
            } catch (const std::exception&) {
                ck.error("potential.coefficients", "expected array of numbers");
            }
        }
    });
    section("brownian", [&](const json& o) {
        ck.unknown_keys(o, "brownian", {"gamma", "temperature"});
        ck.get(o, "brownian", "gamma", c.brownian.gamma);
        ck.get(o, "brownian", "temperature", c.brownian.temperature);
    });
    section("grid", [&](const json& o) {
        ck.unknown_keys(o, "grid", {"x_min", "x_max", "n_points"});
        ck.get(o, "grid", "x_min", c.grid.x_min);
        ck.get(o, "grid", "x_max", c.grid.x_max);
        ck.get(o, "grid", "n_points", c.grid.n_points);
    });
    section("time", [&](const json& o) {
        ck.unknown_keys(o, "time", {"t_start", "t_end", "n_slices"});
        ck.get(o, "time", "t_start", c.time.t_start);
        ck.get(o, "time", "t_end", c.time.t_end);
        ck.get(o, "time", "n_slices", c.time.n_slices);
    });
    section("initial_state", [&](const json& o) {
        ck.unknown_keys(o, "initial_state", {"x0", "p0", "sigma"});
        ck.get(o, "initial_state", "x0", c.initial_state.x0);
        ck.get(o, "initial_state", "p0", c.initial_state.p0);
        ck.get(o, "initial_state", "sigma", c.initial_state.sigma);
    });
    section("ensemble", [&](const json& o) {
        ck.unknown_keys(o, "ensemble",
                        {"n_trajectories", "histogram_bins", "store_paths",
                         "export_trajectories", "export_max"});
        ck.get(o, "ensemble", "n_trajectories", c.ensemble.n_trajectories);
        ck.get(o, "ensemble", "histogram_bins", c.ensemble.histogram_bins);
        ck.get(o, "ensemble", "store_paths", c.ensemble.store_paths);
        ck.get(o, "ensemble", "export_trajectories", c.ensemble.export_trajectories);
        ck.get(o, "ensemble", "export_max", c.ensemble.export_max);
    });
    section("proposal", [&](const json& o) {
        ck.unknown_keys(o, "proposal",
                        {"truncation", "table_points", "phi_min", "apply_phi_measure",
                         "mean_sign_floor", "degenerate_threshold"});
        ck.get(o, "proposal", "truncation", c.proposal.truncation);
        ck.get(o, "proposal", "table_points", c.proposal.table_points);
        ck.get(o, "proposal", "phi_min", c.proposal.phi_min);
        ck.get(o, "proposal", "apply_phi_measure", c.proposal.apply_phi_measure);
        ck.get(o, "proposal", "mean_sign_floor", c.proposal.mean_sign_floor);
        ck.get(o, "proposal", "degenerate_threshold", c.proposal.degenerate_threshold);
    });
    section("airy", [&](const json& o) {
        ck.unknown_keys(o, "airy", {"x_min", "x_max", "n_points"});
        ck.get(o, "airy", "x_min", c.airy.x_min);
        ck.get(o, "airy", "x_max", c.airy.x_max);
        ck.get(o, "airy", "n_points", c.airy.n_points);
    });
    section("quantum", [&](const json& o) {
        ck.unknown_keys(o, "quantum", {"reference_steps"});
        ck.get(o, "quantum", "reference_steps", c.quantum.reference_steps);
    });
    section("oracle", [&](const json& o) {
        ck.unknown_keys(o, "oracle", {"x_min", "x_max", "n_points", "steps"});
        ck.get(o, "oracle", "x_min", c.oracle.x_min);
        ck.get(o, "oracle", "x_max", c.oracle.x_max);
        ck.get(o, "oracle", "n_points", c.oracle.n_points);
        ck.get(o, "oracle", "steps", c.oracle.steps);
    });
    section("fokker_planck", [&](const json& o) {
        ck.unknown_keys(o, "fokker_planck", {"substeps_per_slice"});
        ck.get(o, "fokker_planck", "substeps_per_slice", c.fokker_planck.substeps_per_slice);
    });
    section("pathintegral", [&](const json& o) {
        ck.unknown_keys(o, "pathintegral", {"drift"});
        ck.get(o, "pathintegral", "drift", c.pathintegral.drift);
    });

    validate_values(c, errors);

    if (!errors.empty()) {
        std::string msg = "config validation failed:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return c;
}

std::string serialize_config(const RunConfig& c) {
    json root;
    root["experiment"] = to_string(c.experiment);
    root["seed"] = c.seed;
    root["threads"] = c.threads;
    root["out_dir"] = c.out_dir;
    root["constants"] = {{"hbar", c.constants.hbar},
                         {"mass", c.constants.mass},
                         {"k_boltzmann", c.constants.k_boltzmann}};
    root["potential"] = {{"kind", c.potential.kind},
                         {"omega", c.potential.omega},
                         {"lambda", c.potential.lambda},
                         {"a", c.potential.a},
                         {"coefficients", c.potential.coefficients}};
    root["brownian"] = {{"gamma", c.brownian.gamma}, {"temperature", c.brownian.temperature}};
    root["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n_points", c.grid.n_points}};
    root["time"] = {{"t_start", c.time.t_start},
                    {"t_end", c.time.t_end},
                    {"n_slices", c.time.n_slices}};
    root["initial_state"] = {{"x0", c.initial_state.x0},
                             {"p0", c.initial_state.p0},
                             {"sigma", c.initial_state.sigma}};
    root["ensemble"] = {{"n_trajectories", c.ensemble.n_trajectories},
                        {"histogram_bins", c.ensemble.histogram_bins},
                        {"store_paths", c.ensemble.store_paths},
                        {"export_trajectories", c.ensemble.export_trajectories},
                        {"export_max", c.ensemble.export_max}};
    root["proposal"] = {{"truncation", c.proposal.truncation},
                        {"table_points", c.proposal.table_points},
                        {"phi_min", c.proposal.phi_min},
                        {"apply_phi_measure", c.proposal.apply_phi_measure},
                        {"mean_sign_floor", c.proposal.mean_sign_floor},
                        {"degenerate_threshold", c.proposal.degenerate_threshold}};
    root["airy"] = {{"x_min", c.airy.x_min}, {"x_max", c.airy.x_max}, {"n_points", c.airy.n_points}};
    root["quantum"] = {{"reference_steps", c.quantum.reference_steps}};
    root["oracle"] = {{"x_min", c.oracle.x_min},
                      {"x_max", c.oracle.x_max},
                      {"n_points", c.oracle.n_points},
                      {"steps", c.oracle.steps}};
    root["fokker_planck"] = {{"substeps_per_slice", c.fokker_planck.substeps_per_slice}};
    root["pathintegral"] = {{"drift", c.pathintegral.drift}};
    return root.dump(2);
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string s = serialize_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Potential1D build_potential(const RunConfig& c) {
    const double m = c.constants.mass;
    const std::string& k = c.potential.kind;
    if (k == "harmonic") return Potential1D::harmonic(m, c.potential.omega);
    if (k == "quartic") return Potential1D::quartic(m, c.potential.a);
    if (k == "cubic-perturbed-harmonic")
        return Potential1D::cubic_perturbed_harmonic(m, c.potential.omega, c.potential.lambda);
    return Potential1D::polynomial(m, c.potential.coefficients);
}

}  // namespace qpl
