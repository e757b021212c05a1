#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "essnorm/measure.hpp"

namespace essnorm::experiments {

enum class Scenario { atomic_limsup, diffuse_witness, pinching_suite, rankone_centre_decay, qn_decay, lattice_oracle };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view name);
const std::vector<Scenario>& all_scenarios();
std::string_view describe(Scenario s);

/// Invalid configuration; `path` names the offending field, e.g. "u.tail.kind".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path))
    {
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// A function given on atoms (by 1-based index n) and on the diffuse interval.
///
///   constant   c everywhere
///   affine     intercept + slope * n on atoms, intercept + slope * x on cells
///   geometric  scale * ratio^n on atoms (atoms only)
///   values     one value per coordinate of a fixed space
struct FunctionSpec {
    enum class Kind { constant, affine, geometric, values };
    Kind kind = Kind::constant;
    double value = 0.0;
    double intercept = 0.0;
    double slope = 0.0;
    double scale = 1.0;
    double ratio = 0.0;
    std::vector<double> values;

    bool operator==(const FunctionSpec&) const = default;
};

struct SpaceSpec {
    std::vector<double> atom_masses;
    std::optional<Interval> interval;
    int level = 0;
    bool operator==(const SpaceSpec&) const = default;
};

struct USpec {
    std::optional<std::vector<double>> atom_values; ///< defaults to the tail rule u_n for n = 1..N
    TailDescriptor tail;
    std::optional<FunctionSpec> diffuse;
    bool operator==(const USpec&) const = default;
};

struct PerturbationSpec {
    enum class Kind { none, random_dense, rank_one, truncation };
    Kind kind = Kind::none;
    int rank = 1;
    std::uint64_t seed = 0;
    std::size_t truncation_n = 0;
    std::optional<FunctionSpec> eta;
    std::optional<FunctionSpec> g;
    bool lump_tail = false;
    bool operator==(const PerturbationSpec&) const = default;
};

struct Sweep {
    long from = 0;
    long to = 0;
    bool operator==(const Sweep&) const = default;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::atomic_limsup;
    SpaceSpec space;
    USpec u;
    PerturbationSpec perturbation;
    double p = 1.0;
    Sweep sweep;
    int trials = 0;
    std::uint64_t seed = 0;
    std::size_t dimension = 0;
    double epsilon = 0.1;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string emit_config(const ExperimentConfig& config);

/// Scenario-specific checks; throws ConfigError. Performs no computation.
void validate(const ExperimentConfig& config);

struct Row {
    std::string quantity;
    double parameter = 0.0;
    double computed = 0.0;
    std::optional<double> certified_bound;
    std::optional<double> formula;
    std::optional<double> residual; ///< |computed - formula| whenever formula is present

    bool operator==(const Row&) const = default;
};

struct Assertion {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ScenarioResult {
    Scenario scenario = Scenario::atomic_limsup;
    std::vector<Row> rows;
    std::vector<Assertion> assertions;

    bool all_passed() const;
};

ScenarioResult run_scenario(const ExperimentConfig& config);

/// CSV with a header row, 12 significant digits and RFC-4180 quoting.
std::string to_csv(const ScenarioResult& result);
std::string to_report(const ScenarioResult& result);

/// Writes <dir>/<scenario>.csv, <dir>/<scenario>.report.txt and
/// <dir>/<scenario>.config.json. Returns the CSV path.
std::filesystem::path emit(const ScenarioResult& result, const ExperimentConfig& config,
                           const std::filesystem::path& dir);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace essnorm::experiments
