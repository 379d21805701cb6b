#pragma once

// Run configuration: a flat `key = value` file with dotted section names,
// parsed strictly (unknown or repeated keys are errors). Every key has a
// default; see README for the full table.

#include "esl/domain.hpp"
#include "esl/fitting.hpp"
#include "esl/harness.hpp"
#include "esl/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace esl {

struct FamilyConfig {
    /// power | shannon | constant | projection (the adversarial H = x)
    std::string kind = "power";
    double c = 1.0;
    double a = 0.0;
};

struct ProofchainConfig {
    /// homogenize | skew | potential | average | property_suite | all
    std::string step = "all";
    double x = 1.0;
    double y = 2.0;
    std::size_t schedule_steps = 4;
    double schedule_base = 10.0;
    double h = 1.0;
    std::size_t n = 4;
    double window = 1000.0;
    std::size_t m = 1000;
};

struct RunConfig {
    std::uint64_t seed = 0;
    double alpha = 2.0;
    FamilyConfig family;
    PerturbationSpec perturbation;
    SampleSpec sample;
    /// CSV `x,y,z,h`; when set, H is the tabulated function.
    std::string table;
    FitMetric metric = FitMetric::sup_norm;
    Tolerance tol;
    ProofchainConfig proofchain;
};

/// Throws ConfigError with the offending line on any syntax or schema error.
[[nodiscard]] RunConfig parse_config(std::string_view text);

/// Throws ConfigError when the file cannot be read.
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// ESL_SEED, when set, replaces the master seed.
void apply_env_overrides(RunConfig& cfg);

/// Canonical echo of every field, defaults included.
[[nodiscard]] nlohmann::json config_echo(const RunConfig& cfg);

/// The solution family named by the config. Throws ConfigError for
/// `projection` and for parameter errors (e.g. the alpha = 1 power family).
[[nodiscard]] SolutionFamily family_from(const RunConfig& cfg);

/// The candidate H: tabulated, projection, or family plus perturbation.
[[nodiscard]] TernaryFunction function_from(const RunConfig& cfg);

/// Reads a `x,y,z,h` table. Throws ConfigError on malformed content.
[[nodiscard]] std::vector<std::pair<Point3, double>> read_table(const std::filesystem::path& path);

/// Sample set of a run: the interior table rows (in file order) when a table
/// is configured, the configured lattice otherwise. Scale factors always come
/// from the sample spec.
[[nodiscard]] SampleSet sample_from(const RunConfig& cfg);

} // namespace esl
