#pragma once

// JSON serialization of every result type and the canonical report writer:
// sorted keys, doubles with 17 significant digits, newline-terminated.

#include "esl/defects.hpp"
#include "esl/domain.hpp"
#include "esl/fitting.hpp"
#include "esl/harness.hpp"
#include "esl/proofchain.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <span>
#include <string>

namespace esl {

using json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "0.1.0";

void to_json(json& j, const Point3& p);
void to_json(json& j, const SampleSpec& s);
void to_json(json& j, const SampleSet& s);
void to_json(json& j, const SolutionFamily& f);
void to_json(json& j, const EpsilonTriple& e);
void to_json(json& j, const DefectSite& s);
void to_json(json& j, const DefectReport& r);
void to_json(json& j, const FitResult& r);
void to_json(json& j, const PerturbationSpec& p);
void to_json(json& j, const EpsilonMeasurement& m);
void to_json(json& j, const VerificationReport& r);
void to_json(json& j, const InequalityLine& l);
void to_json(json& j, const PropertySuiteReport& r);
void to_json(json& j, const HomogenizationResult& r);
void to_json(json& j, const DecompositionResult& r);
void to_json(json& j, const SkewBoundReport& r);

/// Canonical text of a JSON value (see file comment). Non-finite doubles are
/// written as null.
[[nodiscard]] std::string canonical_json(const json& j);

/// Top-level report object: tool_version, command, config_echo, results,
/// semantics_note, timing_ms (null unless a timing is supplied).
[[nodiscard]] json make_report(std::string_view command, json config_echo, json results,
                               std::optional<double> timing_ms = std::nullopt);

/// Per-point residual rows `x,y,z,kind,residual`. Homogeneity rows carry the
/// base pair in x, y and the scale factor t in the z column.
struct CsvRow {
    std::array<double, 3> point{};
    std::string kind;
    double residual = 0.0;
};

[[nodiscard]] std::vector<CsvRow> csv_rows(const DefectReport& r);
void write_residual_csv(std::ostream& os, std::span<const CsvRow> rows);

} // namespace esl
