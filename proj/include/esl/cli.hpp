#pragma once

#include "esl/config.hpp"
#include "esl/report.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace esl::cli {

enum ExitCode : int { ok = 0, exceeds_bound = 1, config_error = 2, numeric_error = 3 };

struct Outcome {
    int exit_code = ok;
    json results;
    std::vector<CsvRow> csv;
};

/// Runs one of `defects`, `fit`, `verify`, `proofchain` on a parsed config.
/// Throws ConfigError, DomainError or NumericError; run() maps them to exit
/// codes.
[[nodiscard]] Outcome execute(std::string_view command, const RunConfig& cfg, bool keep_residuals = false);

/// execute() wrapped into the canonical report text, with exit code.
struct Rendered {
    int exit_code = ok;
    std::string report;
    std::string error;
};

[[nodiscard]] Rendered render(std::string_view command, const RunConfig& cfg);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace esl::cli
