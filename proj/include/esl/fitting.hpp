#pragma once

// Projection of a candidate H onto the one-parameter solution families.
// The sup norm is the primary metric; least squares seeds its bracket and is
// reported as a diagnostic.

#include "esl/domain.hpp"
#include "esl/numeric.hpp"

#include <span>
#include <string>
#include <vector>

namespace esl {

enum class FitMetric { sup_norm, least_squares };

[[nodiscard]] std::string to_string(FitMetric m);

struct FitResult {
    SolutionFamily family = SolutionFamily::constant(0.0);
    FitMetric metric = FitMetric::sup_norm;
    /// max over the fitting triples of |H - fitted|.
    double residual_sup = 0.0;
    /// Euclidean norm of the residual vector.
    double residual_l2 = 0.0;
    /// Least-squares coefficient and its sup residual (equal to the primary
    /// figures for least-squares fits and for Constant, which has none).
    double ls_coefficient = 0.0;
    double ls_residual_sup = 0.0;
    /// Points whose basis value was large enough to inform the fit.
    std::size_t informative_points = 0;
};

struct FitOptions {
    FitMetric metric = FitMetric::sup_norm;
    Execution exec = Execution::parallel;
};

/// Fit c * [(x+y+z)^a - x^a - y^a - z^a]; alpha must not be 0 or 1.
[[nodiscard]] FitResult fit_power(const TernaryFunction& H, double alpha, const SampleSet& S, const FitOptions& opts = {});

/// Fit c * [(x+y+z)ln(x+y+z) - x ln x - y ln y - z ln z].
[[nodiscard]] FitResult fit_shannon(const TernaryFunction& H, const SampleSet& S, const FitOptions& opts = {});

/// Midrange constant: the exact sup-norm minimizer.
[[nodiscard]] FitResult fit_constant(const TernaryFunction& H, const SampleSet& S, const FitOptions& opts = {});

/// Routes on the declared degree: 1 -> Shannon, 0 -> Constant, else Power.
[[nodiscard]] FitResult fit(const TernaryFunction& H, double alpha, const SampleSet& S, const FitOptions& opts = {});

/// Minimizes max_i |values[i] - c * basis[i]| over c. Exposed for testing.
struct OneParameterFit {
    double coefficient = 0.0;
    double objective = 0.0;
    double ls_coefficient = 0.0;
    double ls_objective = 0.0;
    double residual_l2 = 0.0;
    std::size_t informative_points = 0;
};

/// Throws NumericError("degenerate basis ...") when every |basis| is at most
/// 1e-12 * (1 + max |basis|).
[[nodiscard]] OneParameterFit fit_one_parameter(std::span<const double> values, std::span<const double> basis,
                                                FitMetric metric, Execution exec = Execution::parallel);

/// eps1 + eps2 for alpha != 0; 8 eps3 + 25 eps2 + 49 eps1 for alpha == 0.
[[nodiscard]] double theorem_bound(double alpha, const EpsilonTriple& eps);

} // namespace esl
