#pragma once

// Seeded perturbations of exact solutions and the end-to-end check of the
// stability bounds: perturb, measure the defects, fit, compare.

#include "esl/defects.hpp"
#include "esl/domain.hpp"
#include "esl/fitting.hpp"
#include "esl/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace esl {

enum class PerturbationKind { uniform_noise, smooth_bump, oscillatory };

[[nodiscard]] std::string to_string(PerturbationKind k);

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::uniform_noise;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    std::array<double, 3> bump_center{1.0, 1.0, 1.0};
    double bump_width = 1.0;
    double omega = 7.0;

    friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

/// Throws DomainError on a negative/non-finite amplitude or bad kind parameters.
void validate(const PerturbationSpec& spec);

/// Deterministic pure function of (p, spec) with |value| <= amplitude.
/// uniform_noise hashes the log-coordinates quantized to 2^-30 (zero
/// coordinates get a reserved key); smooth_bump is a Gaussian in the
/// coordinates peaking at the center; oscillatory is amplitude*sin(omega*(x+y+z)).
[[nodiscard]] double perturbation_value(const PerturbationSpec& spec, const Point3& p);

/// eval_solution(fam, .) + perturbation.
[[nodiscard]] TernaryFunction perturb(const SolutionFamily& fam, const PerturbationSpec& spec);

/// The adversarial hook H(x, y, z) = x.
[[nodiscard]] TernaryFunction projection_function();

struct EpsilonMeasurement {
    EpsilonTriple eps;
    DefectReport symmetry;
    DefectReport entropy;
    DefectReport homogeneity;

    /// Largest |H| seen across the three reports.
    [[nodiscard]] double magnitude() const;
};

/// (eps1, eps2, eps3) as sup defects over S for symmetry, entropy and
/// degree-alpha homogeneity.
[[nodiscard]] EpsilonMeasurement measure_epsilons(const TernaryFunction& H, double alpha, const SampleSet& S,
                                                  const DefectOptions& opts = {});

/// Throws DomainError unless the family matches the declared degree:
/// Power <-> alpha equal to its exponent and outside {0, 1}, Shannon <-> 1,
/// Constant <-> 0.
void check_regime(const SolutionFamily& fam, double alpha);

enum class Verdict { within_bound, exceeds_bound };

[[nodiscard]] std::string to_string(Verdict v);

inline constexpr std::string_view kSemanticsNote =
    "eps_hat components are maxima over a finite sample set and therefore lower bounds of the true suprema; "
    "within_bound is supporting evidence for the stability bound, exceeds_bound is not a refutation of it.";

struct VerificationInput {
    SolutionFamily family = SolutionFamily::power(1.0, 2.0);
    double alpha = 2.0;
    PerturbationSpec perturbation;
    SampleSpec sample;
    std::uint64_t sample_seed = 0;
    FitMetric metric = FitMetric::sup_norm;
    Tolerance tol;
    Execution exec = Execution::parallel;
};

struct VerificationReport {
    VerificationInput provenance;
    EpsilonMeasurement eps_hat;
    FitResult fit;
    double bound = 0.0;
    /// residual_sup / bound, empty when bound == 0.
    std::optional<double> ratio;
    Verdict verdict = Verdict::within_bound;
    std::string semantics_note{kSemanticsNote};
};

/// Builds S and H, measures eps_hat, fits the matching family and compares
/// its sup residual with theorem_bound(alpha, eps_hat). within_bound iff
/// residual_sup <= bound up to tol at the magnitude of H.
[[nodiscard]] VerificationReport verify_theorem(const VerificationInput& in);

struct InequalityLine {
    std::string name;
    std::string bound_form;
    double lhs = 0.0;
    double rhs = 0.0;
    double magnitude = 0.0;
    std::size_t points = 0;
    /// Sites where the pointwise form of the inequality failed (0 when only
    /// the sup form applies).
    std::size_t pointwise_failures = 0;
    bool pass = false;
};

struct PropertySuiteReport {
    std::vector<InequalityLine> lines;
    EpsilonTriple eps_hat;

    [[nodiscard]] bool all_pass() const;
};

/// The triangle-inequality chain of the proof, each line checked with eps_hat
/// measured over the points that line references. `alpha_zero` adds the
/// constant-regime line |F(x, y) - F(1, 1)| <= 4 eps3 + 12 eps2 + 24 eps1.
[[nodiscard]] PropertySuiteReport run_property_suite(const TernaryFunction& H, const SampleSet& S, bool alpha_zero,
                                                     const Tolerance& tol = {}, Execution exec = Execution::parallel);

struct CandidateResult {
    std::string label;
    bool alpha_zero = false;
    PropertySuiteReport report;
};

/// `per_regime` seeded perturbed candidates for each of Power, Shannon and
/// Constant (amplitude `delta`, perturbation kinds cycled), plus the
/// adversarial projection, each run through run_property_suite.
[[nodiscard]] std::vector<CandidateResult> run_candidate_suite(const SampleSet& S, std::uint64_t seed,
                                                               std::size_t per_regime = 10, double delta = 1e-3,
                                                               const Tolerance& tol = {});

/// splitmix64 finalizer; used for seed derivation and the noise field.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x);

} // namespace esl
