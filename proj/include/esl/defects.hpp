#pragma once

// Pointwise defects of the symmetry, entropy-equation and homogeneity
// inequalities and of the cocycle equation, and their finite sup estimates.

#include "esl/domain.hpp"
#include "esl/numeric.hpp"

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace esl {

enum class DefectKind { symmetry, entropy, homogeneity, cocycle };

[[nodiscard]] std::string to_string(DefectKind k);

/// Where a defect was evaluated. Symmetry and entropy: the triple. Cocycle:
/// (x, y, z). Homogeneity: (x, y, 0) with `scale` holding t.
struct DefectSite {
    std::array<double, 3> point{};
    double scale = 1.0;

    friend auto operator<=>(const DefectSite&, const DefectSite&) = default;
    friend bool operator==(const DefectSite&, const DefectSite&) = default;
};

struct Residual {
    DefectSite site;
    double value = 0.0;
};

/// Finite sup estimate of one defect. sup_estimate is a lower bound of the
/// true sup over the continuum.
struct DefectReport {
    DefectKind kind = DefectKind::symmetry;
    double sup_estimate = 0.0;
    DefectSite argmax;
    /// Largest |H| (or |F|) among all evaluations made for this report.
    double max_abs_value = 0.0;
    std::size_t sites = 0;
    /// Filled only when DefectOptions::retain_residuals is set.
    std::vector<Residual> residuals;
};

struct DefectOptions {
    bool retain_residuals = false;
    Execution exec = Execution::parallel;
};

/// max over the six permutations s of |H(p) - H(s(p))|.
[[nodiscard]] double symmetry_defect_at(const TernaryFunction& H, const Point3& p);

/// |H(x,y,z) - H(x+y,0,z) - H(x,y,0)|; p must be interior.
[[nodiscard]] double entropy_defect_at(const TernaryFunction& H, const Point3& p);

/// |H(tx,ty,0) - t^alpha H(x,y,0)|.
[[nodiscard]] double homogeneity_defect_at(const TernaryFunction& H, double alpha, double t, double x, double y);

/// |F(x+y,z) + F(x,y) - F(x,y+z) - F(y,z)|.
[[nodiscard]] double cocycle_defect_at(const BinaryFunction& F, double x, double y, double z);

[[nodiscard]] DefectReport sup_symmetry(const TernaryFunction& H, std::span<const Point3> points,
                                        const DefectOptions& opts = {});
[[nodiscard]] DefectReport sup_entropy(const TernaryFunction& H, std::span<const Point3> points,
                                       const DefectOptions& opts = {});
/// Ranges over pairs x scales.
[[nodiscard]] DefectReport sup_homogeneity(const TernaryFunction& H, double alpha,
                                           std::span<const std::pair<double, double>> pairs,
                                           std::span<const double> scales, const DefectOptions& opts = {});
[[nodiscard]] DefectReport sup_cocycle(const BinaryFunction& F, std::span<const Point3> points,
                                       const DefectOptions& opts = {});

/// Sup of a ternary defect over a sample set. Homogeneity requires alpha and
/// ranges over projected pairs x S.scale_factors; the other kinds ignore it.
[[nodiscard]] DefectReport sup_defect(DefectKind kind, const TernaryFunction& H, const SampleSet& S,
                                      std::optional<double> alpha = std::nullopt,
                                      const DefectOptions& opts = {});

/// Sup of the cocycle defect of F over the triples of S.
[[nodiscard]] DefectReport sup_defect(const BinaryFunction& F, const SampleSet& S, const DefectOptions& opts = {});

} // namespace esl
