#pragma once

// Executable counterparts of the steps of the stability proof: restriction
// of H to the face z = 0, the homogenization limit, the antisymmetric part,
// the telescoping reconstruction of a coboundary potential, and a window
// average standing in for the invariant mean of the cocycle correction.

#include "esl/defects.hpp"
#include "esl/domain.hpp"
#include "esl/numeric.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace esl {

/// F(x, y) = H(x, y, 0).
[[nodiscard]] BinaryFunction restrict_to_F(const TernaryFunction& H);

/// Scale factors approaching t0 = +inf (alpha > 0) or t0 = 0 (alpha < 0).
class HomogenizationSchedule {
public:
    enum class Direction { to_zero, to_infinity };

    /// `magnitudes` must be strictly increasing and positive. They are used
    /// as t directly toward infinity and as t = 1/magnitude toward zero.
    HomogenizationSchedule(double alpha, std::vector<double> magnitudes);

    /// magnitudes base, base^2, ..., base^steps.
    [[nodiscard]] static HomogenizationSchedule geometric(double alpha, std::size_t steps, double base = 10.0);

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] Direction direction() const { return alpha_ > 0 ? Direction::to_infinity : Direction::to_zero; }
    [[nodiscard]] const std::vector<double>& t_values() const { return t_; }

private:
    double alpha_;
    std::vector<double> t_;
};

struct HomogenizationResult {
    double value = 0.0;
    std::vector<double> t_values;
    /// t^-alpha F(tx, ty) for each scheduled t.
    std::vector<double> trace;
};

/// Throws NumericError when t^-alpha or F(tx, ty) leaves the representable range.
[[nodiscard]] HomogenizationResult homogenize(const BinaryFunction& F, const HomogenizationSchedule& sched, double x,
                                              double y);

/// (x, y) -> (F(x, y) - F(y, x)) / 2.
[[nodiscard]] BinaryFunction skew_part(const BinaryFunction& F);

struct DecompositionResult {
    double step = 1.0;
    /// potential[k] = f((k + 1) * step), gauge f(step) = 0.
    std::vector<double> potential;
    BinaryFunction skew{[](double, double) { return 0.0; }};
    /// max over i, j >= 1, i + j <= n of |G(ih, jh) - [f((i+j)h) - f(ih) - f(jh)]|.
    double residual_sup = 0.0;
};

/// Telescoping f((k+1)h) = f(kh) + f(h) + G(kh, h) on the ray {h, ..., nh}.
[[nodiscard]] DecompositionResult reconstruct_potential(const BinaryFunction& G, double step, std::size_t n);

/// (1/m) sum_j [F(x, y + z_j) + F(y, z_j) - F(x + y, z_j)], z_j = j R / m.
/// Reproduces F(x, y) exactly when F is a cocycle.
[[nodiscard]] double average_correct_cocycle(const BinaryFunction& F, double window, std::size_t m, double x, double y,
                                             Execution exec = Execution::parallel);

/// Points referenced by the chain that turns the symmetry and entropy
/// inequalities into the cocycle inequality for F.
struct ChainPoints {
    /// The triples and their reversals (z, y, x).
    std::vector<Point3> entropy;
    /// The triples, (x+y,0,z), (y+z,0,x), (z,y,0) and (x,y,0) per pair.
    std::vector<Point3> symmetry;
};

[[nodiscard]] ChainPoints cocycle_chain_points(std::span<const Point3> triples);

struct SkewBoundReport {
    double lhs = 0.0; ///< sup |2 skew(F)(x, y)| over projected pairs
    double rhs = 0.0; ///< 4 eps2 + 9 eps1 over the chain points
    EpsilonTriple eps_hat;
    double magnitude = 0.0;
    std::pair<double, double> argmax{0.0, 0.0};
    bool pass = false;
};

/// Checks the bound 4 eps2 + 9 eps1 on twice the antisymmetric part of F = H(., ., 0).
[[nodiscard]] SkewBoundReport skew_bound_check(const TernaryFunction& H, const SampleSet& S, const Tolerance& tol = {},
                                               Execution exec = Execution::parallel);

} // namespace esl
