#pragma once

// Core types shared by every other module: points of the domain D, the
// coordinate permutations, the three exact solution families of the entropy
// equation, defect budgets, sample sets and the function wrappers standing in
// for H and F.

#include "esl/error.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace esl {

/// A triple (x, y, z) of nonnegative reals with positive sum.
class Point3 {
public:
    /// Throws DomainError unless x, y, z >= 0, finite, and x + y + z > 0.
    Point3(double x, double y, double z);

    [[nodiscard]] double x() const { return c_[0]; }
    [[nodiscard]] double y() const { return c_[1]; }
    [[nodiscard]] double z() const { return c_[2]; }
    [[nodiscard]] double operator[](std::size_t i) const { return c_[i]; }
    [[nodiscard]] const std::array<double, 3>& coords() const { return c_; }

    /// All three coordinates strictly positive.
    [[nodiscard]] bool interior() const { return c_[0] > 0 && c_[1] > 0 && c_[2] > 0; }

    friend auto operator<=>(const Point3&, const Point3&) = default;
    friend bool operator==(const Point3&, const Point3&) = default;

private:
    std::array<double, 3> c_;
};

[[nodiscard]] std::string to_string(const Point3& p);

/// One of the six bijections of the coordinate slots.
class Permutation3 {
public:
    /// slots[i] names the source coordinate placed at position i.
    explicit Permutation3(std::array<std::uint8_t, 3> slots);

    [[nodiscard]] static const std::array<Permutation3, 6>& all();
    [[nodiscard]] static Permutation3 identity() { return Permutation3({0, 1, 2}); }

    [[nodiscard]] Point3 apply(const Point3& p) const;

    /// (a.then(b)).apply(p) == b.apply(a.apply(p))
    [[nodiscard]] Permutation3 then(const Permutation3& next) const;

    [[nodiscard]] const std::array<std::uint8_t, 3>& slots() const { return slots_; }
    friend bool operator==(const Permutation3&, const Permutation3&) = default;

private:
    std::array<std::uint8_t, 3> slots_;
};

/// Unit-coefficient power basis (x+y+z)^a - x^a - y^a - z^a; zero coordinates
/// contribute 0.
[[nodiscard]] double power_basis(double alpha, const Point3& p);

/// Unit-coefficient Shannon basis (x+y+z)ln(x+y+z) - x ln x - y ln y - z ln z
/// with 0 ln 0 = 0.
[[nodiscard]] double shannon_basis(const Point3& p);

/// Exact solution descriptor: Power{c, alpha}, Shannon{c} or Constant{a}.
class SolutionFamily {
public:
    enum class Kind { power, shannon, constant };

    /// alpha == 1 is rejected: that basis vanishes identically and the
    /// degree-1 family is Shannon.
    [[nodiscard]] static SolutionFamily power(double c, double alpha);
    [[nodiscard]] static SolutionFamily shannon(double c);
    [[nodiscard]] static SolutionFamily constant(double a);

    [[nodiscard]] Kind kind() const { return kind_; }
    /// c for Power and Shannon, a for Constant.
    [[nodiscard]] double coefficient() const { return coef_; }
    /// Homogeneity degree: alpha for Power, 1 for Shannon, 0 for Constant.
    [[nodiscard]] double degree() const { return alpha_; }

    /// The family member with coefficient 1 (Constant: the function 1).
    [[nodiscard]] double basis(const Point3& p) const;
    [[nodiscard]] double operator()(const Point3& p) const;

    [[nodiscard]] SolutionFamily with_coefficient(double c) const;

    friend bool operator==(const SolutionFamily&, const SolutionFamily&) = default;

private:
    SolutionFamily(Kind k, double coef, double alpha) : kind_(k), coef_(coef), alpha_(alpha) {}
    Kind kind_;
    double coef_;
    double alpha_;
};

[[nodiscard]] std::string to_string(SolutionFamily::Kind k);

[[nodiscard]] inline double eval_solution(const SolutionFamily& fam, const Point3& p) { return fam(p); }

/// phi(xy) == x phi(y) + y phi(x) up to tol * (1 + |phi(xy)|) on every pair.
[[nodiscard]] bool check_derivation(const std::function<double(double)>& phi,
                                    std::span<const std::pair<double, double>> pairs, double tol);

/// check_derivation with the regular derivation phi(x) = c x ln x.
[[nodiscard]] bool check_derivation(double c, std::span<const std::pair<double, double>> pairs,
                                    double tol);

/// Defect budgets (eps1, eps2, eps3) for symmetry, the entropy equation and
/// homogeneity. All finite and nonnegative.
class EpsilonTriple {
public:
    EpsilonTriple() = default;
    EpsilonTriple(double eps1, double eps2, double eps3);

    [[nodiscard]] double eps1() const { return e_[0]; }
    [[nodiscard]] double eps2() const { return e_[1]; }
    [[nodiscard]] double eps3() const { return e_[2]; }

    friend bool operator==(const EpsilonTriple&, const EpsilonTriple&) = default;

private:
    std::array<double, 3> e_{0.0, 0.0, 0.0};
};

enum class Spacing { log, linear };

/// Generation descriptor of a SampleSet.
struct SampleSpec {
    double lo = 1e-3;
    double hi = 1e3;
    std::size_t per_axis = 16;
    Spacing spacing = Spacing::log;
    double t_lo = 1e-2;
    double t_hi = 1e2;
    std::size_t t_count = 9;
    std::size_t monte_carlo = 0;

    friend bool operator==(const SampleSpec&, const SampleSpec&) = default;
};

/// Finite surrogate for D° (triples) and for the positive reals (scale factors).
struct SampleSet {
    std::vector<Point3> triples;
    std::vector<double> scale_factors;
    std::uint64_t seed = 0;
    SampleSpec spec;
};

/// Lattice over [lo, hi]^3 plus `monte_carlo` seeded log-uniform triples and
/// the t grid over [t_lo, t_hi]. Bit-identical for identical (spec, seed).
[[nodiscard]] SampleSet make_sample_set(const SampleSpec& spec, std::uint64_t seed);

/// Points (x, y) taken from the first two coordinates of the triples, sorted
/// and deduplicated.
[[nodiscard]] std::vector<std::pair<double, double>> projected_pairs(std::span<const Point3> triples);

/// A real-valued function on D standing in for H.
class TernaryFunction {
public:
    enum class Representation { closed_form, perturbed, tabulated, custom };
    using Fn = std::function<double(const Point3&)>;

    TernaryFunction(Fn f, Representation r) : f_(std::move(f)), rep_(r) {}

    [[nodiscard]] static TernaryFunction from_solution(const SolutionFamily& fam);

    /// Evaluable only at the listed points; any other query throws
    /// NumericError naming the missing point. Duplicate points are rejected.
    [[nodiscard]] static TernaryFunction tabulated(std::vector<std::pair<Point3, double>> rows);

    [[nodiscard]] double operator()(const Point3& p) const { return f_(p); }
    [[nodiscard]] Representation representation() const { return rep_; }

private:
    Fn f_;
    Representation rep_;
};

/// A real-valued function on the positive quadrant (F, G, Psi, ...).
class BinaryFunction {
public:
    using Fn = std::function<double(double, double)>;

    explicit BinaryFunction(Fn f) : f_(std::move(f)) {}

    [[nodiscard]] double operator()(double x, double y) const { return f_(x, y); }

private:
    Fn f_;
};

} // namespace esl
