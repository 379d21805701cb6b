#include "esl/harness.hpp"
#include "esl/proofchain.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

using namespace esl;
using Catch::Approx;

namespace {

TernaryFunction exact(const SolutionFamily& fam) { return TernaryFunction::from_solution(fam); }

const BinaryFunction two_xy([](double x, double y) { return 2 * x * y; });

} // namespace

TEST_CASE("restrict_to_F examples", "[proofchain]")
{
    CHECK(restrict_to_F(exact(SolutionFamily::power(1, 2)))(1, 2) == 4.0);
    CHECK(restrict_to_F(exact(SolutionFamily::constant(-3.5)))(0.1, 40) == -3.5);
    CHECK(restrict_to_F(exact(SolutionFamily::shannon(1)))(1, 1) == Approx(2 * std::numbers::ln2).epsilon(1e-15));
    CHECK(restrict_to_F(exact(SolutionFamily::shannon(1)))(1, 1) == Approx(1.386294).margin(1e-6));
}

TEST_CASE("homogenization schedule", "[proofchain]")
{
    const auto up = HomogenizationSchedule::geometric(2, 4);
    CHECK(up.direction() == HomogenizationSchedule::Direction::to_infinity);
    CHECK(up.t_values() == std::vector<double>{10, 100, 1000, 10000});
    const auto down = HomogenizationSchedule::geometric(-2, 3);
    CHECK(down.direction() == HomogenizationSchedule::Direction::to_zero);
    CHECK(down.t_values() == std::vector<double>{0.1, 0.01, 0.001});
    CHECK_THROWS_AS(HomogenizationSchedule(0, {10}), DomainError);
    CHECK_THROWS_AS(HomogenizationSchedule(2, {10, 10}), DomainError);
    CHECK_THROWS_AS(HomogenizationSchedule(2, {}), DomainError);
    CHECK_THROWS_AS(HomogenizationSchedule(2, {-1}), DomainError);
}

TEST_CASE("homogenize examples", "[proofchain]")
{
    const auto exact_run = homogenize(two_xy, HomogenizationSchedule::geometric(2, 5, 3), 1, 2);
    CHECK(exact_run.value == 4.0);
    for (double v : exact_run.trace) CHECK(v == Approx(4.0).epsilon(1e-15));

    const BinaryFunction wobbly([](double x, double y) { return 2 * x * y + std::sin(x + y); });
    const auto sched = HomogenizationSchedule::geometric(2, 4);
    const auto r = homogenize(wobbly, sched, 1, 2);
    REQUIRE(r.trace.size() == 4);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
        const double t = r.t_values[k];
        CHECK(std::abs(r.trace[k] - 4.0) <= 1.0 / (t * t) + 1e-15 * 4);
    }
    CHECK(r.value == r.trace.back());

    const BinaryFunction inv([](double x, double y) { return 1.0 / (x * y); });
    const auto neg = homogenize(inv, HomogenizationSchedule::geometric(-2, 4), 1, 2);
    for (double v : neg.trace) CHECK(v == Approx(0.5).epsilon(1e-15));
}

TEST_CASE("homogenize reports range overflow", "[proofchain]")
{
    CHECK_THROWS_AS(homogenize(two_xy, HomogenizationSchedule(2, {1e200}), 1, 2), NumericError);
    const BinaryFunction inv([](double x, double y) { return 1.0 / (x * y); });
    CHECK_THROWS_AS(homogenize(inv, HomogenizationSchedule(-2, {1e300}), 1, 2), NumericError);
}

TEST_CASE("skew_part examples", "[proofchain]")
{
    const auto sym = skew_part(two_xy);
    CHECK(sym(3, 7) == 0.0);
    const BinaryFunction first([](double x, double) { return x; });
    const auto sk = skew_part(first);
    CHECK(sk(3, 1) == 1.0);
    CHECK(sk(1, 3) == -1.0);
    const auto twice = skew_part(sk);
    for (double x : {0.1, 1.0, 5.5}) {
        for (double y : {0.3, 2.0, 9.0}) {
            CHECK(twice(x, y) == sk(x, y));
            CHECK(sk(x, y) == -sk(y, x));
        }
    }
}

TEST_CASE("reconstruct_potential examples", "[proofchain]")
{
    const auto r = reconstruct_potential(two_xy, 1, 4);
    CHECK(r.potential == std::vector<double>{0, 2, 6, 12});
    CHECK(r.residual_sup == 0.0);
    CHECK(r.skew(2, 3) == 0.0);

    const auto zero = reconstruct_potential(BinaryFunction([](double, double) { return 0.0; }), 0.5, 10);
    for (double v : zero.potential) CHECK(v == 0.0);
    CHECK(zero.residual_sup == 0.0);

    CHECK_THROWS_AS(reconstruct_potential(two_xy, 1, 1), DomainError);
    CHECK_THROWS_AS(reconstruct_potential(two_xy, 0, 4), DomainError);
}

TEST_CASE("reconstruct_potential under bounded noise stays within the telescoping bound", "[proofchain]")
{
    const double delta = 1e-3;
    const std::size_t n = 16;
    for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
        const BinaryFunction G([seed, delta](double x, double y) {
            const auto bits = mix64(seed ^ mix64(std::bit_cast<std::uint64_t>(x) ^ mix64(std::bit_cast<std::uint64_t>(y))));
            return 2 * x * y + delta * (2.0 * static_cast<double>(bits >> 11) * 0x1p-53 - 1.0);
        });
        const auto r = reconstruct_potential(G, 1, n);
        CHECK(r.residual_sup <= oracle::telescoping_noise_factor(n) * delta);
        CHECK(r.residual_sup <= 0.2);
    }
    // Sign pattern attaining the worst case at (i, j) = (n/2, n/2).
    CHECK(oracle::telescoping_noise_factor(n) == double(n));
    const double half = double(n / 2);
    const BinaryFunction worst([delta, half](double x, double y) {
        if (y != 1.0) return 2 * x * y + delta;
        return 2 * x * y + (x < half ? delta : -delta);
    });
    const auto r = reconstruct_potential(worst, 1, n);
    CHECK(r.residual_sup == Approx(oracle::telescoping_noise_factor(n) * delta).epsilon(1e-9));
}

TEST_CASE("reconstruct_potential residual is gauge invariant", "[proofchain]")
{
    auto cob = [](auto f) { return BinaryFunction([f](double x, double y) { return f(x + y) - f(x) - f(y); }); };
    const auto a = reconstruct_potential(cob([](double v) { return v * v * v; }), 0.5, 12);
    const auto b = reconstruct_potential(cob([](double v) { return v * v * v + 7 * v; }), 0.5, 12);
    CHECK(a.residual_sup <= 1e-12 * 216);
    CHECK(b.residual_sup <= 1e-12 * 216);
    for (std::size_t k = 0; k < a.potential.size(); ++k) {
        CHECK(a.potential[k] == Approx(b.potential[k]).margin(1e-10));
    }
}

TEST_CASE("average_correct_cocycle examples", "[proofchain]")
{
    for (double R : {1.0, 10.0, 1e3}) {
        for (std::size_t m : {1u, 10u, 1000u}) {
            const double psi = average_correct_cocycle(two_xy, R, m, 1.5, 2.5);
            CHECK(std::abs(psi - 7.5) <= 1e-12 * 7.5);
        }
    }
    CHECK(average_correct_cocycle(BinaryFunction([](double, double) { return 0.0; }), 5, 50, 1, 2) == 0.0);
    CHECK_THROWS_AS(average_correct_cocycle(two_xy, 0, 10, 1, 1), DomainError);
    CHECK_THROWS_AS(average_correct_cocycle(two_xy, 1, 0, 1, 1), DomainError);
}

TEST_CASE("averaging damps oscillatory contamination as the closed form predicts", "[proofchain]")
{
    const double eps = 1e-3;
    const BinaryFunction F([eps](double x, double y) { return 2 * x * y + eps * std::sin(y); });
    for (double R : {10.0, 1e3}) {
        for (std::size_t m : {1000u, 100000u}) {
            const double psi = average_correct_cocycle(F, R, m, 1, 1);
            const double predicted = eps * oracle::mean_sin_closed_form(1.0, R / double(m), m);
            CHECK(std::abs((psi - 2.0) - predicted) <= 1e-9 * eps + 1e-12 * 2 * R);
        }
    }
    const double psi = average_correct_cocycle(F, 1e3, 100000, 1, 1);
    CHECK(std::abs(psi - 2.0) <= 0.01 * eps);
}

TEST_CASE("averaging a perturbed cocycle stays within four amplitudes", "[proofchain]")
{
    const double delta = 0.01;
    const BinaryFunction F([delta](double x, double y) { return 2 * x * y + delta * std::cos(13 * x * y + y); });
    for (double x : {0.5, 1.0, 3.0}) {
        for (double y : {0.2, 1.0, 4.0}) {
            CHECK(std::abs(average_correct_cocycle(F, 100, 5000, x, y) - 2 * x * y) <= 4 * delta);
        }
    }
}

TEST_CASE("cocycle_chain_points", "[proofchain]")
{
    const std::vector<Point3> t{Point3(1, 2, 3)};
    const auto c = cocycle_chain_points(t);
    auto has = [](const std::vector<Point3>& v, const Point3& p) {
        return std::find(v.begin(), v.end(), p) != v.end();
    };
    CHECK(has(c.entropy, Point3(1, 2, 3)));
    CHECK(has(c.entropy, Point3(3, 2, 1)));
    for (const auto& p : {Point3(1, 2, 3), Point3(3, 0, 3), Point3(5, 0, 1), Point3(3, 2, 0), Point3(1, 2, 0)}) {
        CHECK(has(c.symmetry, p));
    }
}

TEST_CASE("skew_bound_check examples", "[proofchain]")
{
    SampleSpec spec;
    spec.per_axis = 8;
    const auto S = make_sample_set(spec, 0);

    const auto ex = skew_bound_check(exact(SolutionFamily::power(1, 2)), S);
    CHECK(ex.lhs == 0.0);
    CHECK(ex.pass);

    PerturbationSpec p;
    p.amplitude = 1e-3;
    p.seed = 12;
    const auto noisy = skew_bound_check(perturb(SolutionFamily::power(1, 2), p), S);
    CHECK(noisy.pass);
    CHECK(noisy.lhs > 0.0);
    CHECK(noisy.lhs <= 2 * (2 * noisy.eps_hat.eps2() + 4 * noisy.eps_hat.eps1()) + noisy.eps_hat.eps1());

    const auto adv = skew_bound_check(projection_function(), S);
    CHECK(adv.pass);
    CHECK(adv.eps_hat.eps1() > 1.0);
    CHECK(adv.lhs <= adv.rhs);
}
