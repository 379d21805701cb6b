#include "esl/fitting.hpp"
#include "esl/harness.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace esl;
using Catch::Approx;

namespace {

TernaryFunction exact(const SolutionFamily& fam) { return TernaryFunction::from_solution(fam); }

TernaryFunction fn(std::function<double(const Point3&)> f)
{
    return TernaryFunction(std::move(f), TernaryFunction::Representation::custom);
}

double objective(std::span<const double> v, std::span<const double> g, double c)
{
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i] - c * g[i]));
    return m;
}

const SampleSet& grid()
{
    static const SampleSet S = make_sample_set({}, 0);
    return S;
}

} // namespace

TEST_CASE("exact members are recovered", "[fitting]")
{
    for (auto metric : {FitMetric::sup_norm, FitMetric::least_squares}) {
        const auto pw = fit_power(exact(SolutionFamily::power(5, 2)), 2, grid(), {metric});
        CHECK(pw.family.coefficient() == Approx(5).epsilon(1e-12));
        CHECK(pw.family.degree() == 2.0);
        CHECK(pw.residual_sup <= 1e-12 * 5 * 9e6);

        const auto sh = fit_shannon(exact(SolutionFamily::shannon(-2)), grid(), {metric});
        CHECK(sh.family.coefficient() == Approx(-2).epsilon(1e-12));
        CHECK(sh.residual_sup <= 1e-12 * 2 * 3e4);
    }
    const auto k = fit_constant(exact(SolutionFamily::constant(7)), grid());
    CHECK(k.family.coefficient() == 7.0);
    CHECK(k.residual_sup == 0.0);
}

TEST_CASE("power fit of 5g + 1", "[fitting]")
{
    const auto pw = SolutionFamily::power(5, 2);
    const auto r = fit_power(fn([pw](const Point3& p) { return pw(p) + 1.0; }), 2, grid());
    CHECK(r.residual_sup > 0.0);
    CHECK(r.residual_sup <= 1.0);
}

TEST_CASE("fit of H = 0", "[fitting]")
{
    const auto zero = fn([](const Point3&) { return 0.0; });
    const auto r = fit_power(zero, -1.5, grid());
    CHECK(r.family.coefficient() == 0.0);
    CHECK(r.residual_sup == 0.0);
    CHECK(r.residual_l2 == 0.0);
}

TEST_CASE("Shannon plus bounded noise", "[fitting]")
{
    const double delta = 1e-3;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        PerturbationSpec p;
        p.amplitude = delta;
        p.seed = seed;
        const auto r = fit_shannon(perturb(SolutionFamily::shannon(1), p), grid());
        CHECK(r.residual_sup <= 2 * delta);
        CHECK(r.residual_sup <= r.ls_residual_sup);
    }
}

TEST_CASE("power(alpha=2) against the Shannon basis matches the LP minimax oracle", "[fitting]")
{
    // tests/oracles/minimax_fit.py
    const auto r = fit_shannon(exact(SolutionFamily::power(1, 2)), grid());
    CHECK(r.family.coefficient() == Approx(1508.47151666).epsilon(1e-6));
    CHECK(r.residual_sup == Approx(1028323.96409).epsilon(1e-6));
    CHECK(r.residual_sup > 0.1);
}

TEST_CASE("constant fit is the midrange", "[fitting]")
{
    const auto S = grid();
    const auto H = fn([](const Point3& p) { return p.x() == p.y() && p.y() == p.z() ? 3.0 : 1.0; });
    const auto r = fit_constant(H, S);
    CHECK(r.family.coefficient() == 2.0);
    CHECK(r.residual_sup == 1.0);

    const double delta = 0.01;
    PerturbationSpec p;
    p.amplitude = delta;
    p.seed = 5;
    const auto n = fit_constant(perturb(SolutionFamily::constant(5), p), S);
    CHECK(std::abs(n.family.coefficient() - 5) <= delta);
    CHECK(n.residual_sup <= delta);
}

TEST_CASE("fit routes on the declared degree", "[fitting]")
{
    const auto H = exact(SolutionFamily::shannon(1));
    CHECK(fit(H, 1, grid()).family.kind() == SolutionFamily::Kind::shannon);
    CHECK(fit(H, 0, grid()).family.kind() == SolutionFamily::Kind::constant);
    CHECK(fit(H, 3, grid()).family.kind() == SolutionFamily::Kind::power);
    CHECK_THROWS_AS(fit_power(H, 1, grid()), DomainError);
    CHECK_THROWS_AS(fit_power(H, 0, grid()), DomainError);
}

TEST_CASE("theorem_bound examples", "[fitting]")
{
    CHECK(theorem_bound(2, EpsilonTriple(0.1, 0.2, 7)) == 0.1 + 0.2);
    CHECK(theorem_bound(2, EpsilonTriple(0.1, 0.2, 7)) == Approx(0.3).epsilon(1e-15));
    CHECK(theorem_bound(0, EpsilonTriple(1, 1, 1)) == 82.0);
    for (double a : {-2.0, 0.0, 0.5, 1.0, 3.0}) CHECK(theorem_bound(a, EpsilonTriple(0, 0, 0)) == 0.0);
}

TEST_CASE("sup-norm objective: local optimality, no worse than least squares", "[fitting][property]")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 50 + rng() % 500;
        std::vector<double> v(n), g(n);
        const double c0 = -5 + 10 * oracle::unit(rng);
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = std::exp(-4 + 8 * oracle::unit(rng)) * (oracle::unit(rng) < 0.3 ? -1 : 1);
            v[i] = c0 * g[i] + (trial % 2 ? std::sin(double(i)) : -1 + 2 * oracle::unit(rng));
        }
        const auto r = fit_one_parameter(v, g, FitMetric::sup_norm);
        CHECK(r.objective == objective(v, g, r.coefficient));
        CHECK(r.objective <= r.ls_objective);
        CHECK(r.ls_objective == objective(v, g, r.ls_coefficient));
        for (double d : {-1e-6, 1e-6}) CHECK(r.objective <= objective(v, g, r.coefficient + d) + 1e-9);
    }
}

TEST_CASE("sup-norm fit is scale equivariant", "[fitting][property]")
{
    std::vector<double> v{1, -2, 3.5, 0.25, 7}, g{0.5, 1, -2, 3, 1.5};
    const auto a = fit_one_parameter(v, g, FitMetric::sup_norm);
    for (double k : {-3.0, 0.5, 1e3}) {
        std::vector<double> kv(v);
        for (auto& x : kv) x *= k;
        const auto b = fit_one_parameter(kv, g, FitMetric::sup_norm);
        CHECK(b.coefficient == Approx(k * a.coefficient).epsilon(1e-10));
        CHECK(b.objective == Approx(std::abs(k) * a.objective).epsilon(1e-10));
    }
}

TEST_CASE("least squares closed form", "[fitting]")
{
    std::vector<double> v{1, 2, 3}, g{1, 1, 1};
    const auto r = fit_one_parameter(v, g, FitMetric::least_squares);
    CHECK(r.coefficient == 2.0);
    CHECK(r.objective == 1.0);
    CHECK(r.residual_l2 == Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto s = fit_one_parameter(v, g, FitMetric::sup_norm);
    CHECK(s.coefficient == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("degenerate basis is an error", "[fitting]")
{
    std::vector<double> v{1, 2}, g{0, 0};
    CHECK_THROWS_WITH(fit_one_parameter(v, g, FitMetric::sup_norm), Catch::Matchers::ContainsSubstring("degenerate basis"));

    SampleSpec one;
    one.lo = one.hi = 1;
    one.per_axis = 1;
    const auto S = make_sample_set(one, 0);
    const auto H = exact(SolutionFamily::constant(1));
    CHECK_THROWS_AS(fit_power(H, 1 + 1e-15, S), NumericError);
}

TEST_CASE("residual norms are consistent", "[fitting]")
{
    PerturbationSpec p;
    p.amplitude = 0.05;
    p.seed = 3;
    const auto r = fit_power(perturb(SolutionFamily::power(2, 0.5), p), 0.5, grid());
    CHECK(r.residual_sup >= 0.0);
    CHECK(r.residual_l2 >= r.residual_sup);
    CHECK(r.residual_l2 <= r.residual_sup * std::sqrt(double(grid().triples.size())));
    CHECK(r.informative_points <= grid().triples.size());
}
