#include "esl/defects.hpp"
#include "esl/fitting.hpp"
#include "esl/harness.hpp"
#include "esl/kernels.hpp"
#include "esl/proofchain.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

using namespace esl;

namespace {

void require_same(const DefectReport& a, const DefectReport& b)
{
    REQUIRE(a.sup_estimate == b.sup_estimate);
    REQUIRE(a.argmax == b.argmax);
    REQUIRE(a.max_abs_value == b.max_abs_value);
    REQUIRE(a.sites == b.sites);
    REQUIRE(a.residuals.size() == b.residuals.size());
    for (std::size_t i = 0; i < a.residuals.size(); ++i) {
        REQUIRE(a.residuals[i].site == b.residuals[i].site);
        REQUIRE(a.residuals[i].value == b.residuals[i].value);
    }
}

} // namespace

TEST_CASE("serial and parallel sup estimates agree bit for bit", "[kernels]")
{
    SampleSpec spec;
    spec.monte_carlo = 500;
    const auto S = make_sample_set(spec, 77);
    PerturbationSpec p;
    p.amplitude = 1e-3;
    p.seed = 4;
    for (const auto& fam : {SolutionFamily::power(1.5, 2.5), SolutionFamily::shannon(-1)}) {
        const auto H = perturb(fam, p);
        const double alpha = fam.degree();
        for (bool keep : {false, true}) {
            const DefectOptions ser{keep, Execution::serial};
            const DefectOptions par{keep, Execution::parallel};
            for (auto kind : {DefectKind::symmetry, DefectKind::entropy, DefectKind::homogeneity, DefectKind::cocycle}) {
                require_same(sup_defect(kind, H, S, alpha, ser), sup_defect(kind, H, S, alpha, par));
            }
        }
    }
}

TEST_CASE("serial and parallel fits agree bit for bit", "[kernels]")
{
    const auto S = make_sample_set({}, 0);
    PerturbationSpec p;
    p.amplitude = 1e-2;
    p.seed = 8;
    const auto H = perturb(SolutionFamily::power(-0.5, 2), p);
    for (auto metric : {FitMetric::sup_norm, FitMetric::least_squares}) {
        for (double alpha : {2.0, 1.0, 0.0}) {
            const auto a = fit(H, alpha, S, {metric, Execution::serial});
            const auto b = fit(H, alpha, S, {metric, Execution::parallel});
            REQUIRE(a.family.coefficient() == b.family.coefficient());
            REQUIRE(a.residual_sup == b.residual_sup);
            REQUIRE(a.residual_l2 == b.residual_l2);
            REQUIRE(a.ls_coefficient == b.ls_coefficient);
        }
    }
}

TEST_CASE("serial and parallel residual kernels agree", "[kernels]")
{
    std::vector<double> v(10007), g(10007);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::sin(0.37 * double(i));
        g[i] = std::cos(0.11 * double(i)) + 0.001 * double(i);
    }
    for (double c : {-3.0, 0.0, 0.25, 1e3}) {
        REQUIRE(kernels::max_abs_residual_serial(v, g, c) == kernels::max_abs_residual_parallel(v, g, c));
    }
}

TEST_CASE("serial and parallel averaging agree bit for bit", "[kernels]")
{
    const BinaryFunction F([](double x, double y) { return 2 * x * y + 1e-3 * std::sin(y); });
    for (std::size_t m : {1u, 7u, 1000u, 100000u}) {
        REQUIRE(average_correct_cocycle(F, 1e3, m, 1, 1, Execution::serial) ==
                average_correct_cocycle(F, 1e3, m, 1, 1, Execution::parallel));
    }
}

TEST_CASE("parallel reduction rethrows the lowest failing index", "[kernels]")
{
    using S = kernels::Sample<std::size_t>;
    auto eval = [](std::size_t i) -> S {
        if (i % 1000 == 999) throw std::runtime_error("fail at " + std::to_string(i));
        return {double(i % 17), 0.0, i};
    };
    for (int rep = 0; rep < 5; ++rep) {
        CHECK_THROWS_WITH(kernels::max_reduce_parallel<std::size_t>(20000, eval), "fail at 999");
        CHECK_THROWS_WITH(kernels::max_reduce_serial<std::size_t>(20000, eval), "fail at 999");
    }
    auto nan_at = [](std::size_t i) -> S { return {i == 5 ? NAN : 1.0, 0.0, i}; };
    CHECK_THROWS_AS(kernels::max_reduce_parallel<std::size_t>(100, nan_at), NumericError);
    CHECK_THROWS_AS(kernels::max_reduce_serial<std::size_t>(100, nan_at), NumericError);
}

TEST_CASE("parallel reduction breaks ties toward the smallest site", "[kernels]")
{
    using S = kernels::Sample<std::size_t>;
    auto eval = [](std::size_t i) -> S { return {i % 100 == 42 ? 5.0 : 1.0, double(i), 100000 - i}; };
    const auto a = kernels::max_reduce_serial<std::size_t>(50000, eval);
    const auto b = kernels::max_reduce_parallel<std::size_t>(50000, eval);
    REQUIRE(a.top);
    REQUIRE(b.top);
    CHECK(a.top->site == 100000 - 49942);
    CHECK(b.top->site == a.top->site);
    CHECK(a.magnitude == 49999.0);
    CHECK(b.magnitude == a.magnitude);
}

TEST_CASE("parallel_fill preserves index order and propagates errors", "[kernels]")
{
    std::vector<double> out(5000);
    kernels::parallel_fill(out, [](std::size_t i) { return double(i) * 0.5; });
    for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out[i] == double(i) * 0.5);
    CHECK_THROWS_WITH(kernels::parallel_fill(out,
                                             [](std::size_t i) -> double {
                                                 if (i >= 1234) throw std::runtime_error(std::to_string(i));
                                                 return 0.0;
                                             }),
                      "1234");
}
