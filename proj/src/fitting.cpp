#include "esl/fitting.hpp"

#include "esl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace esl {

namespace {

constexpr double kDegenerateRel = 1e-12;
constexpr double kCoefficientRel = 1e-12;
constexpr int kMaxIterations = 400;

double residual_norm(std::span<const double> h, std::span<const double> g, double c)
{
    std::vector<double> sq(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double r = h[i] - c * g[i];
        sq[i] = r * r;
    }
    return std::sqrt(pairwise_sum(sq));
}

std::vector<double> evaluate(const SampleSet& S, Execution exec, const TernaryFunction::Fn& fn)
{
    if (S.triples.empty()) throw DomainError("fit over an empty sample set");
    std::vector<double> out(S.triples.size());
    auto eval = [&](std::size_t i) {
        const double v = fn(S.triples[i]);
        if (!std::isfinite(v)) throw NumericError("non-finite value at " + to_string(S.triples[i]));
        return v;
    };
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval(i);
    } else {
        kernels::parallel_fill(out, eval);
    }
    return out;
}

FitResult fit_basis(const TernaryFunction& H, const SolutionFamily& unit, const SampleSet& S, const FitOptions& opts)
{
    const auto h = evaluate(S, opts.exec, [&H](const Point3& p) { return H(p); });
    const auto g = evaluate(S, opts.exec, [&unit](const Point3& p) { return unit.basis(p); });
    const auto f = fit_one_parameter(h, g, opts.metric, opts.exec);
    FitResult r;
    r.family = unit.with_coefficient(f.coefficient);
    r.metric = opts.metric;
    r.residual_sup = f.objective;
    r.residual_l2 = f.residual_l2;
    r.ls_coefficient = f.ls_coefficient;
    r.ls_residual_sup = f.ls_objective;
    r.informative_points = f.informative_points;
    return r;
}

} // namespace

std::string to_string(FitMetric m) { return m == FitMetric::sup_norm ? "sup_norm" : "least_squares"; }

OneParameterFit fit_one_parameter(std::span<const double> values, std::span<const double> basis, FitMetric metric,
                                  Execution exec)
{
    if (values.size() != basis.size() || values.empty()) throw DomainError("fit needs equally sized, nonempty inputs");

    double scale = 0.0;
    for (double b : basis) scale = std::max(scale, std::abs(b));
    const double threshold = kDegenerateRel * (1.0 + scale);

    std::vector<double> hg, gg;
    double min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (std::abs(basis[i]) <= threshold) continue;
        hg.push_back(values[i] * basis[i]);
        gg.push_back(basis[i] * basis[i]);
        min_abs = std::min(min_abs, std::abs(basis[i]));
    }
    if (gg.empty()) throw NumericError("degenerate basis: every basis value is below the informative threshold");

    auto objective = [&](double c) { return kernels::max_abs_residual(exec, values, basis, c); };

    OneParameterFit r;
    r.informative_points = gg.size();
    r.ls_coefficient = pairwise_sum(hg) / pairwise_sum(gg);
    r.ls_objective = objective(r.ls_coefficient);
    const double ls_l2 = residual_norm(values, basis, r.ls_coefficient);

    if (metric == FitMetric::least_squares) {
        r.coefficient = r.ls_coefficient;
        r.objective = r.ls_objective;
        r.residual_l2 = ls_l2;
        return r;
    }

    // Every minimizer c* obeys |c* - c_ls| <= 2 |r_ls|_2 / max|g|, so the
    // bracket below always contains one.
    const double radius = 3.0 * ls_l2 / min_abs;
    double lo = r.ls_coefficient - radius;
    double hi = r.ls_coefficient + radius;
    for (int it = 0; it < kMaxIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(hi - lo > kCoefficientRel * (1.0 + std::abs(mid)))) break;
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (objective(m1) < objective(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    double c = 0.5 * (lo + hi);
    double obj = objective(c);
    if (r.ls_objective < obj) {
        c = r.ls_coefficient;
        obj = r.ls_objective;
    }
    r.coefficient = c;
    r.objective = obj;
    r.residual_l2 = residual_norm(values, basis, c);
    return r;
}

FitResult fit_power(const TernaryFunction& H, double alpha, const SampleSet& S, const FitOptions& opts)
{
    if (alpha == 0.0 || alpha == 1.0) {
        throw DomainError("power fit needs alpha outside {0, 1}; use the constant or shannon fit");
    }
    return fit_basis(H, SolutionFamily::power(1.0, alpha), S, opts);
}

FitResult fit_shannon(const TernaryFunction& H, const SampleSet& S, const FitOptions& opts)
{
    return fit_basis(H, SolutionFamily::shannon(1.0), S, opts);
}

FitResult fit_constant(const TernaryFunction& H, const SampleSet& S, const FitOptions& opts)
{
    const auto h = evaluate(S, opts.exec, [&H](const Point3& p) { return H(p); });
    const auto [mn, mx] = std::minmax_element(h.begin(), h.end());
    const double a = 0.5 * (*mn + *mx);
    const std::vector<double> ones(h.size(), 1.0);

    FitResult r;
    r.family = SolutionFamily::constant(a);
    r.metric = FitMetric::sup_norm;
    r.residual_sup = 0.5 * (*mx - *mn);
    r.residual_l2 = residual_norm(h, ones, a);
    r.ls_coefficient = a;
    r.ls_residual_sup = r.residual_sup;
    r.informative_points = h.size();
    return r;
}

FitResult fit(const TernaryFunction& H, double alpha, const SampleSet& S, const FitOptions& opts)
{
    if (alpha == 1.0) return fit_shannon(H, S, opts);
    if (alpha == 0.0) return fit_constant(H, S, opts);
    return fit_power(H, alpha, S, opts);
}

double theorem_bound(double alpha, const EpsilonTriple& eps)
{
    if (alpha != 0.0) return eps.eps1() + eps.eps2();
    return 8.0 * eps.eps3() + 25.0 * eps.eps2() + 49.0 * eps.eps1();
}

} // namespace esl
