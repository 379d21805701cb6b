#include "esl/proofchain.hpp"

#include "esl/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace esl {

BinaryFunction restrict_to_F(const TernaryFunction& H)
{
    return BinaryFunction([H](double x, double y) { return H(Point3(x, y, 0.0)); });
}

HomogenizationSchedule::HomogenizationSchedule(double alpha, std::vector<double> magnitudes) : alpha_(alpha)
{
    if (alpha == 0.0 || !std::isfinite(alpha)) throw DomainError("homogenization needs a finite alpha != 0");
    if (magnitudes.empty()) throw DomainError("empty homogenization schedule");
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (!(magnitudes[i] > 0.0) || !std::isfinite(magnitudes[i])) throw DomainError("schedule values must be positive");
        if (i > 0 && !(magnitudes[i] > magnitudes[i - 1])) throw DomainError("schedule values must increase");
    }
    t_ = std::move(magnitudes);
    if (direction() == Direction::to_zero) {
        for (double& t : t_) t = 1.0 / t;
    }
}

HomogenizationSchedule HomogenizationSchedule::geometric(double alpha, std::size_t steps, double base)
{
    if (!(base > 1.0)) throw DomainError("geometric schedule base must exceed 1");
    std::vector<double> m(steps);
    double v = 1.0;
    for (auto& e : m) {
        v *= base;
        e = v;
    }
    return {alpha, std::move(m)};
}

HomogenizationResult homogenize(const BinaryFunction& F, const HomogenizationSchedule& sched, double x, double y)
{
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("homogenize needs x, y > 0");
    HomogenizationResult r;
    r.t_values = sched.t_values();
    r.trace.reserve(r.t_values.size());
    for (double t : r.t_values) {
        const double w = std::pow(t, sched.alpha());
        if (!std::isfinite(w) || w == 0.0) throw NumericError("t^alpha out of range at t = " + std::to_string(t));
        const double f = F(t * x, t * y);
        const double v = f / w;
        if (!std::isfinite(f) || !std::isfinite(v)) throw NumericError("homogenization trace overflow at t = " + std::to_string(t));
        r.trace.push_back(v);
    }
    r.value = r.trace.back();
    return r;
}

BinaryFunction skew_part(const BinaryFunction& F)
{
    return BinaryFunction([F](double x, double y) { return (F(x, y) - F(y, x)) / 2.0; });
}

DecompositionResult reconstruct_potential(const BinaryFunction& G, double step, std::size_t n)
{
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("potential step must be positive");
    if (n < 2) throw DomainError("potential reconstruction needs n >= 2");

    DecompositionResult r;
    r.step = step;
    r.potential.assign(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const double kh = static_cast<double>(k) * step;
        r.potential[k] = r.potential[k - 1] + r.potential[0] + G(kh, step);
    }
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 1; i + j <= n; ++j) {
            const double g = G(static_cast<double>(i) * step, static_cast<double>(j) * step);
            const double cob = r.potential[i + j - 1] - r.potential[i - 1] - r.potential[j - 1];
            const double res = std::abs(g - cob);
            if (!std::isfinite(res)) throw NumericError("non-finite potential residual");
            r.residual_sup = std::max(r.residual_sup, res);
        }
    }
    r.skew = skew_part(G);
    return r;
}

double average_correct_cocycle(const BinaryFunction& F, double window, std::size_t m, double x, double y,
                               Execution exec)
{
    if (!(window > 0.0) || !std::isfinite(window)) throw DomainError("averaging window must be positive");
    if (m < 1) throw DomainError("averaging count must be at least 1");
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("averaging needs x, y > 0");

    std::vector<double> bracket(m);
    auto term = [&](std::size_t i) {
        const double z = static_cast<double>(i + 1) * window / static_cast<double>(m);
        return F(x, y + z) + F(y, z) - F(x + y, z);
    };
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < m; ++i) bracket[i] = term(i);
    } else {
        kernels::parallel_fill(bracket, term);
    }
    return pairwise_sum(bracket) / static_cast<double>(m);
}

ChainPoints cocycle_chain_points(std::span<const Point3> triples)
{
    ChainPoints c;
    c.entropy.reserve(2 * triples.size());
    c.symmetry.reserve(4 * triples.size());
    c.entropy.assign(triples.begin(), triples.end());
    c.symmetry.assign(triples.begin(), triples.end());
    for (const auto& p : triples) {
        c.entropy.emplace_back(p.z(), p.y(), p.x());
        c.symmetry.emplace_back(p.x() + p.y(), 0.0, p.z());
        c.symmetry.emplace_back(p.y() + p.z(), 0.0, p.x());
        c.symmetry.emplace_back(p.z(), p.y(), 0.0);
    }
    for (const auto& [x, y] : projected_pairs(triples)) c.symmetry.emplace_back(x, y, 0.0);
    return c;
}

SkewBoundReport skew_bound_check(const TernaryFunction& H, const SampleSet& S, const Tolerance& tol, Execution exec)
{
    if (S.triples.empty()) throw DomainError("skew bound check over an empty sample set");
    const auto chain = cocycle_chain_points(S.triples);
    const DefectOptions opts{false, exec};
    const auto sym = sup_symmetry(H, chain.symmetry, opts);
    const auto ent = sup_entropy(H, chain.entropy, opts);

    // Any coboundary f(x+y) - f(x) - f(y) is symmetric, so the antisymmetric
    // part of F - G equals that of F.
    const auto F = restrict_to_F(H);
    const auto pairs = projected_pairs(S.triples);
    using Site = std::pair<double, double>;
    const auto best = kernels::max_reduce<Site>(exec, pairs.size(), [&](std::size_t i) {
        const auto [x, y] = pairs[i];
        const double a = F(x, y);
        const double b = F(y, x);
        return kernels::Sample<Site>{std::abs(a - b), std::max(std::abs(a), std::abs(b)), pairs[i]};
    });

    SkewBoundReport r;
    r.eps_hat = EpsilonTriple(sym.sup_estimate, ent.sup_estimate, 0.0);
    r.lhs = best.top->value;
    r.argmax = best.top->site;
    r.rhs = 4.0 * ent.sup_estimate + 9.0 * sym.sup_estimate;
    r.magnitude = std::max({best.magnitude, sym.max_abs_value, ent.max_abs_value});
    r.pass = tol.le(r.lhs, r.rhs, r.magnitude);
    return r;
}

} // namespace esl
