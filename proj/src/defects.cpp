#include "esl/defects.hpp"

#include "esl/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace esl {

namespace {

using Sample = kernels::Sample<DefectSite>;

DefectSite site_of(const Point3& p, double scale = 1.0) { return {p.coords(), scale}; }

Sample symmetry_sample(const TernaryFunction& H, const Point3& p)
{
    const double h = H(p);
    Sample s{0.0, std::abs(h), site_of(p)};
    for (const auto& perm : Permutation3::all()) {
        const double hp = H(perm.apply(p));
        s.value = std::max(s.value, std::abs(h - hp));
        s.magnitude = std::max(s.magnitude, std::abs(hp));
    }
    return s;
}

Sample entropy_sample(const TernaryFunction& H, const Point3& p)
{
    if (!p.interior()) throw DomainError("entropy defect needs an interior point, got " + to_string(p));
    const double h = H(p);
    const double h1 = H(Point3(p.x() + p.y(), 0.0, p.z()));
    const double h2 = H(Point3(p.x(), p.y(), 0.0));
    return {std::abs(h - h1 - h2), std::max({std::abs(h), std::abs(h1), std::abs(h2)}), site_of(p)};
}

Sample homogeneity_sample(const TernaryFunction& H, double alpha, double t, double x, double y)
{
    if (!(t > 0.0) || !(x > 0.0) || !(y > 0.0)) throw DomainError("homogeneity defect needs t, x, y > 0");
    const double scaled = H(Point3(t * x, t * y, 0.0));
    const double base = std::pow(t, alpha) * H(Point3(x, y, 0.0));
    return {std::abs(scaled - base), std::max(std::abs(scaled), std::abs(base)), {{x, y, 0.0}, t}};
}

Sample cocycle_sample(const BinaryFunction& F, double x, double y, double z)
{
    if (!(x > 0.0) || !(y > 0.0) || !(z > 0.0)) throw DomainError("cocycle defect needs x, y, z > 0");
    const double a = F(x + y, z);
    const double b = F(x, y);
    const double c = F(x, y + z);
    const double d = F(y, z);
    return {std::abs(a + b - c - d), std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}), {{x, y, z}, 1.0}};
}

template <class Eval>
DefectReport reduce(DefectKind kind, std::size_t n, Eval&& eval, const DefectOptions& opts)
{
    if (n == 0) throw DomainError("sup defect over an empty sample set");
    std::vector<Sample> kept;
    const auto best = kernels::max_reduce<DefectSite>(opts.exec, n, eval, opts.retain_residuals ? &kept : nullptr);
    DefectReport r;
    r.kind = kind;
    r.sup_estimate = best.top->value;
    r.argmax = best.top->site;
    r.max_abs_value = best.magnitude;
    r.sites = n;
    if (opts.retain_residuals) {
        r.residuals.reserve(kept.size());
        for (const auto& s : kept) r.residuals.push_back({s.site, s.value});
    }
    return r;
}

} // namespace

std::string to_string(DefectKind k)
{
    switch (k) {
    case DefectKind::symmetry: return "symmetry";
    case DefectKind::entropy: return "entropy";
    case DefectKind::homogeneity: return "homogeneity";
    case DefectKind::cocycle: return "cocycle";
    }
    return "?";
}

double symmetry_defect_at(const TernaryFunction& H, const Point3& p) { return symmetry_sample(H, p).value; }

double entropy_defect_at(const TernaryFunction& H, const Point3& p) { return entropy_sample(H, p).value; }

double homogeneity_defect_at(const TernaryFunction& H, double alpha, double t, double x, double y)
{
    return homogeneity_sample(H, alpha, t, x, y).value;
}

double cocycle_defect_at(const BinaryFunction& F, double x, double y, double z)
{
    return cocycle_sample(F, x, y, z).value;
}

DefectReport sup_symmetry(const TernaryFunction& H, std::span<const Point3> points, const DefectOptions& opts)
{
    return reduce(DefectKind::symmetry, points.size(), [&](std::size_t i) { return symmetry_sample(H, points[i]); }, opts);
}

DefectReport sup_entropy(const TernaryFunction& H, std::span<const Point3> points, const DefectOptions& opts)
{
    return reduce(DefectKind::entropy, points.size(), [&](std::size_t i) { return entropy_sample(H, points[i]); }, opts);
}

DefectReport sup_homogeneity(const TernaryFunction& H, double alpha, std::span<const std::pair<double, double>> pairs,
                             std::span<const double> scales, const DefectOptions& opts)
{
    const std::size_t ns = scales.size();
    return reduce(
        DefectKind::homogeneity, pairs.size() * ns,
        [&](std::size_t i) {
            const auto& [x, y] = pairs[i / ns];
            return homogeneity_sample(H, alpha, scales[i % ns], x, y);
        },
        opts);
}

DefectReport sup_cocycle(const BinaryFunction& F, std::span<const Point3> points, const DefectOptions& opts)
{
    return reduce(
        DefectKind::cocycle, points.size(),
        [&](std::size_t i) {
            const auto& p = points[i];
            return cocycle_sample(F, p.x(), p.y(), p.z());
        },
        opts);
}

DefectReport sup_defect(DefectKind kind, const TernaryFunction& H, const SampleSet& S, std::optional<double> alpha,
                        const DefectOptions& opts)
{
    switch (kind) {
    case DefectKind::symmetry: return sup_symmetry(H, S.triples, opts);
    case DefectKind::entropy: return sup_entropy(H, S.triples, opts);
    case DefectKind::homogeneity: {
        if (!alpha) throw DomainError("homogeneity defect requires alpha");
        const auto pairs = projected_pairs(S.triples);
        return sup_homogeneity(H, *alpha, pairs, S.scale_factors, opts);
    }
    case DefectKind::cocycle: {
        const BinaryFunction F([&H](double x, double y) { return H(Point3(x, y, 0.0)); });
        return sup_cocycle(F, S.triples, opts);
    }
    }
    throw DomainError("unknown defect kind");
}

DefectReport sup_defect(const BinaryFunction& F, const SampleSet& S, const DefectOptions& opts)
{
    return sup_cocycle(F, S.triples, opts);
}

} // namespace esl
