#include "esl/harness.hpp"

#include "esl/proofchain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace esl {

namespace {

constexpr double kQuantum = 0x1p30; // 1 / quantization step of the log-coordinates
constexpr std::int64_t kZeroKey = std::numeric_limits<std::int64_t>::min();

std::int64_t coordinate_key(double v)
{
    if (v == 0.0) return kZeroKey;
    return std::llround(std::log(v) * kQuantum);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

} // namespace

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string to_string(PerturbationKind k)
{
    switch (k) {
    case PerturbationKind::uniform_noise: return "uniform_noise";
    case PerturbationKind::smooth_bump: return "smooth_bump";
    case PerturbationKind::oscillatory: return "oscillatory";
    }
    return "?";
}

void validate(const PerturbationSpec& spec)
{
    if (!std::isfinite(spec.amplitude) || spec.amplitude < 0.0) throw DomainError("perturbation amplitude must be finite and >= 0");
    if (!(spec.bump_width > 0.0) || !std::isfinite(spec.bump_width)) throw DomainError("bump width must be positive");
    if (!std::isfinite(spec.omega)) throw DomainError("oscillation frequency must be finite");
    for (double c : spec.bump_center) {
        if (!std::isfinite(c)) throw DomainError("bump center must be finite");
    }
}

double perturbation_value(const PerturbationSpec& spec, const Point3& p)
{
    const double d = spec.amplitude;
    double v = 0.0;
    switch (spec.kind) {
    case PerturbationKind::uniform_noise: {
        std::uint64_t h = mix64(spec.seed);
        for (double c : p.coords()) h = mix64(h ^ static_cast<std::uint64_t>(coordinate_key(c)));
        const double u = static_cast<double>(h >> 11) * 0x1p-53;
        v = d * (2.0 * u - 1.0);
        break;
    }
    case PerturbationKind::smooth_bump: {
        double r2 = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            const double e = p[i] - spec.bump_center[i];
            r2 += e * e;
        }
        v = d * std::exp(-r2 / (2.0 * spec.bump_width * spec.bump_width));
        break;
    }
    case PerturbationKind::oscillatory: v = d * std::sin(spec.omega * ((p.x() + p.y()) + p.z())); break;
    }
    return std::clamp(v, -d, d);
}

TernaryFunction perturb(const SolutionFamily& fam, const PerturbationSpec& spec)
{
    validate(spec);
    return TernaryFunction([fam, spec](const Point3& p) { return fam(p) + perturbation_value(spec, p); },
                           TernaryFunction::Representation::perturbed);
}

TernaryFunction projection_function()
{
    return TernaryFunction([](const Point3& p) { return p.x(); }, TernaryFunction::Representation::custom);
}

double EpsilonMeasurement::magnitude() const
{
    return std::max({symmetry.max_abs_value, entropy.max_abs_value, homogeneity.max_abs_value});
}

EpsilonMeasurement measure_epsilons(const TernaryFunction& H, double alpha, const SampleSet& S,
                                    const DefectOptions& opts)
{
    EpsilonMeasurement m;
    m.symmetry = sup_defect(DefectKind::symmetry, H, S, std::nullopt, opts);
    m.entropy = sup_defect(DefectKind::entropy, H, S, std::nullopt, opts);
    m.homogeneity = sup_defect(DefectKind::homogeneity, H, S, alpha, opts);
    m.eps = EpsilonTriple(m.symmetry.sup_estimate, m.entropy.sup_estimate, m.homogeneity.sup_estimate);
    return m;
}

void check_regime(const SolutionFamily& fam, double alpha)
{
    switch (fam.kind()) {
    case SolutionFamily::Kind::power:
        if (alpha == 0.0 || alpha == 1.0 || alpha != fam.degree()) {
            throw DomainError("regime mismatch: power family of exponent " + std::to_string(fam.degree()) +
                              " requires the declared alpha to equal it and lie outside {0, 1}");
        }
        return;
    case SolutionFamily::Kind::shannon:
        if (alpha != 1.0) throw DomainError("regime mismatch: shannon family requires alpha = 1");
        return;
    case SolutionFamily::Kind::constant:
        if (alpha != 0.0) throw DomainError("regime mismatch: constant family requires alpha = 0");
        return;
    }
}

std::string to_string(Verdict v) { return v == Verdict::within_bound ? "within_bound" : "exceeds_bound"; }

VerificationReport verify_theorem(const VerificationInput& in)
{
    check_regime(in.family, in.alpha);
    const auto S = make_sample_set(in.sample, in.sample_seed);
    const auto H = perturb(in.family, in.perturbation);

    VerificationReport r;
    r.provenance = in;
    r.eps_hat = measure_epsilons(H, in.alpha, S, {false, in.exec});
    r.fit = fit(H, in.alpha, S, {in.metric, in.exec});
    r.bound = theorem_bound(in.alpha, r.eps_hat.eps);
    if (r.bound > 0.0) r.ratio = r.fit.residual_sup / r.bound;
    r.verdict = in.tol.le(r.fit.residual_sup, r.bound, r.eps_hat.magnitude()) ? Verdict::within_bound
                                                                               : Verdict::exceeds_bound;
    return r;
}

bool PropertySuiteReport::all_pass() const
{
    return std::all_of(lines.begin(), lines.end(), [](const InequalityLine& l) { return l.pass; });
}

PropertySuiteReport run_property_suite(const TernaryFunction& H, const SampleSet& S, bool alpha_zero,
                                       const Tolerance& tol, Execution exec)
{
    if (S.triples.empty()) throw DomainError("property suite over an empty sample set");
    const DefectOptions opts{false, exec};
    const auto F = restrict_to_F(H);
    const auto chain = cocycle_chain_points(S.triples);
    const auto pairs = projected_pairs(S.triples);

    const auto sym = sup_symmetry(H, chain.symmetry, opts);
    const auto ent = sup_entropy(H, chain.entropy, opts);
    const double e1 = sym.sup_estimate;
    const double e2 = ent.sup_estimate;
    const double base_mag = std::max(sym.max_abs_value, ent.max_abs_value);

    PropertySuiteReport rep;

    // Sides of the reduction from the entropy inequality to the cocycle
    // inequality, with the pointwise right-hand sides.
    {
        InequalityLine exchange{"face_exchange", "2*eps2 + eps1"};
        InequalityLine cocycle{"cocycle", "2*eps2 + 4*eps1"};
        exchange.points = cocycle.points = S.triples.size();
        double mag = base_mag;
        for (const auto& p : S.triples) {
            const double x = p.x(), y = p.y(), z = p.z();
            const double a = H(Point3(x + y, 0.0, z));
            const double b = H(Point3(x, y, 0.0));
            const double c = H(Point3(y + z, 0.0, x));
            const double d = H(Point3(z, y, 0.0));
            mag = std::max({mag, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
            const double lhs_x = std::abs(a + b - c - d);
            const double rhs_x = entropy_defect_at(H, p) + entropy_defect_at(H, Point3(z, y, x)) + symmetry_defect_at(H, p);
            exchange.lhs = std::max(exchange.lhs, lhs_x);
            if (!tol.le(lhs_x, rhs_x, mag)) ++exchange.pointwise_failures;

            const double lhs_c = cocycle_defect_at(F, x, y, z);
            const double rhs_c = rhs_x + symmetry_defect_at(H, Point3(x + y, 0.0, z)) +
                                 symmetry_defect_at(H, Point3(y + z, 0.0, x)) +
                                 symmetry_defect_at(H, Point3(z, y, 0.0));
            cocycle.lhs = std::max(cocycle.lhs, lhs_c);
            if (!tol.le(lhs_c, rhs_c, mag)) ++cocycle.pointwise_failures;
        }
        exchange.rhs = 2.0 * e2 + e1;
        cocycle.rhs = 2.0 * e2 + 4.0 * e1;
        for (auto* l : {&exchange, &cocycle}) {
            l->magnitude = mag;
            l->pass = l->pointwise_failures == 0 && tol.le(l->lhs, l->rhs, mag);
            rep.lines.push_back(*l);
        }
    }

    // |F(x, y) - F(y, x)| <= eps1 with eps1 covering (x, y, 0).
    {
        InequalityLine face_sym{"face_symmetry", "eps1"};
        face_sym.points = pairs.size();
        double mag = base_mag;
        for (const auto& [x, y] : pairs) {
            const double a = F(x, y), b = F(y, x);
            mag = std::max({mag, std::abs(a), std::abs(b)});
            const double lhs = std::abs(a - b);
            face_sym.lhs = std::max(face_sym.lhs, lhs);
            if (!tol.le(lhs, symmetry_defect_at(H, Point3(x, y, 0.0)), mag)) ++face_sym.pointwise_failures;
        }
        face_sym.rhs = e1;
        face_sym.magnitude = mag;
        face_sym.pass = face_sym.pointwise_failures == 0 && tol.le(face_sym.lhs, face_sym.rhs, mag);
        rep.lines.push_back(face_sym);
    }

    {
        const auto skew = skew_bound_check(H, S, tol, exec);
        InequalityLine l{"skew", "4*eps2 + 9*eps1"};
        l.points = pairs.size();
        l.lhs = skew.lhs;
        l.rhs = skew.rhs;
        l.magnitude = skew.magnitude;
        l.pass = skew.pass;
        rep.lines.push_back(l);
    }

    double e3 = 0.0;
    if (alpha_zero) {
        // Referenced points: (2x, 2y) and (x, x) for every pair, and (1, 1).
        std::vector<double> scales = S.scale_factors;
        scales.push_back(2.0);
        std::vector<double> diag;
        std::vector<Point3> sym_pts = chain.symmetry;
        sym_pts.emplace_back(1.0, 1.0, 0.0);
        for (const auto& [x, y] : pairs) {
            diag.push_back(x);
            sym_pts.emplace_back(2.0 * x, 2.0 * y, 0.0);
            sym_pts.emplace_back(x, x, 0.0);
        }
        const std::vector<std::pair<double, double>> unit_pair{{1.0, 1.0}};
        const auto hom = sup_homogeneity(H, 0.0, pairs, scales, opts);
        const auto hom_diag = sup_homogeneity(H, 0.0, unit_pair, diag, opts);
        const auto sym27 = sup_symmetry(H, sym_pts, opts);
        e3 = std::max(hom.sup_estimate, hom_diag.sup_estimate);

        InequalityLine l{"constant_face", "4*eps3 + 12*eps2 + 24*eps1"};
        l.points = pairs.size();
        const double f11 = F(1.0, 1.0);
        double mag = std::max({base_mag, hom.max_abs_value, hom_diag.max_abs_value, sym27.max_abs_value});
        for (const auto& [x, y] : pairs) {
            const double v = F(x, y);
            mag = std::max(mag, std::abs(v));
            l.lhs = std::max(l.lhs, std::abs(v - f11));
        }
        l.rhs = 4.0 * e3 + 12.0 * e2 + 24.0 * sym27.sup_estimate;
        l.magnitude = mag;
        l.pass = tol.le(l.lhs, l.rhs, mag);
        rep.lines.push_back(l);
    }

    rep.eps_hat = EpsilonTriple(e1, e2, e3);
    return rep;
}

std::vector<CandidateResult> run_candidate_suite(const SampleSet& S, std::uint64_t seed, std::size_t per_regime,
                                                 double delta, const Tolerance& tol)
{
    std::vector<CandidateResult> out;
    std::mt19937_64 rng(mix64(seed));
    const std::array kinds{PerturbationKind::uniform_noise, PerturbationKind::smooth_bump,
                           PerturbationKind::oscillatory};

    auto run = [&](std::string label, const SolutionFamily& fam, std::size_t i, bool alpha_zero) {
        PerturbationSpec ps;
        ps.kind = kinds[i % kinds.size()];
        ps.amplitude = delta;
        ps.seed = mix64(seed ^ (0x1000 + out.size()));
        const auto H = perturb(fam, ps);
        out.push_back({std::move(label), alpha_zero, run_property_suite(H, S, alpha_zero, tol)});
    };

    for (std::size_t i = 0; i < per_regime; ++i) {
        const double c = -3.0 + 6.0 * unit(rng);
        double alpha = 0.0;
        while (std::abs(alpha) < 0.1 || std::abs(alpha - 1.0) < 0.1) alpha = -2.0 + 5.0 * unit(rng);
        run("power#" + std::to_string(i), SolutionFamily::power(c, alpha), i, false);
    }
    for (std::size_t i = 0; i < per_regime; ++i) {
        run("shannon#" + std::to_string(i), SolutionFamily::shannon(-3.0 + 6.0 * unit(rng)), i, false);
    }
    for (std::size_t i = 0; i < per_regime; ++i) {
        run("constant#" + std::to_string(i), SolutionFamily::constant(-3.0 + 6.0 * unit(rng)), i, true);
    }
    out.push_back({"projection", true, run_property_suite(projection_function(), S, true, tol)});
    return out;
}

} // namespace esl
