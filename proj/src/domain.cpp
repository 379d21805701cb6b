#include "esl/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace esl {

namespace {

// Coordinates in ascending order. Every closed-form evaluation goes through
// this so that permuted arguments produce bit-identical results.
std::array<double, 3> sorted(const Point3& p)
{
    std::array<double, 3> v = p.coords();
    if (v[0] > v[1]) std::swap(v[0], v[1]);
    if (v[1] > v[2]) std::swap(v[1], v[2]);
    if (v[0] > v[1]) std::swap(v[0], v[1]);
    return v;
}

double power_term(double v, double alpha) { return v == 0.0 ? 0.0 : std::pow(v, alpha); }

double xlogx(double v) { return v == 0.0 ? 0.0 : v * std::log(v); }

} // namespace

Point3::Point3(double x, double y, double z) : c_{x, y, z}
{
    for (double v : c_) {
        if (!std::isfinite(v) || v < 0.0) throw DomainError("point " + to_string(*this) + " has a negative or non-finite coordinate");
    }
    if (!(x + y + z > 0.0)) throw DomainError("point " + to_string(*this) + " has zero coordinate sum");
}

std::string to_string(const Point3& p)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", p.x(), p.y(), p.z());
    return buf;
}

Permutation3::Permutation3(std::array<std::uint8_t, 3> slots) : slots_(slots)
{
    auto s = slots;
    std::sort(s.begin(), s.end());
    if (s != std::array<std::uint8_t, 3>{0, 1, 2}) throw DomainError("not a permutation of three slots");
}

const std::array<Permutation3, 6>& Permutation3::all()
{
    static const std::array<Permutation3, 6> perms{
        Permutation3({0, 1, 2}), Permutation3({0, 2, 1}), Permutation3({1, 0, 2}),
        Permutation3({1, 2, 0}), Permutation3({2, 0, 1}), Permutation3({2, 1, 0}),
    };
    return perms;
}

Point3 Permutation3::apply(const Point3& p) const
{
    return Point3(p[slots_[0]], p[slots_[1]], p[slots_[2]]);
}

Permutation3 Permutation3::then(const Permutation3& next) const
{
    // next.apply(this->apply(p))[i] = this->apply(p)[next[i]] = p[this[next[i]]]
    return Permutation3({slots_[next.slots_[0]], slots_[next.slots_[1]], slots_[next.slots_[2]]});
}

double power_basis(double alpha, const Point3& p)
{
    const auto v = sorted(p);
    const double s = (v[0] + v[1]) + v[2];
    return ((power_term(s, alpha) - power_term(v[2], alpha)) - power_term(v[1], alpha)) - power_term(v[0], alpha);
}

double shannon_basis(const Point3& p)
{
    const auto v = sorted(p);
    const double s = (v[0] + v[1]) + v[2];
    return ((xlogx(s) - xlogx(v[2])) - xlogx(v[1])) - xlogx(v[0]);
}

SolutionFamily SolutionFamily::power(double c, double alpha)
{
    if (!std::isfinite(c) || !std::isfinite(alpha)) throw DomainError("power family parameters must be finite");
    if (alpha == 1.0) {
        throw DomainError("power family with alpha = 1 is excluded: its basis vanishes identically, use the shannon family");
    }
    return {Kind::power, c, alpha};
}

SolutionFamily SolutionFamily::shannon(double c)
{
    if (!std::isfinite(c)) throw DomainError("shannon coefficient must be finite");
    return {Kind::shannon, c, 1.0};
}

SolutionFamily SolutionFamily::constant(double a)
{
    if (!std::isfinite(a)) throw DomainError("constant must be finite");
    return {Kind::constant, a, 0.0};
}

double SolutionFamily::basis(const Point3& p) const
{
    switch (kind_) {
    case Kind::power: return power_basis(alpha_, p);
    case Kind::shannon: return shannon_basis(p);
    case Kind::constant: return 1.0;
    }
    return 0.0;
}

double SolutionFamily::operator()(const Point3& p) const
{
    if (kind_ == Kind::constant) return coef_;
    return coef_ * basis(p);
}

SolutionFamily SolutionFamily::with_coefficient(double c) const
{
    switch (kind_) {
    case Kind::power: return power(c, alpha_);
    case Kind::shannon: return shannon(c);
    case Kind::constant: return constant(c);
    }
    return *this;
}

std::string to_string(SolutionFamily::Kind k)
{
    switch (k) {
    case SolutionFamily::Kind::power: return "power";
    case SolutionFamily::Kind::shannon: return "shannon";
    case SolutionFamily::Kind::constant: return "constant";
    }
    return "?";
}

bool check_derivation(const std::function<double(double)>& phi,
                      std::span<const std::pair<double, double>> pairs, double tol)
{
    if (!(tol > 0.0)) throw DomainError("derivation tolerance must be positive");
    for (const auto& [x, y] : pairs) {
        if (!(x > 0.0) || !(y > 0.0)) throw DomainError("derivation check needs positive arguments");
        const double lhs = phi(x * y);
        const double rhs = x * phi(y) + y * phi(x);
        if (!(std::abs(lhs - rhs) <= tol * (1.0 + std::abs(lhs)))) return false;
    }
    return true;
}

bool check_derivation(double c, std::span<const std::pair<double, double>> pairs, double tol)
{
    return check_derivation([c](double v) { return c * v * std::log(v); }, pairs, tol);
}

EpsilonTriple::EpsilonTriple(double eps1, double eps2, double eps3) : e_{eps1, eps2, eps3}
{
    for (double e : e_) {
        if (!std::isfinite(e) || e < 0.0) throw DomainError("epsilon components must be finite and nonnegative");
    }
}

namespace {

std::vector<double> axis(double lo, double hi, std::size_t n, Spacing spacing)
{
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n - 1);
        v[i] = spacing == Spacing::log ? std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)))
                                       : lo + u * (hi - lo);
    }
    v.front() = lo;
    v.back() = hi;
    return v;
}

// Portable uniform in [0, 1): the top 53 bits of the engine output.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

} // namespace

SampleSet make_sample_set(const SampleSpec& spec, std::uint64_t seed)
{
    if (!(spec.lo > 0.0) || !(spec.hi >= spec.lo) || !std::isfinite(spec.hi)) {
        throw DomainError("sample bounds must satisfy 0 < lo <= hi < inf");
    }
    if (!(spec.t_lo > 0.0) || !(spec.t_hi >= spec.t_lo) || !std::isfinite(spec.t_hi)) {
        throw DomainError("scale bounds must satisfy 0 < t_lo <= t_hi < inf");
    }
    if (spec.t_count < 1) throw DomainError("at least one scale factor is required");

    SampleSet s;
    s.seed = seed;
    s.spec = spec;

    if (spec.per_axis > 0) {
        const auto ax = axis(spec.lo, spec.hi, spec.per_axis, spec.spacing);
        s.triples.reserve(ax.size() * ax.size() * ax.size() + spec.monte_carlo);
        for (double x : ax)
            for (double y : ax)
                for (double z : ax) s.triples.emplace_back(x, y, z);
    }

    std::mt19937_64 rng(seed);
    const double llo = std::log(spec.lo), lhi = std::log(spec.hi);
    auto draw = [&] {
        const double u = unit(rng);
        return spec.spacing == Spacing::log ? std::exp(llo + u * (lhi - llo)) : spec.lo + u * (spec.hi - spec.lo);
    };
    for (std::size_t i = 0; i < spec.monte_carlo; ++i) {
        const double x = draw();
        const double y = draw();
        const double z = draw();
        s.triples.emplace_back(x, y, z);
    }
    if (s.triples.empty()) throw DomainError("sample settings produce no triples");

    s.scale_factors = axis(spec.t_lo, spec.t_hi, spec.t_count, Spacing::log);
    return s;
}

std::vector<std::pair<double, double>> projected_pairs(std::span<const Point3> triples)
{
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(triples.size());
    for (const auto& p : triples) pairs.emplace_back(p.x(), p.y());
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

TernaryFunction TernaryFunction::from_solution(const SolutionFamily& fam)
{
    return TernaryFunction([fam](const Point3& p) { return fam(p); }, Representation::closed_form);
}

TernaryFunction TernaryFunction::tabulated(std::vector<std::pair<Point3, double>> rows)
{
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first) throw DomainError("duplicate tabulated point " + to_string(rows[i].first));
    }
    auto table = std::make_shared<const std::vector<std::pair<Point3, double>>>(std::move(rows));
    return TernaryFunction(
        [table](const Point3& p) {
            auto it = std::lower_bound(table->begin(), table->end(), p,
                                       [](const auto& row, const Point3& q) { return row.first < q; });
            if (it == table->end() || !(it->first == p)) {
                throw NumericError("point " + to_string(p) + " is not tabulated");
            }
            return it->second;
        },
        Representation::tabulated);
}

} // namespace esl
