#include "esl/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace esl {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view v)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("expected a number, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_u64(std::string_view v)
{
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("expected a nonnegative integer, got '" + std::string(v) + "'");
    }
    return out;
}

std::size_t to_size(std::string_view v) { return static_cast<std::size_t>(to_u64(v)); }

std::string one_of(std::string_view v, std::initializer_list<std::string_view> allowed)
{
    for (auto a : allowed) {
        if (v == a) return std::string(v);
    }
    std::string msg = "value '" + std::string(v) + "' is not one of:";
    for (auto a : allowed) msg += " " + std::string(a);
    throw ConfigError(msg);
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table{
        {"seed", [](RunConfig& c, std::string_view v) { c.seed = to_u64(v); }},
        {"alpha", [](RunConfig& c, std::string_view v) { c.alpha = to_double(v); }},
        {"family.kind",
         [](RunConfig& c, std::string_view v) { c.family.kind = one_of(v, {"power", "shannon", "constant", "projection"}); }},
        {"family.c", [](RunConfig& c, std::string_view v) { c.family.c = to_double(v); }},
        {"family.a", [](RunConfig& c, std::string_view v) { c.family.a = to_double(v); }},
        {"perturbation.kind",
         [](RunConfig& c, std::string_view v) {
             const auto k = one_of(v, {"uniform_noise", "smooth_bump", "oscillatory"});
             c.perturbation.kind = k == "uniform_noise" ? PerturbationKind::uniform_noise
                                   : k == "smooth_bump" ? PerturbationKind::smooth_bump
                                                        : PerturbationKind::oscillatory;
         }},
        {"perturbation.amplitude", [](RunConfig& c, std::string_view v) { c.perturbation.amplitude = to_double(v); }},
        {"perturbation.omega", [](RunConfig& c, std::string_view v) { c.perturbation.omega = to_double(v); }},
        {"perturbation.width", [](RunConfig& c, std::string_view v) { c.perturbation.bump_width = to_double(v); }},
        {"perturbation.center",
         [](RunConfig& c, std::string_view v) {
             std::array<double, 3> ctr{};
             std::size_t i = 0;
             while (true) {
                 const auto comma = v.find(',');
                 if (i == 3) throw ConfigError("perturbation.center needs exactly three components");
                 ctr[i++] = to_double(trim(v.substr(0, comma)));
                 if (comma == std::string_view::npos) break;
                 v.remove_prefix(comma + 1);
             }
             if (i != 3) throw ConfigError("perturbation.center needs exactly three components");
             c.perturbation.bump_center = ctr;
         }},
        {"sample.lo", [](RunConfig& c, std::string_view v) { c.sample.lo = to_double(v); }},
        {"sample.hi", [](RunConfig& c, std::string_view v) { c.sample.hi = to_double(v); }},
        {"sample.per_axis", [](RunConfig& c, std::string_view v) { c.sample.per_axis = to_size(v); }},
        {"sample.spacing",
         [](RunConfig& c, std::string_view v) {
             c.sample.spacing = one_of(v, {"log", "linear"}) == "log" ? Spacing::log : Spacing::linear;
         }},
        {"sample.t_lo", [](RunConfig& c, std::string_view v) { c.sample.t_lo = to_double(v); }},
        {"sample.t_hi", [](RunConfig& c, std::string_view v) { c.sample.t_hi = to_double(v); }},
        {"sample.t_count", [](RunConfig& c, std::string_view v) { c.sample.t_count = to_size(v); }},
        {"sample.monte_carlo", [](RunConfig& c, std::string_view v) { c.sample.monte_carlo = to_size(v); }},
        {"input.table", [](RunConfig& c, std::string_view v) { c.table = std::string(v); }},
        {"fit.metric",
         [](RunConfig& c, std::string_view v) {
             c.metric = one_of(v, {"sup_norm", "least_squares"}) == "sup_norm" ? FitMetric::sup_norm
                                                                               : FitMetric::least_squares;
         }},
        {"tolerance.atol", [](RunConfig& c, std::string_view v) { c.tol.atol = to_double(v); }},
        {"tolerance.rtol", [](RunConfig& c, std::string_view v) { c.tol.rtol = to_double(v); }},
        {"proofchain.step",
         [](RunConfig& c, std::string_view v) {
             c.proofchain.step = one_of(v, {"homogenize", "skew", "potential", "average", "property_suite", "all"});
         }},
        {"proofchain.x", [](RunConfig& c, std::string_view v) { c.proofchain.x = to_double(v); }},
        {"proofchain.y", [](RunConfig& c, std::string_view v) { c.proofchain.y = to_double(v); }},
        {"proofchain.schedule_steps", [](RunConfig& c, std::string_view v) { c.proofchain.schedule_steps = to_size(v); }},
        {"proofchain.schedule_base", [](RunConfig& c, std::string_view v) { c.proofchain.schedule_base = to_double(v); }},
        {"proofchain.h", [](RunConfig& c, std::string_view v) { c.proofchain.h = to_double(v); }},
        {"proofchain.n", [](RunConfig& c, std::string_view v) { c.proofchain.n = to_size(v); }},
        {"proofchain.window", [](RunConfig& c, std::string_view v) { c.proofchain.window = to_double(v); }},
        {"proofchain.m", [](RunConfig& c, std::string_view v) { c.proofchain.m = to_size(v); }},
    };
    return table;
}

} // namespace

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::set<std::string, std::less<>> seen;
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++lineno;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto where = "line " + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second) throw ConfigError(where + "repeated key '" + std::string(key) + "'");
        if (value.empty()) throw ConfigError(where + "empty value for '" + std::string(key) + "'");
        try {
            it->second(cfg, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + std::string(key) + ": " + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_env_overrides(RunConfig& cfg)
{
    if (const char* s = std::getenv("ESL_SEED"); s != nullptr && *s != '\0') {
        try {
            cfg.seed = to_u64(trim(s));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("ESL_SEED: ") + e.what());
        }
    }
}

nlohmann::json config_echo(const RunConfig& cfg)
{
    using nlohmann::json;
    const auto& p = cfg.perturbation;
    const auto& pc = cfg.proofchain;
    return json{
        {"seed", cfg.seed},
        {"alpha", cfg.alpha},
        {"family", {{"kind", cfg.family.kind}, {"c", cfg.family.c}, {"a", cfg.family.a}}},
        {"perturbation",
         {{"kind", to_string(p.kind)},
          {"amplitude", p.amplitude},
          {"omega", p.omega},
          {"width", p.bump_width},
          {"center", p.bump_center}}},
        {"sample",
         {{"lo", cfg.sample.lo},
          {"hi", cfg.sample.hi},
          {"per_axis", cfg.sample.per_axis},
          {"spacing", cfg.sample.spacing == Spacing::log ? "log" : "linear"},
          {"t_lo", cfg.sample.t_lo},
          {"t_hi", cfg.sample.t_hi},
          {"t_count", cfg.sample.t_count},
          {"monte_carlo", cfg.sample.monte_carlo}}},
        {"input", {{"table", cfg.table}}},
        {"fit", {{"metric", to_string(cfg.metric)}}},
        {"tolerance", {{"atol", cfg.tol.atol}, {"rtol", cfg.tol.rtol}}},
        {"proofchain",
         {{"step", pc.step},
          {"x", pc.x},
          {"y", pc.y},
          {"schedule_steps", pc.schedule_steps},
          {"schedule_base", pc.schedule_base},
          {"h", pc.h},
          {"n", pc.n},
          {"window", pc.window},
          {"m", pc.m}}},
    };
}

SolutionFamily family_from(const RunConfig& cfg)
{
    try {
        if (cfg.family.kind == "power") return SolutionFamily::power(cfg.family.c, cfg.alpha);
        if (cfg.family.kind == "shannon") return SolutionFamily::shannon(cfg.family.c);
        if (cfg.family.kind == "constant") return SolutionFamily::constant(cfg.family.a);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("family: ") + e.what());
    }
    throw ConfigError("family.kind '" + cfg.family.kind + "' does not name a solution family");
}

TernaryFunction function_from(const RunConfig& cfg)
{
    if (!cfg.table.empty()) {
        try {
            return TernaryFunction::tabulated(read_table(cfg.table));
        } catch (const DomainError& e) {
            throw ConfigError(std::string("table: ") + e.what());
        }
    }
    if (cfg.family.kind == "projection") return projection_function();
    PerturbationSpec ps = cfg.perturbation;
    ps.seed = cfg.seed;
    try {
        validate(ps);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("perturbation: ") + e.what());
    }
    return perturb(family_from(cfg), ps);
}

std::vector<std::pair<Point3, double>> read_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read table '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "x,y,z,h") throw ConfigError("table header must be 'x,y,z,h'");
    std::vector<std::pair<Point3, double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view rest = trim(line);
        if (rest.empty()) continue;
        std::array<double, 4> v{};
        for (std::size_t i = 0; i < 4; ++i) {
            const auto comma = rest.find(',');
            if ((i < 3) == (comma == std::string_view::npos)) {
                throw ConfigError("table line " + std::to_string(lineno) + ": expected four columns");
            }
            try {
                v[i] = to_double(trim(rest.substr(0, comma)));
            } catch (const ConfigError& e) {
                throw ConfigError("table line " + std::to_string(lineno) + ": " + e.what());
            }
            if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
        }
        try {
            rows.emplace_back(Point3(v[0], v[1], v[2]), v[3]);
        } catch (const DomainError& e) {
            throw ConfigError("table line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rows;
}

SampleSet sample_from(const RunConfig& cfg)
{
    try {
        if (cfg.table.empty()) return make_sample_set(cfg.sample, cfg.seed);
        SampleSpec scales_only = cfg.sample;
        scales_only.per_axis = 1;
        scales_only.monte_carlo = 0;
        auto s = make_sample_set(scales_only, cfg.seed);
        s.spec = cfg.sample;
        s.triples.clear();
        for (const auto& [p, h] : read_table(cfg.table)) {
            if (p.interior()) s.triples.push_back(p);
        }
        if (s.triples.empty()) throw ConfigError("table has no interior rows");
        return s;
    } catch (const DomainError& e) {
        throw ConfigError(std::string("sample: ") + e.what());
    }
}

} // namespace esl
