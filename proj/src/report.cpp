#include "esl/report.hpp"

#include <cmath>
#include <cstdio>

namespace esl {

namespace {

std::string format_double(double v)
{
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write(std::string& out, const json& j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [k, v] : j.items()) {
            if (!first) out += ",\n";
            first = false;
            out += inner + json(k).dump() + ": ";
            write(out, v, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ",\n";
            first = false;
            out += inner;
            write(out, v, indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
    }
}

json pair_json(double a, double b) { return json::array({a, b}); }

} // namespace

void to_json(json& j, const Point3& p) { j = json::array({p.x(), p.y(), p.z()}); }

void to_json(json& j, const SampleSpec& s)
{
    j = json{{"lo", s.lo},
             {"hi", s.hi},
             {"per_axis", s.per_axis},
             {"spacing", s.spacing == Spacing::log ? "log" : "linear"},
             {"t_lo", s.t_lo},
             {"t_hi", s.t_hi},
             {"t_count", s.t_count},
             {"monte_carlo", s.monte_carlo}};
}

void to_json(json& j, const SampleSet& s)
{
    j = json{{"seed", s.seed}, {"spec", s.spec}, {"triples", s.triples}, {"scale_factors", s.scale_factors}};
}

void to_json(json& j, const SolutionFamily& f)
{
    j = json{{"kind", to_string(f.kind())}};
    switch (f.kind()) {
    case SolutionFamily::Kind::power:
        j["c"] = f.coefficient();
        j["alpha"] = f.degree();
        break;
    case SolutionFamily::Kind::shannon: j["c"] = f.coefficient(); break;
    case SolutionFamily::Kind::constant: j["a"] = f.coefficient(); break;
    }
}

void to_json(json& j, const EpsilonTriple& e) { j = json{{"eps1", e.eps1()}, {"eps2", e.eps2()}, {"eps3", e.eps3()}}; }

void to_json(json& j, const DefectSite& s)
{
    j = json{{"point", s.point}};
    j["scale"] = s.scale;
}

void to_json(json& j, const DefectReport& r)
{
    j = json{{"kind", to_string(r.kind)},
             {"sup_estimate", r.sup_estimate},
             {"argmax", r.argmax},
             {"max_abs_value", r.max_abs_value},
             {"sites", r.sites}};
}

void to_json(json& j, const FitResult& r)
{
    j = json{{"family", r.family},
             {"metric", to_string(r.metric)},
             {"residual_sup", r.residual_sup},
             {"residual_l2", r.residual_l2},
             {"ls_coefficient", r.ls_coefficient},
             {"ls_residual_sup", r.ls_residual_sup},
             {"informative_points", r.informative_points}};
}

void to_json(json& j, const PerturbationSpec& p)
{
    j = json{{"kind", to_string(p.kind)}, {"amplitude", p.amplitude}, {"seed", p.seed}};
    if (p.kind == PerturbationKind::smooth_bump) {
        j["center"] = p.bump_center;
        j["width"] = p.bump_width;
    }
    if (p.kind == PerturbationKind::oscillatory) j["omega"] = p.omega;
}

void to_json(json& j, const EpsilonMeasurement& m)
{
    j = json{{"eps", m.eps}, {"symmetry", m.symmetry}, {"entropy", m.entropy}, {"homogeneity", m.homogeneity}};
}

void to_json(json& j, const VerificationReport& r)
{
    const auto& in = r.provenance;
    j = json{{"eps_hat", r.eps_hat},
             {"fit", r.fit},
             {"bound", r.bound},
             {"bound_form", in.alpha == 0.0 ? "8*eps3 + 25*eps2 + 49*eps1" : "eps1 + eps2"},
             {"ratio", r.ratio ? json(*r.ratio) : json(nullptr)},
             {"verdict", to_string(r.verdict)},
             {"provenance",
              {{"family", in.family},
               {"alpha", in.alpha},
               {"perturbation", in.perturbation},
               {"sample", in.sample},
               {"sample_seed", in.sample_seed},
               {"metric", to_string(in.metric)},
               {"atol", in.tol.atol},
               {"rtol", in.tol.rtol}}}};
}

void to_json(json& j, const InequalityLine& l)
{
    j = json{{"name", l.name},
             {"bound_form", l.bound_form},
             {"lhs", l.lhs},
             {"rhs", l.rhs},
             {"magnitude", l.magnitude},
             {"points", l.points},
             {"pointwise_failures", l.pointwise_failures},
             {"pass", l.pass}};
}

void to_json(json& j, const PropertySuiteReport& r)
{
    j = json{{"lines", r.lines}, {"eps_hat", r.eps_hat}, {"all_pass", r.all_pass()}};
}

void to_json(json& j, const HomogenizationResult& r)
{
    j = json{{"value", r.value}, {"t_values", r.t_values}, {"trace", r.trace}};
}

void to_json(json& j, const DecompositionResult& r)
{
    json table = json::object();
    for (std::size_t k = 0; k < r.potential.size(); ++k) {
        table[format_double(static_cast<double>(k + 1) * r.step)] = r.potential[k];
    }
    j = json{{"step", r.step}, {"potential", table}, {"residual_sup", r.residual_sup}};
}

void to_json(json& j, const SkewBoundReport& r)
{
    j = json{{"lhs", r.lhs},
             {"rhs", r.rhs},
             {"bound_form", "4*eps2 + 9*eps1"},
             {"eps_hat", r.eps_hat},
             {"magnitude", r.magnitude},
             {"argmax", pair_json(r.argmax.first, r.argmax.second)},
             {"pass", r.pass}};
}

std::string canonical_json(const json& j)
{
    std::string out;
    write(out, j, 0);
    out += '\n';
    return out;
}

json make_report(std::string_view command, json config_echo, json results, std::optional<double> timing_ms)
{
    return json{{"tool_version", kToolVersion},
                {"command", command},
                {"config_echo", std::move(config_echo)},
                {"results", std::move(results)},
                {"semantics_note", kSemanticsNote},
                {"timing_ms", timing_ms ? json(*timing_ms) : json(nullptr)}};
}

std::vector<CsvRow> csv_rows(const DefectReport& r)
{
    std::vector<CsvRow> rows;
    rows.reserve(r.residuals.size());
    for (const auto& res : r.residuals) {
        CsvRow row{res.site.point, to_string(r.kind), res.value};
        if (r.kind == DefectKind::homogeneity) row.point[2] = res.site.scale;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_residual_csv(std::ostream& os, std::span<const CsvRow> rows)
{
    os << "x,y,z,kind,residual\n";
    for (const auto& r : rows) {
        os << format_double(r.point[0]) << ',' << format_double(r.point[1]) << ',' << format_double(r.point[2]) << ','
           << r.kind << ',' << format_double(r.residual) << '\n';
    }
}

} // namespace esl
