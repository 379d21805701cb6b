#include "esl/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace esl::cli {

namespace {

json sample_summary(const SampleSet& S)
{
    return json{{"seed", S.seed}, {"spec", S.spec}, {"triples", S.triples.size()}, {"scale_factors", S.scale_factors}};
}

void append(std::vector<CsvRow>& rows, const DefectReport& r)
{
    auto more = csv_rows(r);
    rows.insert(rows.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<CsvRow> fit_rows(const TernaryFunction& H, const SolutionFamily& fitted, const SampleSet& S)
{
    std::vector<CsvRow> rows;
    rows.reserve(S.triples.size());
    for (const auto& p : S.triples) rows.push_back({p.coords(), "fit", std::abs(H(p) - fitted(p))});
    return rows;
}

Outcome run_defects(const RunConfig& cfg, bool keep)
{
    const auto H = function_from(cfg);
    const auto S = sample_from(cfg);
    const DefectOptions opts{keep, Execution::parallel};
    const auto m = measure_epsilons(H, cfg.alpha, S, opts);
    const auto cocycle = sup_defect(DefectKind::cocycle, H, S, std::nullopt, opts);

    Outcome o;
    o.results = json{{"eps_hat", m.eps},
                     {"alpha", cfg.alpha},
                     {"symmetry", m.symmetry},
                     {"entropy", m.entropy},
                     {"homogeneity", m.homogeneity},
                     {"cocycle", cocycle},
                     {"sample", sample_summary(S)}};
    if (keep) {
        for (const auto* r : {&m.symmetry, &m.entropy, &m.homogeneity, &cocycle}) append(o.csv, *r);
    }
    return o;
}

Outcome run_fit(const RunConfig& cfg, bool keep)
{
    const auto H = function_from(cfg);
    const auto S = sample_from(cfg);
    const auto r = fit(H, cfg.alpha, S, {cfg.metric, Execution::parallel});
    Outcome o;
    o.results = json{{"alpha", cfg.alpha}, {"fit", r}, {"sample", sample_summary(S)}};
    if (keep) o.csv = fit_rows(H, r.family, S);
    return o;
}

Outcome run_verify(const RunConfig& cfg, bool keep)
{
    if (!cfg.table.empty()) throw ConfigError("verify builds H from a solution family; input.table is not accepted");
    VerificationInput in;
    in.family = family_from(cfg);
    in.alpha = cfg.alpha;
    try {
        check_regime(in.family, in.alpha);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    in.perturbation = cfg.perturbation;
    in.perturbation.seed = cfg.seed;
    in.sample = cfg.sample;
    in.sample_seed = cfg.seed;
    in.metric = cfg.metric;
    in.tol = cfg.tol;
    try {
        validate(in.perturbation);
        (void)make_sample_set(in.sample, in.sample_seed);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }

    const auto r = verify_theorem(in);
    Outcome o;
    o.results = r;
    o.exit_code = r.verdict == Verdict::within_bound ? ok : exceeds_bound;
    if (keep) {
        // The report keeps no residuals; recompute them for the dump.
        const auto S = make_sample_set(in.sample, in.sample_seed);
        const auto H = perturb(in.family, in.perturbation);
        const auto m = measure_epsilons(H, in.alpha, S, {true, Execution::parallel});
        for (const auto* d : {&m.symmetry, &m.entropy, &m.homogeneity}) append(o.csv, *d);
        auto fr = fit_rows(H, r.fit.family, S);
        o.csv.insert(o.csv.end(), fr.begin(), fr.end());
    }
    return o;
}

Outcome run_proofchain(const RunConfig& cfg)
{
    const auto H = function_from(cfg);
    const auto F = restrict_to_F(H);
    const auto& pc = cfg.proofchain;
    const bool all = pc.step == "all";
    json res = json::object();
    res["step"] = pc.step;
    res["point"] = json::array({pc.x, pc.y});

    if (all || pc.step == "homogenize") {
        if (cfg.alpha == 0.0 && all) {
            res["homogenize"] = json{{"skipped", "alpha = 0 has no homogenization limit"}};
        } else {
            const auto sched = HomogenizationSchedule::geometric(cfg.alpha, pc.schedule_steps, pc.schedule_base);
            const auto h = homogenize(F, sched, pc.x, pc.y);
            json j = h;
            j["direction"] = sched.direction() == HomogenizationSchedule::Direction::to_infinity ? "to_infinity" : "to_zero";
            j["reference"] = F(pc.x, pc.y);
            res["homogenize"] = j;
        }
    }
    if (all || pc.step == "skew") {
        const auto S = sample_from(cfg);
        json j = skew_bound_check(H, S, cfg.tol);
        j["skew_at_point"] = skew_part(F)(pc.x, pc.y);
        res["skew"] = j;
    }
    if (all || pc.step == "potential") {
        res["potential"] = reconstruct_potential(F, pc.h, pc.n);
    }
    if (all || pc.step == "average") {
        const double psi = average_correct_cocycle(F, pc.window, pc.m, pc.x, pc.y);
        const double f = F(pc.x, pc.y);
        res["average"] = json{{"window", pc.window}, {"m", pc.m}, {"psi_hat", psi}, {"f", f}, {"difference", psi - f}};
    }
    if (all || pc.step == "property_suite") {
        const auto S = sample_from(cfg);
        const bool alpha_zero = cfg.alpha == 0.0 || cfg.family.kind == "projection";
        res["property_suite"] = run_property_suite(H, S, alpha_zero, cfg.tol);
    }
    Outcome o;
    o.results = std::move(res);
    return o;
}

} // namespace

Outcome execute(std::string_view command, const RunConfig& cfg, bool keep_residuals)
{
    if (command == "defects") return run_defects(cfg, keep_residuals);
    if (command == "fit") return run_fit(cfg, keep_residuals);
    if (command == "verify") return run_verify(cfg, keep_residuals);
    if (command == "proofchain") return run_proofchain(cfg);
    throw ConfigError("unknown command '" + std::string(command) + "'");
}

Rendered render(std::string_view command, const RunConfig& cfg)
{
    Rendered r;
    try {
        auto o = execute(command, cfg);
        r.exit_code = o.exit_code;
        r.report = canonical_json(make_report(command, config_echo(cfg), std::move(o.results)));
    } catch (const ConfigError& e) {
        r.exit_code = config_error;
        r.error = e.what();
    } catch (const Error& e) {
        r.exit_code = numeric_error;
        r.error = e.what();
    }
    return r;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Entropy-equation stability laboratory"};
    app.require_subcommand(1);
    std::string config_path, out_path, csv_path;
    bool quiet = false, timing = false;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"defects", "Measure the symmetry, entropy, homogeneity and cocycle defects of H"},
        {"fit", "Project H onto the solution family of the declared degree"},
        {"verify", "Perturb an exact solution and check the stability bound"},
        {"proofchain", "Run the constructive steps of the stability proof"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Run configuration (key = value)");
        sub->add_option("--out", out_path, "Write the JSON report here instead of stdout");
        sub->add_option("--csv", csv_path, "Write per-point residuals as CSV");
        sub->add_flag("--quiet", quiet, "No summary line on stdout");
        sub->add_flag("--timing", timing, "Record wall time in timing_ms");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        apply_env_overrides(cfg);

        const auto t0 = std::chrono::steady_clock::now();
        auto o = execute(command, cfg, !csv_path.empty());
        const auto t1 = std::chrono::steady_clock::now();
        std::optional<double> ms;
        if (timing) ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        const std::string text = canonical_json(make_report(command, config_echo(cfg), o.results, ms));
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write report '" + out_path + "'");
            f << text;
            if (!quiet) out << command << ": exit " << o.exit_code << ", report written to " << out_path << '\n';
        }
        if (!csv_path.empty()) {
            std::ofstream f(csv_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write csv '" + csv_path + "'");
            write_residual_csv(f, o.csv);
        }
        return o.exit_code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const Error& e) {
        err << "numeric error: " << e.what() << '\n';
        return numeric_error;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << '\n';
        return numeric_error;
    }
}

} // namespace esl::cli
