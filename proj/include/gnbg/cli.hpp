#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gnbg/classify.hpp"
#include "gnbg/generators.hpp"
#include "gnbg/harness.hpp"
#include "gnbg/io.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
// validation error.

namespace gnbg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;

/// GNBG_SEED if set and numeric, else 0.
inline std::uint64_t default_seed() {
    const char* s = std::getenv("GNBG_SEED");
    if (!s || !*s) return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw InvalidArgument("GNBG_SEED must be a non-negative integer");
    return v;
}

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags that pick and shape an instance: --instance FILE, --suite ID or
// --scenario KIND with its knobs.
struct SourceOptions {
    std::string instance_file;
    int suite_id = 0;
    std::string scenario;
    ScenarioSpec spec;
    double angle = 0.0;
    CLI::Option* angle_opt = nullptr;
    std::uint64_t seed = 0;

    void add(CLI::App& app, bool allow_file = true) {
        if (allow_file) app.add_option("--instance", instance_file, "Instance JSON file")->check(CLI::ExistingFile);
        app.add_option("--suite", suite_id, "Suite instance id (1-24)")->check(CLI::Range(1, suite_size));
        app.add_option("--scenario", scenario,
                       "Scenario kind")
            ->check(CLI::IsMember({"linearity", "conditioning", "interaction", "multimodal", "multicomponent"}));
        app.add_option("--seed", seed, "Instance seed (default: GNBG_SEED or 0)");
        app.add_option("--dim", spec.cfg.dim, "Dimension")->capture_default_str();
        app.add_option("--lower", spec.cfg.lower, "Lower bound (every coordinate)")->capture_default_str();
        app.add_option("--upper", spec.cfg.upper, "Upper bound (every coordinate)")->capture_default_str();
        app.add_option("--lambda", spec.lambda, "Basin exponent")->capture_default_str();
        app.add_option("--cond", spec.cond, "Condition number of H")->capture_default_str();
        app.add_option("--alpha", spec.alpha, "Beta shape (alpha = beta) for H")->capture_default_str();
        app.add_option("--p", spec.interaction.p_prob, "Pair interaction probability")->capture_default_str();
        angle_opt = app.add_option("--angle", angle, "Rotate every pair by this angle (radians)");
        app.add_option("--mu", spec.mu, "Transform amplitude")->capture_default_str();
        app.add_option("--omega", spec.omega, "Transform frequency")->capture_default_str();
        app.add_option("--o", spec.components, "Number of components")->capture_default_str();
        app.add_option("--center-lo", spec.ranges.center_lo)->capture_default_str();
        app.add_option("--center-hi", spec.ranges.center_hi)->capture_default_str();
        app.add_option("--sigma-lo", spec.ranges.sigma_lo)->capture_default_str();
        app.add_option("--sigma-hi", spec.ranges.sigma_hi)->capture_default_str();
        app.add_option("--h-lo", spec.ranges.h_lo)->capture_default_str();
        app.add_option("--h-hi", spec.ranges.h_hi)->capture_default_str();
    }

    void resolve_seed(const CLI::App& app) {
        if (app.count("--seed") == 0) seed = default_seed();
    }

    InstanceSource source(const CLI::App& app) {
        resolve_seed(app);
        const int n = (!instance_file.empty()) + (suite_id != 0) + (!scenario.empty());
        if (n != 1) throw UsageError("give exactly one of --instance, --suite or --scenario");
        if (!instance_file.empty()) return load_instance(instance_file);
        if (suite_id) return SuiteSource{suite_id, seed};
        ScenarioSpec s = spec;
        s.kind = scenario_kind_from_string(scenario);
        s.cfg.seed = seed;
        if (angle_opt && angle_opt->count()) s.interaction.fixed_angle = angle;
        return s;
    }

    ProblemInstance build(const CLI::App& app) { return build_instance(source(app)); }
};

struct OptimizerOptions {
    std::string kind = "de";
    OptimizerConfig cfg;
    int runs = 31;
    std::int64_t budget = 500000;
    std::vector<std::int64_t> milestones;
    double threshold = 1e-8;
    std::uint64_t base_seed = 0;
    unsigned workers = 0;
    std::string csv_out, json_out;

    void add(CLI::App& app) {
        app.add_option("--optimizer", kind, "ps, pso or de")
            ->capture_default_str()
            ->check(CLI::IsMember({"ps", "pso", "de"}));
        app.add_option("--runs", runs)->capture_default_str()->check(CLI::PositiveNumber);
        app.add_option("--budget", budget)->capture_default_str()->check(CLI::PositiveNumber);
        app.add_option("--milestones", milestones, "Comma-separated FE milestones")->delimiter(',');
        app.add_option("--threshold", threshold)->capture_default_str();
        app.add_option("--base-seed", base_seed, "Run i uses optimizer seed base-seed + i");
        app.add_option("--workers", workers, "Parallel runs (0 = hardware threads)")->capture_default_str();
        app.add_option("--population", cfg.population)->capture_default_str();
        app.add_option("--ps-mesh", cfg.ps.initial_mesh_fraction)->capture_default_str();
        app.add_option("--ps-expand", cfg.ps.expand)->capture_default_str();
        app.add_option("--ps-contract", cfg.ps.contract)->capture_default_str();
        app.add_option("--pso-c1", cfg.pso.c1)->capture_default_str();
        app.add_option("--pso-c2", cfg.pso.c2)->capture_default_str();
        app.add_option("--pso-chi", cfg.pso.chi)->capture_default_str();
        app.add_option("--de-f", cfg.de.F)->capture_default_str();
        app.add_option("--de-cr", cfg.de.Cr)->capture_default_str();
        app.add_option("--csv", csv_out, "Write the CSV report here (default: stdout)");
        app.add_option("--json", json_out, "Write the JSON report here");
    }

    ExperimentSpec spec(const CLI::App& app, InstanceSource src) const {
        ExperimentSpec s;
        s.source = std::move(src);
        s.optimizer = cfg;
        s.optimizer.kind = optimizer_kind_from_string(kind);
        s.runs = runs;
        s.budget = budget;
        s.threshold = threshold;
        s.base_seed = app.count("--base-seed") ? base_seed : default_seed();
        s.workers = workers;
        if (!milestones.empty()) {
            s.milestones = milestones;
        } else {
            // Standard milestones that fit, closed by the budget itself.
            s.milestones.clear();
            for (std::int64_t m : {100000, 250000, 500000})
                if (m <= budget) s.milestones.push_back(m);
            if (s.milestones.empty() || s.milestones.back() != budget) s.milestones.push_back(budget);
        }
        return s;
    }
};

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError(path, "cannot open for writing");
    f << text;
}

inline void emit_reports(const OptimizerOptions& oo, const ExperimentSpec& spec,
                         const std::vector<ExperimentReport>& reports, const std::string& knob, std::ostream& out) {
    std::ostringstream csv;
    write_csv(csv, reports);
    if (!oo.json_out.empty()) write_text(oo.json_out, experiment_to_json(spec, reports, knob).dump(2) + "\n", out);
    if (!oo.csv_out.empty()) write_text(oo.csv_out, csv.str(), out);
    else if (oo.json_out != "-") out << csv.str();
}

// Points: a JSON array (one point) or array of arrays, or plain text with
// one point per line, coordinates separated by spaces or commas.
inline std::vector<std::vector<double>> read_points(const std::string& text) {
    std::vector<std::vector<double>> pts;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ParseError("points", e.what());
        }
        if (j.is_array() && !j.empty() && j[0].is_array()) {
            for (std::size_t k = 0; k < j.size(); ++k)
                pts.push_back(gnbg::detail::numbers(j[k], "points[" + std::to_string(k) + "]"));
        } else {
            pts.push_back(gnbg::detail::numbers(j, "points"));
        }
        return pts;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        std::vector<double> p;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                p.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("points", "not a number: '" + tok + "'");
            }
        }
        if (!p.empty()) pts.push_back(std::move(p));
    }
    return pts;
}

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

inline std::vector<Check> verify_instance(const ProblemInstance& inst) {
    std::vector<Check> checks;
    double worst = 0.0;
    for (const auto& c : inst.components()) worst = std::max(worst, orthogonality_defect(c.rotation().matrix()));
    checks.push_back({"rotation_orthogonality", worst <= 1e-10, "max |R^T R - I| = " + format_double(worst)});

    const auto dom = dominated_components(inst);
    const bool opt_dominated =
        std::find(dom.begin(), dom.end(), inst.optimum_component()) != dom.end();
    checks.push_back({"optimum_non_dominated", !opt_dominated,
                      std::to_string(dom.size()) + " dominated component(s)"});

    const double gap = inst(inst.optimum_position()) - inst.optimum_value();
    checks.push_back({"optimum_exact", std::abs(gap) <= 1e-9, "f(optimum) - optimum_value = " + format_double(gap)});

    const auto back = parse_instance(serialize_instance(inst));
    auto rng = Rng::stream(0, "verify/probes");
    double worst_rel = 0.0;
    std::vector<double> x(inst.dim());
    for (int k = 0; k < 100; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(inst.lower()[i], inst.upper()[i]);
        const double a = inst(x), b = back(x);
        worst_rel = std::max(worst_rel, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    checks.push_back({"round_trip", worst_rel <= 1e-15, "max relative difference = " + format_double(worst_rel)});
    return checks;
}

}  // namespace detail

/// Runs one command line (without the program name) and returns its exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    using namespace detail;
    CLI::App app{"Generate, inspect and benchmark box-constrained test landscapes.", "gnbg"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Build a scenario or suite instance and print its JSON");
    SourceOptions gen_src;
    gen_src.add(*gen, false);
    std::string gen_out;
    gen->add_option("--out", gen_out, "Output file (default: stdout)");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Evaluate an instance at points");
    std::string ev_inst, ev_points;
    std::vector<double> ev_x;
    ev->add_option("--instance", ev_inst, "Instance JSON file")->required()->check(CLI::ExistingFile);
    ev->add_option("--point", ev_points, "File with points (JSON or one point per line)")->check(CLI::ExistingFile);
    ev->add_option("--x", ev_x, "A single point, comma-separated")->delimiter(',');

    // suite
    auto* su = app.add_subcommand("suite", "Emit suite instances f1-f24");
    int su_id = 0;
    std::uint64_t su_seed = 0;
    std::string su_dir;
    su->add_option("--id", su_id, "Instance id (default: all)")->check(CLI::Range(1, suite_size));
    su->add_option("--seed", su_seed, "Instance seed (default: GNBG_SEED or 0)");
    su->add_option("--out-dir", su_dir, "Write f<id>.gnbg.json files here");

    // run
    auto* rn = app.add_subcommand("run", "Repeated optimizer runs on one instance");
    SourceOptions rn_src;
    OptimizerOptions rn_opt;
    rn_src.add(*rn);
    rn_opt.add(*rn);

    // sweep
    auto* sw = app.add_subcommand("sweep", "Repeat an experiment across scenario knob values");
    SourceOptions sw_src;
    OptimizerOptions sw_opt;
    std::string sw_knob;
    std::vector<double> sw_values;
    sw_src.add(*sw, false);
    sw_opt.add(*sw);
    sw->add_option("--knob", sw_knob, "Knob to vary (default depends on the scenario)");
    sw->add_option("--values", sw_values, "Comma-separated knob values")->required()->delimiter(',');

    // grid
    auto* gr = app.add_subcommand("grid", "Sample f on a 2-D slice of the box");
    SourceOptions gr_src;
    std::size_t gr_i = 1, gr_j = 2, gr_res = 101;
    std::vector<double> gr_fixed;
    std::string gr_out;
    gr_src.add(*gr);
    gr->add_option("--i", gr_i, "First axis (1-based)")->capture_default_str();
    gr->add_option("--j", gr_j, "Second axis (1-based)")->capture_default_str();
    gr->add_option("--resolution", gr_res)->capture_default_str();
    gr->add_option("--fixed", gr_fixed, "Values of the other coordinates (default: optimum)")->delimiter(',');
    gr->add_option("--out", gr_out, "Output file (default: stdout)");

    // classify
    auto* cl = app.add_subcommand("classify", "Print the characteristics of an instance");
    SourceOptions cl_src;
    cl_src.add(*cl);

    // verify
    auto* ve = app.add_subcommand("verify", "Check instance invariants");
    SourceOptions ve_src;
    ve_src.add(*ve);

    std::vector<std::string> argv_s{"gnbg"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << "\n" << "run 'gnbg --help' for usage\n";
        return exit_usage;
    }

    try {
        if (*gen) {
            if (gen_src.suite_id == 0 && gen_src.scenario.empty())
                throw UsageError("generate needs --suite or --scenario");
            write_text(gen_out, serialize_instance(gen_src.build(*gen)), out);
        } else if (*ev) {
            const auto inst = load_instance(ev_inst);
            std::vector<std::vector<double>> pts;
            if (!ev_points.empty()) pts = read_points(read_file(ev_points));
            if (!ev_x.empty()) pts.push_back(ev_x);
            if (pts.empty()) throw UsageError("evaluate needs --point or --x");
            for (const auto& p : pts) {
                if (p.size() != inst.dim())
                    throw InvalidArgument("point has " + std::to_string(p.size()) + " coordinates, expected " +
                                          std::to_string(inst.dim()));
                out << format_double(inst(p)) << "\n";
            }
        } else if (*su) {
            const std::uint64_t seed = su->count("--seed") ? su_seed : default_seed();
            std::vector<int> ids;
            if (su_id) ids.push_back(su_id);
            else
                for (int k = 1; k <= suite_size; ++k) ids.push_back(k);
            if (!su_dir.empty()) {
                std::filesystem::create_directories(su_dir);
                for (int k : ids)
                    write_text((std::filesystem::path(su_dir) / ("f" + std::to_string(k) + ".gnbg.json")).string(),
                               serialize_instance(suite_instance(k, seed)), out);
            } else if (su_id) {
                out << serialize_instance(suite_instance(su_id, seed));
            } else {
                json all = json::array();
                for (int k : ids) all.push_back(instance_to_json(suite_instance(k, seed)));
                out << all.dump(2) << "\n";
            }
        } else if (*rn) {
            const auto spec = rn_opt.spec(*rn, rn_src.source(*rn));
            const auto rep = run_experiment(spec);
            emit_reports(rn_opt, spec, {rep}, "", out);
        } else if (*sw) {
            auto src = sw_src.source(*sw);
            if (!std::holds_alternative<ScenarioSpec>(src)) throw UsageError("sweep needs --scenario");
            const std::string knob = sw_knob.empty() ? default_knob(std::get<ScenarioSpec>(src).kind) : sw_knob;
            const auto spec = sw_opt.spec(*sw, std::move(src));
            const auto reps = sweep(spec, knob, sw_values);
            emit_reports(sw_opt, spec, reps, knob, out);
        } else if (*gr) {
            if (gr_i == 0 || gr_j == 0) throw InvalidArgument("--i and --j are 1-based");
            const auto inst = gr_src.build(*gr);
            const auto g = export_grid(inst, gr_i - 1, gr_j - 1, gr_res, gr_fixed);
            write_text(gr_out, grid_to_json(g).dump() + "\n", out);
        } else if (*cl) {
            out << characteristics_to_json(classify(cl_src.build(*cl))).dump(2) << "\n";
        } else if (*ve) {
            const auto checks = verify_instance(ve_src.build(*ve));
            json j = json::array();
            bool ok = true;
            for (const auto& c : checks) {
                j.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
                ok = ok && c.ok;
            }
            out << json{{"ok", ok}, {"checks", j}}.dump(2) << "\n";
            return ok ? exit_ok : exit_data;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_ok;
}

}  // namespace gnbg::cli
