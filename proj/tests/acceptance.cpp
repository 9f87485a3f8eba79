// Acceptance checks. One line per criterion: "CRITERION N: PASS|FAIL <detail>".
// Exit status is non-zero if any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "gnbg/cli.hpp"
#include "gnbg/gnbg.hpp"

using namespace gnbg;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::vector<double> random_point(Rng& rng, std::size_t d, double lo = -100, double hi = 100) {
    std::vector<double> x(d);
    for (auto& v : x) v = rng.uniform(lo, hi);
    return x;
}

ProblemInstance single(ComponentParams p, double lo = -100, double hi = 100) {
    const std::size_t d = p.center.size();
    return ProblemInstance(std::vector<double>(d, lo), std::vector<double>(d, hi), {Component(std::move(p))});
}

ExperimentSpec spec_for(InstanceSource src, OptimizerKind k, int runs, std::int64_t budget) {
    ExperimentSpec s;
    s.source = std::move(src);
    s.optimizer.kind = k;
    s.runs = runs;
    s.budget = budget;
    s.milestones = {budget};
    s.threshold = 1e-8;
    s.workers = 0;
    return s;
}

// DE control parameters used by the checks below; see README.
ExperimentSpec de_spec(InstanceSource src, int runs, std::int64_t budget) {
    auto s = spec_for(std::move(src), OptimizerKind::de, runs, budget);
    s.optimizer.de = {0.5, 0.9};
    return s;
}

// 1. Identity configuration is the sphere; λ=1 with log-spaced H is the ellipsoid.
Verdict c1() {
    auto rng = Rng::stream(1, "acceptance/1");
    ComponentParams p;
    p.center.assign(30, 0.0);
    p.h_diag.assign(30, 1.0);
    const auto sphere = single(p);
    for (std::size_t i = 0; i < 30; ++i) p.h_diag[i] = std::pow(10.0, 6.0 * i / 29.0);
    const auto ellipsoid = single(p);
    double abs_err = 0, rel_err = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto x = random_point(rng, 30);
        long double s = 0, e = 0;
        for (std::size_t i = 0; i < 30; ++i) {
            s += static_cast<long double>(x[i]) * x[i];
            e += std::pow(10.0L, 6.0L * i / 29.0L) * x[i] * x[i];
        }
        abs_err = std::max(abs_err, static_cast<double>(std::fabs(sphere(x) - s)));
        rel_err = std::max(rel_err, static_cast<double>(std::fabs((ellipsoid(x) - e) / e)));
    }
    return {abs_err <= 1e-9 && rel_err <= 1e-12,
            "sphere max abs err " + fmt(abs_err) + " (<= 1e-9), ellipsoid max rel err " + fmt(rel_err) +
                " (<= 1e-12)"};
}

// 2. Rotations built from random angle matrices are orthogonal.
Verdict c2() {
    auto rng = Rng::stream(2, "acceptance/2");
    double worst = 0;
    for (std::size_t d : {2u, 8u, 30u})
        for (int k = 0; k < 100; ++k) {
            const auto th = random_theta(d, rng.uniform01(), UniformAngles{}, rng);
            worst = std::max(worst, orthogonality_defect(rotation_from_theta(th).matrix()));
        }
    return {worst <= 1e-10, "max |R^T R - I| = " + fmt(worst) + " over 300 matrices (<= 1e-10)"};
}

// 3. f(optimum_position) == optimum_value on suite and random scenario instances.
Verdict c3() {
    std::vector<ProblemInstance> insts;
    for (int id = 1; id <= suite_size; ++id) insts.push_back(suite_instance(id, 0));
    auto rng = Rng::stream(3, "acceptance/3");
    for (int k = 0; k < 50; ++k) {
        ScenarioSpec s;
        s.cfg.seed = 1000 + k;
        switch (k % 5) {
            case 0: s.kind = ScenarioKind::linearity; s.lambda = rng.uniform(0.05, 1.5); break;
            case 1: s.kind = ScenarioKind::conditioning; s.cond = std::pow(10.0, rng.uniform(0, 7)); break;
            case 2: s.kind = ScenarioKind::interaction; s.interaction.p_prob = rng.uniform01(); break;
            case 3: s.kind = ScenarioKind::multimodal; s.mu = rng.uniform(0, 1); s.omega = rng.uniform(0, 50); break;
            case 4: s.kind = ScenarioKind::multicomponent; s.components = 1 + rng.uniform_index(10); break;
        }
        insts.push_back(build_scenario(s));
    }
    double worst = 0;
    std::size_t dominated_opt = 0;
    for (const auto& inst : insts) {
        const auto dom = dominated_components(inst);
        if (std::find(dom.begin(), dom.end(), inst.optimum_component()) != dom.end()) ++dominated_opt;
        worst = std::max(worst, inst(inst.optimum_position()) - inst.optimum_value());
    }
    return {worst <= 1e-9 && dominated_opt == 0, "max f(opt) - opt_value = " + fmt(worst) + " over " +
                                                     std::to_string(insts.size()) + " instances (<= 1e-9); " +
                                                     std::to_string(dominated_opt) + " dominated optima"};
}

double golden_section(const std::function<double(double)>& g, double a, double b, double tol) {
    const double r = (std::sqrt(5.0) - 1) / 2;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = g(c), fd = g(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d, d = c, fd = fc;
            c = b - r * (b - a), fc = g(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + r * (b - a), fd = g(d);
        }
    }
    return (a + b) / 2;
}

// Grid scans narrow the bracket around the best node (the 1-D slice has
// log-periodic local optima), golden-section finishes inside it.
double coordinate_minimum(const std::function<double(double)>& g, double lo, double hi) {
    double best = lo, w = (hi - lo) / 2, center = (lo + hi) / 2;
    for (int level = 0; level < 6; ++level) {
        const double a = std::max(lo, center - w), b = std::min(hi, center + w);
        const int n = 2000;
        double fb = INFINITY;
        for (int k = 0; k <= n; ++k) {
            const double t = a + (b - a) * k / n;
            const double v = g(t);
            if (v < fb) fb = v, best = t;
        }
        const double step = (b - a) / n;
        center = best;
        w = 10 * step;
    }
    return golden_section(g, center - w, center + w, 1e-12);
}

// With the other coordinates far from the center, f is constant in double
// precision on a stretch around m_i several 1e-6 wide, so any point of it is
// a minimizer. The slice is symmetric about m_i (μ₁=μ₂, equal ω), so the
// midpoint of the stretch's outermost minimizing nodes recovers m_i.
double plateau_midpoint(const std::function<double(double)>& g, double t0, double half_width, int n) {
    double lo_val = INFINITY;
    std::vector<double> v(n + 1);
    for (int k = 0; k <= n; ++k) lo_val = std::min(lo_val, v[k] = g(t0 - half_width + 2 * half_width * k / n));
    int first = -1, last = -1;
    for (int k = 0; k <= n; ++k)
        if (v[k] == lo_val) {
            if (first < 0) first = k;
            last = k;
        }
    const auto at = [&](int k) { return t0 - half_width + 2 * half_width * k / n; };
    return (at(first) + at(last)) / 2;
}

// 4. Each coordinate of the center is recovered by 1-D search with the others fixed.
Verdict c4() {
    auto rng = Rng::stream(4, "acceptance/4");
    ComponentParams p;
    p.center = random_point(rng, 3, -80, 80);
    p.h_diag = {1.0, 1.0, 1.0};
    p.lambda = 0.25;
    p.transform = TransformParams({0.5, 0.5}, {10, 10, 10, 10});
    const auto inst = single(p);
    double worst_golden = 0, worst = 0;
    for (int setting = 0; setting < 5; ++setting) {
        const auto base = random_point(rng, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            auto x = base;
            const auto g = [&](double v) {
                x[i] = v;
                return inst(x);
            };
            const double t = coordinate_minimum(g, -100, 100);
            worst_golden = std::max(worst_golden, std::fabs(t - p.center[i]));
            worst = std::max(worst, std::fabs(plateau_midpoint(g, t, 1e-3, 200000) - p.center[i]));
        }
    }
    return {worst <= 1e-6, "max |x_i* - m_i| = " + fmt(worst) + " over 5 settings x 3 coordinates (<= 1e-6); "
                           "golden-section point alone: " + fmt(worst_golden)};
}

// Mixed second difference for (i, j); `scale` receives the larger pure
// second difference along i or j, i.e. the local curvature it competes with.
double cross_term(const ProblemInstance& f, std::vector<double> x, std::size_t i, std::size_t j, double h,
                  double& scale) {
    const auto at = [&](double di, double dj) {
        auto y = x;
        y[i] += di;
        y[j] += dj;
        return f(y);
    };
    const double f00 = at(0, 0);
    const double dii = std::fabs(at(h, 0) - 2 * f00 + at(-h, 0));
    const double djj = std::fabs(at(0, h) - 2 * f00 + at(0, -h));
    scale = std::max(dii, djj);
    return std::fabs(at(h, h) - at(h, 0) - at(0, h) + f00);
}

// 5. Mixed differences vanish for λ=1, R=I and do not for a π/4-rotated pair.
Verdict c5() {
    auto rng = Rng::stream(5, "acceptance/5");
    const std::size_t d = 6;
    double sep_worst = 0, rot_min = INFINITY;
    for (int k = 0; k < 5; ++k) {
        ComponentParams p;
        p.center = random_point(rng, d, -50, 50);
        p.h_diag = random_point(rng, d, 1, 100);
        p.h_diag[0] = 1;
        p.h_diag[1] = 100;
        p.sigma = rng.uniform(-100, 0);
        if (k % 2) p.transform = TransformParams::symmetric(rng.uniform(0.1, 0.5), rng.uniform(5, 30));
        const auto separable = single(p);
        ThetaSpec th(d);
        th.set(0, 1, std::numbers::pi / 4);
        p.theta = th;
        p.transform = {};
        const auto rotated = single(p);
        const auto x = random_point(rng, d, -50, 50);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                double scale;
                const double c = cross_term(separable, x, i, j, 1.0, scale);
                sep_worst = std::max(sep_worst, c / scale);
            }
        double scale;
        const double c = cross_term(rotated, x, 0, 1, 1.0, scale);
        rot_min = std::min(rot_min, c / scale);
    }
    return {sep_worst <= 1e-6 && rot_min > 1e-2,
            "separable max |cross|/curvature = " + fmt(sep_worst) + " (<= 1e-6); rotated pair min = " +
                fmt(rot_min) + " (> 1e-2)"};
}

// 6. PS succeeds at every λ and needs fewer evaluations as λ grows.
Verdict c6() {
    std::ostringstream os;
    bool ok = true;
    double prev = INFINITY, at_one = NAN;
    for (double lambda : {0.25, 0.5, 0.75, 1.0}) {
        ScenarioSpec s;
        s.lambda = lambda;
        const auto rep = run_experiment(spec_for(s, OptimizerKind::ps, 11, 100000));
        const double fe = rep.mean_fe_success.value_or(NAN);
        os << "lambda " << lambda << ": success " << fmt(rep.success_rate) << "%, mean FE " << fmt(fe) << "; ";
        ok = ok && rep.success_rate == 100.0 && fe <= prev;
        prev = fe;
        at_one = fe;
    }
    ok = ok && at_one >= 15000 && at_one <= 60000;
    os << "need 100% each, non-increasing FE, FE(1) in [15000, 60000]";
    return {ok, os.str()};
}

// 7. DE stalls short of the threshold on a very sharp basin.
Verdict c7() {
    ScenarioSpec s;
    s.lambda = 0.1;
    const auto rep = run_experiment(de_spec(s, 5, 500000));
    const double err = rep.mean_final_error;
    return {rep.success_rate == 0.0 && err >= 1e-7 && err <= 1e-4,
            "success " + fmt(rep.success_rate) + "% (need 0), mean final error " + fmt(err) + " (in [1e-7, 1e-4])"};
}

// 8. PS cost grows with the condition number.
Verdict c8() {
    std::ostringstream os;
    bool ok = true;
    double prev = -INFINITY;
    for (double cond : {1.0, 1e3, 1e7}) {
        ScenarioSpec s;
        s.kind = ScenarioKind::conditioning;
        s.cond = cond;
        const auto rep = run_experiment(spec_for(s, OptimizerKind::ps, 5, 100000));
        const double fe = rep.mean_fe_success.value_or(NAN);
        os << "cond " << fmt(cond) << ": mean FE " << fmt(fe) << " (success " << fmt(rep.success_rate) << "%); ";
        ok = ok && fe > prev;
        prev = fe;
    }
    os << "need strictly increasing";
    return {ok, os.str()};
}

// 9. Deep, wide local optima trap DE.
Verdict c9() {
    ScenarioSpec s;
    s.kind = ScenarioKind::multimodal;
    s.mu = 1.0;
    s.omega = 5.0;
    const auto rep = run_experiment(de_spec(s, 5, 200000));
    return {rep.success_rate == 0.0 && rep.mean_final_error > 100,
            "success " + fmt(rep.success_rate) + "% (need 0), mean final error " + fmt(rep.mean_final_error) +
                " (> 100)"};
}

// 10. Extra components deceive DE; a single component does not.
Verdict c10() {
    ScenarioSpec s;
    s.kind = ScenarioKind::multicomponent;
    s.cfg.seed = 42;
    s.components = 5;
    const auto five = run_experiment(de_spec(s, 5, 100000));
    s.components = 1;
    const auto one = run_experiment(de_spec(s, 5, 100000));
    return {five.success_rate <= 20.0 && one.success_rate == 100.0,
            "o=5 success " + fmt(five.success_rate) + "% (<= 20), o=1 success " + fmt(one.success_rate) +
                "% (need 100), o=1 mean FE " + fmt(one.mean_fe_success.value_or(NAN))};
}

// 11. Suite output and experiment reports are reproducible.
Verdict c11() {
    int mismatches = 0;
    for (int k = 1; k <= suite_size; ++k) {
        std::ostringstream a, b, err;
        const std::vector<std::string> args{"suite", "--id", std::to_string(k), "--seed", "2024"};
        if (cli::run(args, a, err) != 0 || cli::run(args, b, err) != 0 || a.str() != b.str() || a.str().empty())
            ++mismatches;
    }
    auto s = spec_for(SuiteSource{16, 7}, OptimizerKind::pso, 3, 20000);
    s.milestones = {5000, 20000};
    s.base_seed = 11;
    const bool same = run_experiment(s) == run_experiment(s);
    return {mismatches == 0 && same, std::to_string(mismatches) + " of 24 suite outputs differ across invocations; "
                                         "repeated experiment " + (same ? "identical" : "differs")};
}

// 12. Serialized instances evaluate identically after parsing.
Verdict c12() {
    double worst = 0;
    for (int id = 1; id <= suite_size; ++id) {
        const auto inst = suite_instance(id, 12);
        const auto back = parse_instance(serialize_instance(inst));
        auto rng = Rng::stream(id, "acceptance/12");
        for (int k = 0; k < 1000; ++k) {
            const auto x = random_point(rng, inst.dim());
            const double a = inst(x), b = back(x);
            worst = std::max(worst, std::fabs(a - b) / std::max(std::fabs(a), 1e-300));
        }
    }
    return {worst <= 1e-15, "max relative difference " + fmt(worst) + " over 24 x 1000 probes (<= 1e-15)"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);
    if (selected.empty())
        for (int k = 1; k <= 12; ++k) selected.push_back(k);

    const std::function<Verdict()> checks[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
    int failed = 0;
    for (int k : selected) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = checks[k - 1]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("CRITERION %d: %s %s [%.1fs]\n", k, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
