#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "gnbg/evaluator.hpp"
#include "gnbg/generators.hpp"
#include "gnbg/optimizers.hpp"

namespace gnbg {

struct SuiteSource {
    int id = 1;
    std::uint64_t seed = 0;
};

/// Where the landscape comes from. It is built once per experiment and
/// shared by all runs.
using InstanceSource = std::variant<SuiteSource, ScenarioSpec, ProblemInstance>;

inline ProblemInstance build_instance(const InstanceSource& src) {
    if (const auto* s = std::get_if<SuiteSource>(&src)) return suite_instance(s->id, s->seed);
    if (const auto* s = std::get_if<ScenarioSpec>(&src)) return build_scenario(*s);
    return std::get<ProblemInstance>(src);
}

struct ExperimentSpec {
    InstanceSource source;
    OptimizerConfig optimizer;
    int runs = 31;
    std::int64_t budget = 500000;
    std::vector<std::int64_t> milestones{100000, 250000, 500000};
    double threshold = 1e-8;
    /// Run i uses optimizer seed base_seed + i.
    std::uint64_t base_seed = 0;
    /// 0 = one per hardware thread.
    unsigned workers = 0;

    void validate() const {
        if (runs < 1) throw InvalidArgument("ExperimentSpec: runs must be at least 1");
        if (budget < 1) throw InvalidArgument("ExperimentSpec: budget must be positive");
        for (std::size_t i = 0; i < milestones.size(); ++i) {
            if (milestones[i] < 1 || milestones[i] > budget)
                throw InvalidArgument("ExperimentSpec: milestones must lie in [1, budget]");
            if (i > 0 && milestones[i] <= milestones[i - 1])
                throw InvalidArgument("ExperimentSpec: milestones must be strictly increasing");
        }
        if (!(threshold >= 0.0)) throw InvalidArgument("ExperimentSpec: threshold must be >= 0");
    }
};

struct MilestoneStats {
    std::int64_t fe = 0;
    double mean = 0.0;
    double std = 0.0;
    friend bool operator==(const MilestoneStats&, const MilestoneStats&) = default;
};

struct ExperimentReport {
    std::optional<double> knob;
    std::vector<MilestoneStats> milestones;
    double mean_final_error = 0.0;
    double std_final_error = 0.0;
    /// Over successful runs only; absent when none succeeded.
    std::optional<double> mean_fe_success;
    std::optional<double> std_fe_success;
    double success_rate = 0.0;  // percent
    std::vector<std::uint64_t> seeds;
    std::vector<RunResult> runs;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

namespace detail {

// Mean and sample (n−1) standard deviation. Values are sorted first so the
// result does not depend on run order, bit for bit. One value gives std 0.
inline std::pair<double, double> mean_std(std::vector<double> v) {
    if (v.empty()) return {0.0, 0.0};
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    if (v.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

}  // namespace detail

/// Summary statistics over a set of runs.
inline ExperimentReport aggregate(std::vector<RunResult> runs, const std::vector<std::int64_t>& milestones) {
    ExperimentReport rep;
    const std::size_t n = runs.size();
    for (auto fe : milestones) {
        std::vector<double> errs;
        for (const auto& r : runs) errs.push_back(error_at(r.history, fe));
        const auto [m, s] = detail::mean_std(std::move(errs));
        rep.milestones.push_back({fe, m, s});
    }
    std::vector<double> finals, fes;
    for (const auto& r : runs) {
        finals.push_back(r.best_error);
        if (r.fe_to_success) fes.push_back(static_cast<double>(*r.fe_to_success));
    }
    std::tie(rep.mean_final_error, rep.std_final_error) = detail::mean_std(finals);
    if (!fes.empty()) {
        const auto [m, s] = detail::mean_std(fes);
        rep.mean_fe_success = m;
        rep.std_fe_success = s;
    }
    rep.success_rate = n ? 100.0 * static_cast<double>(fes.size()) / static_cast<double>(n) : 0.0;
    rep.runs = std::move(runs);
    return rep;
}

/// One optimizer run per seed base_seed + i on a single shared instance.
inline ExperimentReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const ProblemInstance inst = build_instance(spec.source);
    const std::size_t n = static_cast<std::size_t>(spec.runs);
    std::vector<RunResult> results(n);
    std::vector<std::uint64_t> seeds(n);
    for (std::size_t i = 0; i < n; ++i) seeds[i] = spec.base_seed + i;

    auto one = [&](std::size_t i) {
        OptimizerConfig oc = spec.optimizer;
        oc.seed = seeds[i];
        BudgetedEvaluator ev(inst, spec.budget, spec.threshold, spec.milestones);
        results[i] = optimize(ev, oc);
    };

    unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                    try {
                        one(i);
                    } catch (...) {
                        std::lock_guard lk(failure_mu);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    auto rep = aggregate(std::move(results), spec.milestones);
    rep.seeds = std::move(seeds);
    return rep;
}

/// One experiment per knob value. The source must be a scenario; its seed is
/// kept fixed across the sweep.
inline std::vector<ExperimentReport> sweep(const ExperimentSpec& tmpl, const std::string& knob,
                                           const std::vector<double>& values) {
    const auto* base = std::get_if<ScenarioSpec>(&tmpl.source);
    if (!base) throw InvalidArgument("sweep: the instance source must be a scenario");
    std::vector<ExperimentReport> out;
    for (double v : values) {
        ExperimentSpec s = tmpl;
        set_knob(std::get<ScenarioSpec>(s.source), knob, v);
        auto rep = run_experiment(s);
        rep.knob = v;
        out.push_back(std::move(rep));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::string csv_header(std::size_t n_milestones) {
    std::string h = "knob";
    for (std::size_t i = 1; i <= n_milestones; ++i) {
        h += ",mean_err_m" + std::to_string(i);
        h += ",std_err_m" + std::to_string(i);
    }
    return h + ",mean_fe_success,success_rate";
}

inline std::string csv_row(const ExperimentReport& r) {
    std::string row = r.knob ? format_double(*r.knob) : "";
    for (const auto& m : r.milestones) row += "," + format_double(m.mean) + "," + format_double(m.std);
    row += "," + (r.mean_fe_success ? format_double(*r.mean_fe_success) : std::string("--"));
    row += "," + format_double(r.success_rate);
    return row;
}

inline void write_csv(std::ostream& os, const std::vector<ExperimentReport>& reports) {
    const std::size_t m = reports.empty() ? 0 : reports.front().milestones.size();
    os << csv_header(m) << '\n';
    for (const auto& r : reports) os << csv_row(r) << '\n';
}

}  // namespace gnbg
