#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gnbg/errors.hpp"
#include "gnbg/evaluator.hpp"
#include "gnbg/random.hpp"

namespace gnbg {

enum class OptimizerKind { ps, pso, de };

inline const char* to_string(OptimizerKind k) {
    switch (k) {
        case OptimizerKind::ps: return "ps";
        case OptimizerKind::pso: return "pso";
        case OptimizerKind::de: return "de";
    }
    return "?";
}

inline OptimizerKind optimizer_kind_from_string(std::string_view s) {
    if (s == "ps") return OptimizerKind::ps;
    if (s == "pso") return OptimizerKind::pso;
    if (s == "de") return OptimizerKind::de;
    throw InvalidArgument("unknown optimizer '" + std::string(s) + "' (expected ps, pso or de)");
}

struct PsParams {
    double initial_mesh_fraction = 0.1;  // of (upper − lower), per coordinate
    double expand = 2.0;
    double contract = 0.5;
};

struct PsoParams {
    double c1 = 2.05;
    double c2 = 2.05;
    double chi = 0.729843788;
};

struct DeParams {
    double F = 0.9;
    double Cr = 0.5;
};

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::de;
    std::size_t population = 100;
    PsParams ps;
    PsoParams pso;
    DeParams de;
    std::uint64_t seed = 0;
    /// Optional starting points; missing ones are drawn uniformly in the box.
    /// PS uses only the first.
    std::vector<std::vector<double>> initial;
};

namespace detail {

inline void clamp_to_box(std::vector<double>& x, const ProblemInstance& inst) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], inst.lower()[i], inst.upper()[i]);
}

inline std::vector<double> start_point(const OptimizerConfig& cfg, std::size_t k, const ProblemInstance& inst,
                                       Rng& rng) {
    const std::size_t d = inst.dim();
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = rng.uniform(inst.lower()[i], inst.upper()[i]);
    if (k < cfg.initial.size()) {
        if (cfg.initial[k].size() != d) throw InvalidArgument("optimizer: initial point has wrong dimension");
        x = cfg.initial[k];
        clamp_to_box(x, inst);
    }
    return x;
}

}  // namespace detail

/// Coordinate pattern search with an adaptive mesh.
///
/// Each poll visits x ± Δ_i·e_i for all i in a fresh random order and moves to
/// the first improving point. The mesh scale grows by `expand` after a
/// successful poll and shrinks by `contract` after a failed one. Trial points
/// are clamped; a direction that clamps back onto x is skipped without an
/// evaluation.
inline RunResult pattern_search(BudgetedEvaluator& ev, const OptimizerConfig& cfg) {
    const auto& inst = ev.instance();
    const std::size_t d = inst.dim();
    auto rng = Rng::stream(cfg.seed, "optimizer/ps");
    if (!(cfg.ps.expand >= 1.0) || !(cfg.ps.contract > 0.0 && cfg.ps.contract < 1.0) ||
        !(cfg.ps.initial_mesh_fraction > 0.0))
        throw InvalidArgument("pattern_search: invalid mesh parameters");

    auto x = detail::start_point(cfg, 0, inst, rng);
    if (ev.finished()) return ev.result();
    double fx = ev(x);
    double scale = cfg.ps.initial_mesh_fraction;
    std::vector<double> y;

    while (!ev.finished()) {
        bool improved = false, polled = false;
        for (std::size_t dir : rng.permutation(2 * d)) {
            if (ev.finished()) break;
            const std::size_t i = dir / 2;
            const double step = scale * (inst.upper()[i] - inst.lower()[i]);
            y = x;
            y[i] = std::clamp(dir % 2 == 0 ? x[i] + step : x[i] - step, inst.lower()[i], inst.upper()[i]);
            if (y[i] == x[i]) continue;
            polled = true;
            const double fy = ev(y);
            if (fy < fx) {
                x.swap(y);
                fx = fy;
                improved = true;
                break;
            }
        }
        // A mesh too fine to move any coordinate cannot make progress: start it over.
        if (!polled) scale = cfg.ps.initial_mesh_fraction;
        else scale *= improved ? cfg.ps.expand : cfg.ps.contract;
    }
    return ev.result();
}

/// Constriction-factor PSO with a global-star topology.
///
/// Synchronous: every particle in an iteration is steered by the global best
/// known at the start of that iteration. Velocities start at zero and are not
/// clamped; positions are clamped to the box.
inline RunResult pso(BudgetedEvaluator& ev, const OptimizerConfig& cfg) {
    const auto& inst = ev.instance();
    const std::size_t d = inst.dim();
    const std::size_t n = cfg.population;
    if (n == 0) throw InvalidArgument("pso: population must be positive");
    if (static_cast<std::int64_t>(n) > ev.max_fe()) throw InvalidArgument("pso: population exceeds the budget");
    auto rng = Rng::stream(cfg.seed, "optimizer/pso");
    const auto& P = cfg.pso;

    std::vector<std::vector<double>> x(n), v(n, std::vector<double>(d, 0.0)), pbest(n);
    std::vector<double> pbest_f(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = detail::start_point(cfg, k, inst, rng);

    std::size_t g = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (ev.finished()) return ev.result();
        pbest[k] = x[k];
        pbest_f[k] = ev(x[k]);
        if (pbest_f[k] < pbest_f[g]) g = k;
    }

    while (!ev.finished()) {
        const std::vector<double> gbest = pbest[g];
        for (std::size_t k = 0; k < n; ++k) {
            if (ev.finished()) break;
            for (std::size_t i = 0; i < d; ++i) {
                const double r1 = rng.uniform01();
                const double r2 = rng.uniform01();
                v[k][i] = P.chi * (v[k][i] + P.c1 * r1 * (pbest[k][i] - x[k][i]) + P.c2 * r2 * (gbest[i] - x[k][i]));
                x[k][i] += v[k][i];
            }
            detail::clamp_to_box(x[k], inst);
            const double f = ev(x[k]);
            if (f < pbest_f[k]) {
                pbest_f[k] = f;
                pbest[k] = x[k];
            }
        }
        for (std::size_t k = 0; k < n; ++k)
            if (pbest_f[k] < pbest_f[g]) g = k;
    }
    return ev.result();
}

/// DE/rand/1/bin with synchronous generations.
///
/// Trials for a whole generation are built from the previous population, then
/// each replaces its target if it is no worse. Donors r1, r2, r3 are distinct
/// and differ from the target; mutants are clamped to the box.
inline RunResult de(BudgetedEvaluator& ev, const OptimizerConfig& cfg) {
    const auto& inst = ev.instance();
    const std::size_t d = inst.dim();
    const std::size_t n = cfg.population;
    if (n < 4) throw InvalidArgument("de: population must be at least 4");
    auto rng = Rng::stream(cfg.seed, "optimizer/de");
    const auto& P = cfg.de;

    std::vector<std::vector<double>> pop(n), trial(n, std::vector<double>(d));
    std::vector<double> fit(n), trial_f(n);
    for (std::size_t k = 0; k < n; ++k) pop[k] = detail::start_point(cfg, k, inst, rng);
    for (std::size_t k = 0; k < n; ++k) {
        if (ev.finished()) return ev.result();
        fit[k] = ev(pop[k]);
    }

    while (!ev.finished()) {
        std::size_t built = 0;
        for (std::size_t k = 0; k < n && !ev.finished(); ++k, ++built) {
            std::size_t r1, r2, r3;
            do r1 = rng.uniform_index(n); while (r1 == k);
            do r2 = rng.uniform_index(n); while (r2 == k || r2 == r1);
            do r3 = rng.uniform_index(n); while (r3 == k || r3 == r1 || r3 == r2);
            const std::size_t jrand = rng.uniform_index(d);
            auto& t = trial[k];
            for (std::size_t j = 0; j < d; ++j) {
                const bool cross = rng.uniform01() < P.Cr || j == jrand;
                t[j] = cross ? pop[r1][j] + P.F * (pop[r2][j] - pop[r3][j]) : pop[k][j];
            }
            detail::clamp_to_box(t, inst);
            trial_f[k] = ev(t);
        }
        for (std::size_t k = 0; k < built; ++k)
            if (trial_f[k] <= fit[k]) {
                pop[k].swap(trial[k]);
                fit[k] = trial_f[k];
            }
    }
    return ev.result();
}

inline RunResult optimize(BudgetedEvaluator& ev, const OptimizerConfig& cfg) {
    switch (cfg.kind) {
        case OptimizerKind::ps: return pattern_search(ev, cfg);
        case OptimizerKind::pso: return pso(ev, cfg);
        case OptimizerKind::de: return de(ev, cfg);
    }
    throw InvalidArgument("optimize: bad kind");
}

}  // namespace gnbg
