#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gnbg/core.hpp"
#include "gnbg/random.hpp"
#include "gnbg/rotation.hpp"

namespace gnbg {

/// Shared settings for the scenario builders. The box is [lower, upper]^dim.
struct ScenarioConfig {
    std::size_t dim = 30;
    double lower = -100.0;
    double upper = 100.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (dim == 0) throw InvalidArgument("ScenarioConfig: dim must be at least 1");
        if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper))
            throw InvalidArgument("ScenarioConfig: requires finite lower < upper");
    }
};

namespace detail {

inline ProblemInstance make_instance(const ScenarioConfig& cfg, std::vector<Component> comps, Provenance prov) {
    prov.seed = cfg.seed;
    return ProblemInstance(std::vector<double>(cfg.dim, cfg.lower), std::vector<double>(cfg.dim, cfg.upper),
                           std::move(comps), std::move(prov));
}

inline ComponentParams origin_params(std::size_t d) {
    ComponentParams p;
    p.center.assign(d, 0.0);
    p.h_diag.assign(d, 1.0);
    return p;
}

// Two distinct random positions get `a` and `b`; the rest come from `fill`.
template <class Fill>
std::vector<double> pinned_diagonal(std::size_t d, double a, double b, Rng& rng, Fill fill) {
    std::vector<double> h(d);
    const std::size_t ia = rng.uniform_index(d);
    std::size_t ib = ia;
    if (d > 1) {
        ib = rng.uniform_index(d - 1);
        if (ib >= ia) ++ib;
    }
    for (std::size_t i = 0; i < d; ++i) h[i] = fill();
    h[ia] = a;
    h[ib] = b;
    return h;
}

inline std::vector<double> uniform_vector(std::size_t d, double lo, double hi, Rng& rng) {
    std::vector<double> v(d);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

// Inclusive linspace(lo, hi, d), randomly permuted.
inline std::vector<double> permuted_linspace(std::size_t d, double lo, double hi, Rng& rng) {
    std::vector<double> base(d);
    for (std::size_t i = 0; i < d; ++i)
        base[i] = d == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(d - 1);
    base.back() = d == 1 ? lo : hi;
    const auto perm = rng.permutation(d);
    std::vector<double> h(d);
    for (std::size_t i = 0; i < d; ++i) h[i] = base[perm[i]];
    return h;
}

}  // namespace detail

/// Single quadratic bowl at the origin with exponent λ; σ = 0, H = R = I.
inline ProblemInstance gen_linearity(double lambda, const ScenarioConfig& cfg = {}) {
    cfg.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("gen_linearity: lambda must be > 0");
    auto p = detail::origin_params(cfg.dim);
    p.lambda = lambda;
    return detail::make_instance(cfg, {Component(std::move(p))}, {"linearity", {{"lambda", lambda}}, 0});
}

/// Single bowl whose H has condition number exactly `cond`: H spans [1, cond],
/// two random positions pinned to the ends, the rest 1 + (cond−1)·Beta(α, β).
inline ProblemInstance gen_conditioning(double cond, double alpha_beta = 0.4, const ScenarioConfig& cfg = {}) {
    cfg.validate();
    if (!(cond >= 1.0) || !std::isfinite(cond)) throw InvalidArgument("gen_conditioning: cond must be >= 1");
    if (!(alpha_beta > 0.0 && alpha_beta <= 1.0))
        throw InvalidArgument("gen_conditioning: alpha = beta must lie in (0, 1]");
    if (cfg.dim == 1 && cond != 1.0) throw InvalidArgument("gen_conditioning: cond > 1 needs dim >= 2");
    const double a = 1.0, b = cond;
    auto rng = Rng::stream(cfg.seed, "conditioning/h");
    auto p = detail::origin_params(cfg.dim);
    p.h_diag = detail::pinned_diagonal(cfg.dim, a, b, rng, [&] {
        return std::clamp(a + (b - a) * rng.beta(alpha_beta, alpha_beta), a, b);
    });
    return detail::make_instance(cfg, {Component(std::move(p))},
                                 {"conditioning", {{"cond", cond}, {"alpha", alpha_beta}}, 0});
}

/// Either a random interaction structure with pair probability `p_prob`, or
/// every pair rotated by `fixed_angle`.
struct InteractionKnobs {
    double p_prob = 0.0;
    std::optional<double> fixed_angle;
};

/// Single bowl with h ~ U(1, 100) and rotation from the given structure.
inline ProblemInstance gen_interaction(const InteractionKnobs& k, const ScenarioConfig& cfg = {}) {
    cfg.validate();
    auto hrng = Rng::stream(cfg.seed, "interaction/h");
    auto trng = Rng::stream(cfg.seed, "interaction/theta");
    auto p = detail::origin_params(cfg.dim);
    p.h_diag = detail::uniform_vector(cfg.dim, 1.0, 100.0, hrng);
    Provenance prov{"interaction", {}, 0};
    if (k.fixed_angle) {
        if (!std::isfinite(*k.fixed_angle)) throw InvalidArgument("gen_interaction: angle must be finite");
        ThetaSpec th(cfg.dim);
        if (*k.fixed_angle != 0.0)
            for (std::size_t a = 0; a + 1 < cfg.dim; ++a)
                for (std::size_t b = a + 1; b < cfg.dim; ++b) th.set(a, b, *k.fixed_angle);
        p.theta = std::move(th);
        prov.knobs["angle"] = *k.fixed_angle;
    } else {
        p.theta = random_theta(cfg.dim, k.p_prob, UniformAngles{}, trng);
        prov.knobs["p"] = k.p_prob;
    }
    return detail::make_instance(cfg, {Component(std::move(p))}, std::move(prov));
}

/// Single symmetric multimodal bowl: μ = (mu, mu), every ω = omega.
inline ProblemInstance gen_multimodal(double mu, double omega, const ScenarioConfig& cfg = {}) {
    cfg.validate();
    auto p = detail::origin_params(cfg.dim);
    p.transform = TransformParams::symmetric(mu, omega);
    return detail::make_instance(cfg, {Component(std::move(p))},
                                 {"multimodal", {{"mu", mu}, {"omega", omega}}, 0});
}

struct MulticomponentRanges {
    double center_lo = -100.0, center_hi = 100.0;
    double sigma_lo = 0.0, sigma_hi = 10.0;
    double h_lo = 0.001, h_hi = 0.1;
};

/// `o` spherical bowls (λ = 1, R = I, no transform) with random centers, σ and
/// widths; each component's H is a single value repeated. One random
/// component gets σ = sigma_lo so the optimum is unique.
inline ProblemInstance gen_multicomponent(std::size_t o, const ScenarioConfig& cfg = {},
                                          const MulticomponentRanges& r = {}) {
    cfg.validate();
    if (o == 0) throw InvalidArgument("gen_multicomponent: o must be at least 1");
    if (!(r.center_lo <= r.center_hi && r.sigma_lo <= r.sigma_hi && r.h_lo > 0.0 && r.h_lo <= r.h_hi))
        throw InvalidArgument("gen_multicomponent: invalid ranges");
    if (r.center_lo < cfg.lower || r.center_hi > cfg.upper)
        throw InvalidArgument("gen_multicomponent: center range must lie inside the box");
    auto mrng = Rng::stream(cfg.seed, "multicomponent/centers");
    auto srng = Rng::stream(cfg.seed, "multicomponent/sigma");
    auto hrng = Rng::stream(cfg.seed, "multicomponent/h");
    const std::size_t best = srng.uniform_index(o);
    std::vector<Component> comps;
    for (std::size_t k = 0; k < o; ++k) {
        ComponentParams p;
        p.center = detail::uniform_vector(cfg.dim, r.center_lo, r.center_hi, mrng);
        const double s = srng.uniform(r.sigma_lo, r.sigma_hi);
        p.sigma = k == best ? r.sigma_lo : s;
        p.h_diag.assign(cfg.dim, hrng.uniform(r.h_lo, r.h_hi));
        comps.emplace_back(std::move(p));
    }
    return detail::make_instance(cfg, std::move(comps), {"multicomponent", {{"o", static_cast<double>(o)}}, 0});
}

// ---------------------------------------------------------------------------
// Scenario descriptors, used by the harness and CLI to rebuild an instance
// after changing one knob.

enum class ScenarioKind { linearity, conditioning, interaction, multimodal, multicomponent };

inline const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::linearity: return "linearity";
        case ScenarioKind::conditioning: return "conditioning";
        case ScenarioKind::interaction: return "interaction";
        case ScenarioKind::multimodal: return "multimodal";
        case ScenarioKind::multicomponent: return "multicomponent";
    }
    return "?";
}

inline ScenarioKind scenario_kind_from_string(std::string_view s) {
    for (auto k : {ScenarioKind::linearity, ScenarioKind::conditioning, ScenarioKind::interaction,
                   ScenarioKind::multimodal, ScenarioKind::multicomponent})
        if (s == to_string(k)) return k;
    throw InvalidArgument("unknown scenario '" + std::string(s) + "'");
}

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::linearity;
    ScenarioConfig cfg;
    double lambda = 1.0;
    double cond = 1.0;
    double alpha = 0.4;
    InteractionKnobs interaction;
    double mu = 0.0;
    double omega = 0.0;
    std::size_t components = 1;
    MulticomponentRanges ranges;
};

/// The knob a sweep varies when none is named.
inline std::string default_knob(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::linearity: return "lambda";
        case ScenarioKind::conditioning: return "cond";
        case ScenarioKind::interaction: return "p";
        case ScenarioKind::multimodal: return "mu";
        case ScenarioKind::multicomponent: return "o";
    }
    return "";
}

/// Sets a knob by name: lambda, cond, alpha, p, angle, mu, omega, o.
inline void set_knob(ScenarioSpec& s, std::string_view name, double v) {
    if (name == "lambda") s.lambda = v;
    else if (name == "cond") s.cond = v;
    else if (name == "alpha") s.alpha = v;
    else if (name == "p") { s.interaction.p_prob = v; s.interaction.fixed_angle.reset(); }
    else if (name == "angle") s.interaction.fixed_angle = v;
    else if (name == "mu") s.mu = v;
    else if (name == "omega") s.omega = v;
    else if (name == "o") {
        if (!(v >= 1.0) || v != std::floor(v)) throw InvalidArgument("knob o must be a positive integer");
        s.components = static_cast<std::size_t>(v);
    } else throw InvalidArgument("unknown knob '" + std::string(name) + "'");
}

inline ProblemInstance build_scenario(const ScenarioSpec& s) {
    switch (s.kind) {
        case ScenarioKind::linearity: return gen_linearity(s.lambda, s.cfg);
        case ScenarioKind::conditioning: return gen_conditioning(s.cond, s.alpha, s.cfg);
        case ScenarioKind::interaction: return gen_interaction(s.interaction, s.cfg);
        case ScenarioKind::multimodal: return gen_multimodal(s.mu, s.omega, s.cfg);
        case ScenarioKind::multicomponent: return gen_multicomponent(s.components, s.cfg, s.ranges);
    }
    throw InvalidArgument("build_scenario: bad kind");
}

// ---------------------------------------------------------------------------
// The 24-instance suite. d = 30, box [−100, 100]^30.

inline constexpr int suite_size = 24;

namespace detail {

struct SuiteDraws {
    std::uint64_t seed;
    std::string prefix;
    Rng stream(std::string_view group) const { return Rng::stream(seed, prefix + std::string(group)); }
};

inline ThetaSpec full_theta(std::size_t d, Rng& rng) { return random_theta(d, 1.0, UniformAngles{}, rng); }

// f1–f15: one component, m ~ U(−80, 80)^d, σ ~ U(−1200, 0).
inline ComponentParams single_base(const SuiteDraws& s, std::size_t d) {
    auto mr = s.stream("centers");
    auto sr = s.stream("sigma");
    ComponentParams p;
    p.center = uniform_vector(d, -80.0, 80.0, mr);
    p.sigma = sr.uniform(-1200.0, 0.0);
    p.h_diag.assign(d, 1.0);
    return p;
}

inline ComponentParams single_component(int id, const SuiteDraws& s, std::size_t d) {
    constexpr double pi = std::numbers::pi;
    auto p = single_base(s, d);
    auto hr = s.stream("h");
    auto tr = s.stream("theta");
    const TransformParams f10_t({0.2, 0.5}, {20, 50, 10, 25});
    switch (id) {
        case 1: break;
        case 2: p.lambda = 0.05; break;
        case 3: p.h_diag = permuted_linspace(d, 0.1, 1e6, hr); break;
        case 4:
            p.h_diag = uniform_vector(d, 1.0, 10.0, hr);
            p.theta = full_theta(d, tr);
            break;
        case 5: {
            p.lambda = 0.05;
            p.h_diag = permuted_linspace(d, 0.1, 1e6, hr);
            ThetaSpec th(d);
            for (std::size_t i = 0; i + 1 < d; ++i) {
                double a;
                do a = tr.uniform(-pi, pi); while (a == 0.0);
                th.set(i, i + 1, a);
            }
            p.theta = std::move(th);
            break;
        }
        case 6:
            p.lambda = 0.05;
            p.h_diag = permuted_linspace(d, 0.1, 1e6, hr);
            p.theta = full_theta(d, tr);
            break;
        case 7: p.transform = TransformParams::symmetric(0.2, 20); break;
        case 8: p.transform = TransformParams::symmetric(0.2, 50); break;
        case 9: p.transform = TransformParams::symmetric(1.0, 20); break;
        case 10: p.transform = f10_t; break;
        case 11:
            p.transform = f10_t;
            p.theta = full_theta(d, tr);
            break;
        case 12: {
            p.transform = f10_t;
            const double angles[3] = {pi / 4, 3 * pi / 4, pi / 8};
            const auto perm = tr.permutation(d);
            ThetaSpec th(d);
            for (std::size_t g = 0; g < 3; ++g) {
                const std::size_t lo = g * d / 3, hi = (g + 1) * d / 3;
                std::vector<std::size_t> vars(perm.begin() + lo, perm.begin() + hi);
                std::sort(vars.begin(), vars.end());
                for (std::size_t a = 0; a < vars.size(); ++a)
                    for (std::size_t b = a + 1; b < vars.size(); ++b) th.set(vars[a], vars[b], angles[g]);
            }
            p.theta = std::move(th);
            break;
        }
        case 13:
            p.transform = TransformParams::symmetric(1.0, 50);
            p.theta = full_theta(d, tr);
            break;
        case 14:
            p.lambda = 0.6;
            p.transform = TransformParams({0.7, 0.2}, {25, 10, 20, 50});
            p.theta = full_theta(d, tr);
            p.h_diag = pinned_diagonal(d, 0.01, 1e3, hr, [&] { return hr.uniform(1.0, 1e3); });
            break;
        case 15:
            p.lambda = 0.1;
            p.transform = TransformParams::symmetric(1.0, 10);
            p.theta = full_theta(d, tr);
            p.h_diag = pinned_diagonal(d, 1.0, 1e5, hr, [&] {
                return std::clamp(1.0 + (1e5 - 1.0) * hr.beta(0.2, 0.2), 1.0, 1e5);
            });
            break;
    }
    return p;
}

inline TransformParams random_transform(Rng& r, double mu_lo, double mu_hi, double w_lo, double w_hi) {
    std::array<double, 2> mu{r.uniform(mu_lo, mu_hi), r.uniform(mu_lo, mu_hi)};
    std::array<double, 4> w{};
    for (auto& x : w) x = r.uniform(w_lo, w_hi);
    return TransformParams(mu, w);
}

// One σ fixed at `best`, the others from U(lo, hi); the favoured slot is random.
inline std::vector<double> sigmas_one_best(std::size_t o, double best, double lo, double hi, Rng& r) {
    const std::size_t k = r.uniform_index(o);
    std::vector<double> s(o);
    for (auto& x : s) x = r.uniform(lo, hi);
    s[k] = best;
    return s;
}

inline std::vector<Component> multi_components(int id, const SuiteDraws& s, std::size_t d) {
    auto mr = s.stream("centers");
    auto sr = s.stream("sigma");
    auto hr = s.stream("h");
    auto tr = s.stream("theta");
    auto xr = s.stream("transform");
    std::vector<ComponentParams> ps;

    auto basic = [&](std::size_t o, double c_lo, double c_hi, std::vector<double> sig) {
        for (std::size_t k = 0; k < o; ++k) {
            ComponentParams p;
            p.center = uniform_vector(d, c_lo, c_hi, mr);
            p.sigma = sig[k];
            p.h_diag.assign(d, 1.0);
            ps.push_back(std::move(p));
        }
    };

    switch (id) {
        case 16: basic(5, -80, 80, sigmas_one_best(5, -5000, -4500, -4000, sr)); break;
        case 17:
            basic(5, -80, 80, sigmas_one_best(5, -5000, -4500, -4000, sr));
            for (auto& p : ps) {
                p.h_diag = uniform_vector(d, 0.01, 100.0, hr);
                p.theta = random_theta(d, 0.5, UniformAngles{}, tr);
            }
            break;
        case 18:
        case 19:
            basic(5, -80, 80, sigmas_one_best(5, -5000, -4500, -4000, sr));
            for (auto& p : ps) {
                p.theta = random_theta(d, 0.5, UniformAngles{}, tr);
                if (id == 18) {
                    p.transform = random_transform(xr, 0.2, 0.5, 5, 50);
                } else {
                    std::array<double, 4> w{};
                    for (auto& x : w) x = xr.uniform(50, 100);
                    p.transform = TransformParams({0.5, 0.5}, w);
                }
            }
            break;
        case 20:
            basic(5, -75, -25, sigmas_one_best(5, -100, -99, -98, sr));
            for (auto& p : ps) {
                p.lambda = 0.25;
                p.theta = random_theta(d, 0.5, UniformAngles{}, tr);
                p.transform = random_transform(xr, 0.2, 0.5, 5, 50);
            }
            break;
        case 21: {
            const double sig[5] = {-50, -45, -40, -40, -40};
            for (std::size_t k = 0; k < 5; ++k) {
                ComponentParams p;
                p.sigma = sig[k];
                p.lambda = 0.5;
                if (k == 1) {
                    p.center.assign(d, 0.0);
                    p.h_diag.assign(d, 1.0);
                } else {
                    // Each coordinate in ±[30, 90]: outside [−30,30]^d, inside [−90,90]^d.
                    p.center.resize(d);
                    for (auto& c : p.center) {
                        const double mag = mr.uniform(30.0, 90.0);
                        c = mr.uniform01() < 0.5 ? -mag : mag;
                    }
                    p.h_diag.assign(d, 5.0);
                }
                p.theta = random_theta(d, 0.5, UniformAngles{}, tr);
                p.transform = random_transform(xr, 0.1, 0.2, 5, 10);
                ps.push_back(std::move(p));
            }
            break;
        }
        case 22:
            for (std::size_t k = 0; k < 2; ++k) {
                ComponentParams p;
                p.center = k == 0 ? uniform_vector(d, 80, 90, mr) : uniform_vector(d, -90, -80, mr);
                p.sigma = k == 0 ? -1000.0 : -950.0;
                p.lambda = k == 0 ? 1.0 : 0.9;
                p.h_diag = uniform_vector(d, 1.0, 10.0, hr);
                p.theta = random_theta(d, 0.7, UniformAngles{}, tr);
                std::array<double, 4> w{};
                for (auto& x : w) x = xr.uniform(20, 50);
                p.transform = TransformParams({0.5, 0.5}, w);
                ps.push_back(std::move(p));
            }
            break;
        case 23: {
            const auto m = uniform_vector(d, -80, 80, mr);
            for (std::size_t k = 0; k < 5; ++k) {
                ComponentParams p;
                p.center = m;
                p.sigma = -100.0;
                p.lambda = 0.4;
                p.h_diag.assign(d, 1.0);
                p.theta = random_theta(d, 0.75, UniformAngles{}, tr);
                std::array<double, 4> w{};
                for (auto& x : w) x = xr.uniform(20, 50);
                p.transform = TransformParams({0.5, 0.5}, w);
                ps.push_back(std::move(p));
            }
            break;
        }
        case 24:
            basic(5, -80, 80, sigmas_one_best(5, -100, -99, -98, sr));
            for (auto& p : ps) {
                p.lambda = 0.25;
                p.transform = random_transform(xr, 0.2, 0.5, 5, 50);
                p.h_diag = uniform_vector(d, 1.0, 1e5, hr);
                p.theta = random_theta(d, 0.75, UniformAngles{}, tr);
            }
            break;
    }
    std::vector<Component> comps;
    for (auto& p : ps) comps.emplace_back(std::move(p));
    return comps;
}

}  // namespace detail

/// Instance f_id of the suite (id in 1..24).
inline ProblemInstance suite_instance(int id, std::uint64_t seed) {
    if (id < 1 || id > suite_size) throw InvalidArgument("suite_instance: id must be in 1..24");
    const ScenarioConfig cfg{30, -100.0, 100.0, seed};
    const detail::SuiteDraws draws{seed, "suite/f" + std::to_string(id) + "/"};
    std::vector<Component> comps;
    if (id <= 15) comps.emplace_back(detail::single_component(id, draws, cfg.dim));
    else comps = detail::multi_components(id, draws, cfg.dim);
    return detail::make_instance(cfg, std::move(comps), {"suite", {{"id", static_cast<double>(id)}}, 0});
}

}  // namespace gnbg
