#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gnbg/classify.hpp"
#include "gnbg/core.hpp"
#include "gnbg/harness.hpp"

// Documents use 1-based variable and component indices.

namespace gnbg {

using json = nlohmann::json;

inline constexpr const char* instance_format_version = "1.0";
inline constexpr const char* grid_format_version = "1.0";
inline constexpr const char* report_format_version = "1.0";

// ---------------------------------------------------------------------------
// Instance documents

inline json component_to_json(const Component& c) {
    json j;
    j["sigma"] = c.sigma();
    j["m"] = c.center();
    j["h_diag"] = c.h_diag();
    if (c.theta()) {
        json t = json::array();
        for (const auto& e : c.theta()->entries()) t.push_back({{"p", e.p + 1}, {"q", e.q + 1}, {"angle", e.angle}});
        j["theta"] = std::move(t);
    } else {
        json rows = json::array();
        for (std::size_t r = 0; r < c.dim(); ++r) {
            const auto row = c.rotation().matrix().row(r);
            rows.push_back(std::vector<double>(row.begin(), row.end()));
        }
        j["rotation"] = std::move(rows);
    }
    j["lambda"] = c.lambda();
    j["mu"] = c.transform().mu;
    j["omega"] = c.transform().omega;
    return j;
}

inline json instance_to_json(const ProblemInstance& inst) {
    json j;
    j["format_version"] = instance_format_version;
    j["dim"] = inst.dim();
    j["bounds"] = {{"lower", inst.lower()}, {"upper", inst.upper()}};
    json comps = json::array();
    for (const auto& c : inst.components()) comps.push_back(component_to_json(c));
    j["components"] = std::move(comps);
    const auto& p = inst.provenance();
    j["provenance"] = {{"generator", p.generator}, {"knobs", p.knobs}, {"seed", p.seed},
                       {"rng", std::string(Rng::scheme) + "/v" + std::to_string(Rng::scheme_version)}};
    // Informational; recomputed on parse.
    j["optimum"] = {{"value", inst.optimum_value()}, {"component", inst.optimum_component() + 1}};
    return j;
}

inline std::string serialize_instance(const ProblemInstance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(path, "must be finite");
    return v;
}

inline std::vector<double> numbers(const json& j, const std::string& path, std::optional<std::size_t> len = {}) {
    if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
    if (len && j.size() != *len)
        throw ParseError(path, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::size_t index1(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 1) throw ParseError(path, "expected a positive integer");
    return static_cast<std::size_t>(j.get<std::int64_t>() - 1);
}

inline Component component_from_json(const json& j, std::size_t d, const std::string& path) {
    ComponentParams p;
    p.sigma = number(field(j, "sigma", path), path + ".sigma");
    p.center = numbers(field(j, "m", path), path + ".m", d);
    p.h_diag = numbers(field(j, "h_diag", path), path + ".h_diag", d);
    for (std::size_t i = 0; i < d; ++i)
        if (!(p.h_diag[i] > 0.0)) throw ParseError(path + ".h_diag[" + std::to_string(i) + "]", "must be > 0");
    p.lambda = number(field(j, "lambda", path), path + ".lambda");
    if (!(p.lambda > 0.0)) throw ParseError(path + ".lambda", "must be > 0");
    const auto mu = numbers(field(j, "mu", path), path + ".mu", 2);
    const auto om = numbers(field(j, "omega", path), path + ".omega", 4);
    for (std::size_t i = 0; i < 2; ++i)
        if (mu[i] < 0.0) throw ParseError(path + ".mu[" + std::to_string(i) + "]", "must be >= 0");
    for (std::size_t i = 0; i < 4; ++i)
        if (om[i] < 0.0) throw ParseError(path + ".omega[" + std::to_string(i) + "]", "must be >= 0");
    p.transform = TransformParams({mu[0], mu[1]}, {om[0], om[1], om[2], om[3]});

    const bool has_theta = j.contains("theta"), has_rot = j.contains("rotation");
    if (has_theta && has_rot) throw ParseError(path, "give either theta or rotation, not both");
    if (has_theta) {
        const auto& t = j["theta"];
        if (!t.is_array()) throw ParseError(path + ".theta", "expected an array of {p, q, angle}");
        ThetaSpec th(d);
        for (std::size_t k = 0; k < t.size(); ++k) {
            const std::string tp = path + ".theta[" + std::to_string(k) + "]";
            const std::size_t a = index1(field(t[k], "p", tp), tp + ".p");
            const std::size_t b = index1(field(t[k], "q", tp), tp + ".q");
            if (!(a < b) || b >= d) throw ParseError(tp, "requires 1 <= p < q <= dim");
            th.set(a, b, number(field(t[k], "angle", tp), tp + ".angle"));
        }
        p.theta = std::move(th);
    } else if (has_rot) {
        const auto& r = j["rotation"];
        if (!r.is_array() || r.size() != d) throw ParseError(path + ".rotation", "expected dim rows");
        SquareMatrix m(d);
        for (std::size_t row = 0; row < d; ++row) {
            const auto vals = numbers(r[row], path + ".rotation[" + std::to_string(row) + "]", d);
            for (std::size_t c = 0; c < d; ++c) m(row, c) = vals[c];
        }
        try {
            p.rotation = RotationMatrix(std::move(m));
        } catch (const InvalidArgument& e) {
            throw ParseError(path + ".rotation", e.what());
        }
    }
    try {
        return Component(std::move(p));
    } catch (const InvalidArgument& e) {
        throw ParseError(path, e.what());
    }
}

inline std::uint64_t seed_field(const json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw ParseError(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

}  // namespace detail

inline ProblemInstance instance_from_json(const json& j) {
    using namespace detail;
    const auto& ver = field(j, "format_version", "$");
    if (!ver.is_string()) throw ParseError("$.format_version", "expected a string");
    const auto v = ver.get<std::string>();
    if (v.substr(0, v.find('.')) != "1")
        throw ParseError("$.format_version", "unsupported version '" + v + "' (expected 1.x)");
    const auto& dj = field(j, "dim", "$");
    if (!dj.is_number_integer() || dj.get<std::int64_t>() < 1) throw ParseError("$.dim", "expected a positive integer");
    const auto d = static_cast<std::size_t>(dj.get<std::int64_t>());
    const auto& b = field(j, "bounds", "$");
    auto lower = numbers(field(b, "lower", "$.bounds"), "$.bounds.lower", d);
    auto upper = numbers(field(b, "upper", "$.bounds"), "$.bounds.upper", d);
    for (std::size_t i = 0; i < d; ++i)
        if (!(lower[i] < upper[i])) throw ParseError("$.bounds", "lower must be < upper in every dimension");
    const auto& cj = field(j, "components", "$");
    if (!cj.is_array() || cj.empty()) throw ParseError("$.components", "expected a nonempty array");
    std::vector<Component> comps;
    for (std::size_t k = 0; k < cj.size(); ++k)
        comps.push_back(component_from_json(cj[k], d, "$.components[" + std::to_string(k) + "]"));

    Provenance prov;
    if (j.contains("provenance")) {
        const auto& pj = j["provenance"];
        if (!pj.is_object()) throw ParseError("$.provenance", "expected an object");
        if (pj.contains("generator")) {
            if (!pj["generator"].is_string()) throw ParseError("$.provenance.generator", "expected a string");
            prov.generator = pj["generator"].get<std::string>();
        }
        if (pj.contains("knobs")) {
            if (!pj["knobs"].is_object()) throw ParseError("$.provenance.knobs", "expected an object");
            for (const auto& [k, val] : pj["knobs"].items())
                prov.knobs[k] = number(val, "$.provenance.knobs." + k);
        }
        if (pj.contains("seed")) prov.seed = seed_field(pj["seed"], "$.provenance.seed");
    }
    try {
        return ProblemInstance(std::move(lower), std::move(upper), std::move(comps), std::move(prov));
    } catch (const InvalidArgument& e) {
        throw ParseError("$", e.what());
    }
}

inline ProblemInstance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("$", std::string("malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ProblemInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

// ---------------------------------------------------------------------------
// Landscape grids

/// Values of f on a uniform resolution × resolution grid over the (i, j)
/// plane of the box, other coordinates held at `fixed`.
/// values[r][c] = f(x) with x_i = axis_i[r], x_j = axis_j[c].
struct GridDocument {
    std::size_t i = 0, j = 0;  // 0-based
    std::size_t resolution = 0;
    std::vector<double> fixed;
    std::vector<double> axis_i, axis_j;
    std::vector<std::vector<double>> values;
};

/// With an empty `fixed`, the other coordinates sit at the optimum position.
inline GridDocument export_grid(const ProblemInstance& inst, std::size_t i, std::size_t j, std::size_t resolution,
                                std::vector<double> fixed = {}) {
    const std::size_t d = inst.dim();
    if (i >= d || j >= d) throw InvalidArgument("export_grid: axis index out of range");
    if (i == j) throw InvalidArgument("export_grid: axes must differ");
    if (resolution < 2) throw InvalidArgument("export_grid: resolution must be at least 2");
    if (fixed.empty()) fixed = inst.optimum_position();
    if (fixed.size() != d) throw InvalidArgument("export_grid: fixed point has wrong dimension");

    auto axis = [&](std::size_t k) {
        std::vector<double> a(resolution);
        const double lo = inst.lower()[k], hi = inst.upper()[k];
        for (std::size_t t = 0; t < resolution; ++t)
            a[t] = lo + (hi - lo) * static_cast<double>(t) / static_cast<double>(resolution - 1);
        a.back() = hi;
        return a;
    };
    GridDocument g{i, j, resolution, fixed, axis(i), axis(j), {}};
    std::vector<double> x = fixed;
    for (std::size_t r = 0; r < resolution; ++r) {
        std::vector<double> row(resolution);
        x[i] = g.axis_i[r];
        for (std::size_t c = 0; c < resolution; ++c) {
            x[j] = g.axis_j[c];
            row[c] = inst(x);
        }
        g.values.push_back(std::move(row));
    }
    return g;
}

inline json grid_to_json(const GridDocument& g) {
    return {{"format_version", grid_format_version},
            {"axes", {g.i + 1, g.j + 1}},
            {"resolution", g.resolution},
            {"fixed", g.fixed},
            {"axis_values", {g.axis_i, g.axis_j}},
            {"values", g.values}};
}

// ---------------------------------------------------------------------------
// Experiment reports

inline json run_to_json(const RunResult& r, std::uint64_t seed) {
    json ms = json::array();
    for (const auto& [fe, err] : r.milestone_errors) ms.push_back({{"fe", fe}, {"error", err}});
    json hist = json::array();
    for (const auto& h : r.history) hist.push_back({h.fe, h.error});
    json j = {{"seed", seed},
              {"best_value", r.best_value},
              {"best_error", r.best_error},
              {"fe_used", r.fe_used},
              {"success", r.success},
              {"fe_to_success", nullptr},
              {"milestone_errors", std::move(ms)},
              {"best_position", r.best_position},
              {"history", std::move(hist)}};
    if (r.fe_to_success) j["fe_to_success"] = *r.fe_to_success;
    return j;
}

inline json report_to_json(const ExperimentReport& rep) {
    json ms = json::array();
    for (const auto& m : rep.milestones) ms.push_back({{"fe", m.fe}, {"mean", m.mean}, {"std", m.std}});
    json runs = json::array();
    for (std::size_t i = 0; i < rep.runs.size(); ++i)
        runs.push_back(run_to_json(rep.runs[i], i < rep.seeds.size() ? rep.seeds[i] : 0));
    json j = {{"knob", nullptr},
              {"milestones", std::move(ms)},
              {"mean_final_error", rep.mean_final_error},
              {"std_final_error", rep.std_final_error},
              {"mean_fe_success", nullptr},
              {"std_fe_success", nullptr},
              {"success_rate", rep.success_rate},
              {"runs", std::move(runs)}};
    if (rep.knob) j["knob"] = *rep.knob;
    if (rep.mean_fe_success) j["mean_fe_success"] = *rep.mean_fe_success;
    if (rep.std_fe_success) j["std_fe_success"] = *rep.std_fe_success;
    return j;
}

inline json experiment_to_json(const ExperimentSpec& spec, const std::vector<ExperimentReport>& reports,
                               const std::string& knob_name = "") {
    json src;
    if (const auto* s = std::get_if<SuiteSource>(&spec.source)) src = {{"suite", s->id}, {"seed", s->seed}};
    else if (const auto* s = std::get_if<ScenarioSpec>(&spec.source))
        src = {{"scenario", to_string(s->kind)}, {"dim", s->cfg.dim}, {"seed", s->cfg.seed}};
    else src = {{"instance", "inline"}};
    const auto& oc = spec.optimizer;
    json opt = {{"kind", to_string(oc.kind)}, {"population", oc.population}};
    if (oc.kind == OptimizerKind::ps)
        opt["ps"] = {{"initial_mesh_fraction", oc.ps.initial_mesh_fraction},
                     {"expand", oc.ps.expand},
                     {"contract", oc.ps.contract}};
    if (oc.kind == OptimizerKind::pso) opt["pso"] = {{"c1", oc.pso.c1}, {"c2", oc.pso.c2}, {"chi", oc.pso.chi}};
    if (oc.kind == OptimizerKind::de) opt["de"] = {{"F", oc.de.F}, {"Cr", oc.de.Cr}};
    json reps = json::array();
    for (const auto& r : reports) reps.push_back(report_to_json(r));
    return {{"format_version", report_format_version},
            {"experiment",
             {{"source", std::move(src)},
              {"optimizer", std::move(opt)},
              {"runs", spec.runs},
              {"budget", spec.budget},
              {"milestones", spec.milestones},
              {"threshold", spec.threshold},
              {"base_seed", spec.base_seed},
              {"knob", knob_name.empty() ? json(nullptr) : json(knob_name)}}},
            {"reports", std::move(reps)}};
}

// ---------------------------------------------------------------------------
// Characteristics

inline json characteristics_to_json(const Characteristics& ch) {
    json comps = json::array();
    for (const auto& t : ch.components)
        comps.push_back({{"condition_number", t.condition_number},
                         {"basin_linearity", to_string(t.linearity)},
                         {"local_optima", t.local_optima},
                         {"symmetric", t.symmetric},
                         {"separability", to_string(t.separability)},
                         {"interaction_pairs", t.interactions.size()}});
    json dom = json::array();
    for (auto k : ch.dominated) dom.push_back(k + 1);
    return {{"modality", to_string(ch.modality)},
            {"basin_local_optima", ch.basin_local_optima},
            {"separability", to_string(ch.separability)},
            {"varying_interactions", ch.varying_interactions},
            {"symmetry", ch.symmetric ? "symmetric" : "asymmetric"},
            {"ill_conditioned", ch.ill_conditioned},
            {"condition_number", ch.condition_number},
            {"basin_linearity", ch.linearity ? to_string(*ch.linearity) : "mixed"},
            {"deceptive", ch.deceptive},
            {"dominated_components", std::move(dom)},
            {"components", std::move(comps)}};
}

}  // namespace gnbg
