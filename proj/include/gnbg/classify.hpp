#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "gnbg/core.hpp"

namespace gnbg {

enum class Modality { unimodal, multimodal_single_component, multimodal_multiple_components };
enum class Separability { fully_separable, partially_separable, non_separable };

inline const char* to_string(Modality m) {
    switch (m) {
        case Modality::unimodal: return "unimodal";
        case Modality::multimodal_single_component: return "multimodal-single-component";
        case Modality::multimodal_multiple_components: return "multimodal-multiple-components";
    }
    return "?";
}

inline const char* to_string(Separability s) {
    switch (s) {
        case Separability::fully_separable: return "fully-separable";
        case Separability::partially_separable: return "partially-separable";
        case Separability::non_separable: return "non-separable";
    }
    return "?";
}

/// Condition numbers above this count as ill-conditioned.
inline constexpr double ill_conditioning_threshold = 10.0;

struct ComponentTraits {
    double condition_number = 1.0;
    BasinLinearity linearity = BasinLinearity::super_linear;
    bool local_optima = false;
    bool symmetric = true;
    /// Variable pairs coupled by the rotation (empty when rotation cannot
    /// matter because H is uniform and the transform is the identity).
    std::vector<std::pair<std::size_t, std::size_t>> interactions;
    Separability separability = Separability::fully_separable;
};

struct Characteristics {
    Modality modality = Modality::unimodal;
    bool basin_local_optima = false;
    Separability separability = Separability::fully_separable;
    bool varying_interactions = false;
    bool symmetric = true;
    bool ill_conditioned = false;
    double condition_number = 1.0;
    /// nullopt when components disagree.
    std::optional<BasinLinearity> linearity;
    bool deceptive = false;
    std::vector<std::size_t> dominated;
    std::vector<ComponentTraits> components;
};

namespace detail {

// Multiples of π/2 only permute or flip axes.
inline bool axis_aligned(double angle) {
    const double quarter = angle / (std::numbers::pi / 2);
    return std::abs(quarter - std::round(quarter)) < 1e-12;
}

inline std::vector<std::pair<std::size_t, std::size_t>> interaction_pairs(const Component& c) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (c.condition_number() == 1.0 && c.transform().is_identity()) return out;
    if (c.theta()) {
        for (const auto& e : c.theta()->entries())
            if (!axis_aligned(e.angle)) out.emplace_back(e.p, e.q);
        return out;
    }
    const auto& r = c.rotation();
    for (std::size_t p = 0; p < c.dim(); ++p)
        for (std::size_t q = p + 1; q < c.dim(); ++q)
            for (std::size_t i = 0; i < c.dim(); ++i)
                if (std::abs(r(i, p)) > 1e-12 && std::abs(r(i, q)) > 1e-12) {
                    out.emplace_back(p, q);
                    break;
                }
    return out;
}

inline Separability separability_of(std::size_t dim, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (edges.empty()) return Separability::fully_separable;
    std::vector<std::size_t> parent(dim);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [p, q] : edges) parent[find(p)] = find(q);
    const std::size_t root = find(0);
    for (std::size_t v = 1; v < dim; ++v)
        if (find(v) != root) return Separability::partially_separable;
    return Separability::non_separable;
}

}  // namespace detail

/// Static description of an instance, derived from its parameters. The only
/// evaluations are f(m_k) at component centers (dominance check).
inline Characteristics classify(const ProblemInstance& inst) {
    Characteristics ch;
    const auto& comps = inst.components();
    for (const auto& c : comps) {
        ComponentTraits t;
        t.condition_number = c.condition_number();
        t.linearity = c.linearity();
        t.local_optima = c.transform().has_local_optima();
        t.symmetric = c.transform().is_symmetric();
        t.interactions = detail::interaction_pairs(c);
        t.separability = detail::separability_of(c.dim(), t.interactions);
        ch.components.push_back(std::move(t));
    }

    ch.basin_local_optima = std::any_of(ch.components.begin(), ch.components.end(),
                                        [](const ComponentTraits& t) { return t.local_optima; });
    for (const auto& t : ch.components) ch.condition_number = std::max(ch.condition_number, t.condition_number);
    ch.ill_conditioned = ch.condition_number > ill_conditioning_threshold;

    ch.linearity = ch.components.front().linearity;
    for (const auto& t : ch.components)
        if (t.linearity != *ch.linearity) ch.linearity.reset();

    ch.dominated = dominated_components(inst);

    if (comps.size() == 1) {
        ch.modality = ch.basin_local_optima ? Modality::multimodal_single_component : Modality::unimodal;
        ch.separability = ch.components.front().separability;
        ch.symmetric = ch.components.front().symmetric;
        return ch;
    }

    // Several components couple all variables through the min() and break symmetry.
    ch.modality = Modality::multimodal_multiple_components;
    ch.separability = Separability::non_separable;
    ch.symmetric = false;
    for (std::size_t k = 1; k < comps.size(); ++k)
        if (ch.components[k].interactions != ch.components[0].interactions) ch.varying_interactions = true;

    std::vector<const std::vector<double>*> centers;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        if (std::find(ch.dominated.begin(), ch.dominated.end(), k) != ch.dominated.end()) continue;
        const auto* m = &comps[k].center();
        if (std::none_of(centers.begin(), centers.end(), [&](const auto* c) { return *c == *m; }))
            centers.push_back(m);
    }
    ch.deceptive = centers.size() >= 2;
    return ch;
}

}  // namespace gnbg
