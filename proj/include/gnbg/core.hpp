#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnbg/errors.hpp"
#include "gnbg/rotation.hpp"
#include "gnbg/transform.hpp"

namespace gnbg {

/// Basin shape classes by the exponent λ.
enum class BasinLinearity { sub_linear, linear, super_linear };

inline BasinLinearity basin_linearity(double lambda) {
    if (lambda < 0.5) return BasinLinearity::sub_linear;
    if (lambda == 0.5) return BasinLinearity::linear;
    return BasinLinearity::super_linear;
}

inline const char* to_string(BasinLinearity b) {
    switch (b) {
        case BasinLinearity::sub_linear: return "sub-linear";
        case BasinLinearity::linear: return "linear";
        case BasinLinearity::super_linear: return "super-linear";
    }
    return "?";
}

/// Inputs for a Component. Give at most one of `theta` / `rotation`; with
/// neither, R = I.
struct ComponentParams {
    std::vector<double> center;
    double sigma = 0.0;
    std::vector<double> h_diag;
    std::optional<ThetaSpec> theta;
    std::optional<RotationMatrix> rotation;
    double lambda = 1.0;
    TransformParams transform;
};

/// One basin: σ + (T(R(x−m))ᵀ H T(R(x−m)))^λ.
class Component {
public:
    explicit Component(ComponentParams p)
        : center_(std::move(p.center)),
          sigma_(p.sigma),
          h_diag_(std::move(p.h_diag)),
          theta_(std::move(p.theta)),
          rotation_(RotationMatrix::identity(std::max<std::size_t>(center_.size(), 1))),
          lambda_(p.lambda),
          transform_(p.transform) {
        const std::size_t d = center_.size();
        if (d == 0) throw InvalidArgument("Component: center must be nonempty");
        for (double v : center_)
            if (!std::isfinite(v)) throw InvalidArgument("Component: center must be finite");
        if (!std::isfinite(sigma_)) throw InvalidArgument("Component: sigma must be finite");
        if (h_diag_.size() != d) throw InvalidArgument("Component: h_diag length must equal dim");
        for (double h : h_diag_)
            if (!(h > 0.0) || !std::isfinite(h))
                throw InvalidArgument("Component: h_diag entries must be finite and > 0");
        if (!(lambda_ > 0.0) || !std::isfinite(lambda_))
            throw InvalidArgument("Component: lambda must be finite and > 0");
        transform_.validate();
        if (theta_ && p.rotation) throw InvalidArgument("Component: give theta or rotation, not both");
        if (theta_) {
            if (theta_->dim() != d) throw InvalidArgument("Component: theta dim must equal dim");
            rotation_ = rotation_from_theta(*theta_);
        } else if (p.rotation) {
            if (p.rotation->dim() != d) throw InvalidArgument("Component: rotation dim must equal dim");
            rotation_ = std::move(*p.rotation);
        } else {
            theta_ = ThetaSpec(d);
        }
    }

    std::size_t dim() const noexcept { return center_.size(); }
    const std::vector<double>& center() const noexcept { return center_; }
    double sigma() const noexcept { return sigma_; }
    const std::vector<double>& h_diag() const noexcept { return h_diag_; }
    /// Absent when the component was built from a raw rotation matrix.
    const std::optional<ThetaSpec>& theta() const noexcept { return theta_; }
    const RotationMatrix& rotation() const noexcept { return rotation_; }
    double lambda() const noexcept { return lambda_; }
    const TransformParams& transform() const noexcept { return transform_; }

    /// max(h) / min(h)
    double condition_number() const {
        const auto [lo, hi] = std::minmax_element(h_diag_.begin(), h_diag_.end());
        return *hi / *lo;
    }

    BasinLinearity linearity() const { return basin_linearity(lambda_); }

    /// Value at x. Always ≥ σ; equals σ at the center.
    double operator()(std::span<const double> x) const {
        const std::size_t d = dim();
        if (x.size() != d)
            throw InvalidArgument("eval_component: point has " + std::to_string(x.size()) +
                                  " coordinates, expected " + std::to_string(d));
        thread_local std::vector<double> shifted, rotated;
        shifted.resize(d);
        rotated.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            if (!std::isfinite(x[i])) throw InvalidArgument("eval_component: point must be finite");
            shifted[i] = x[i] - center_[i];
        }
        rotation_.apply(shifted, rotated);
        // μ = 0 makes the transform exactly the identity; skip the log/exp round trip.
        const bool plain = transform_.mu[0] == 0.0 && transform_.mu[1] == 0.0;
        double quad = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double t = plain ? rotated[i] : transform_element(rotated[i], transform_);
            quad += t * h_diag_[i] * t;
        }
        return sigma_ + std::pow(quad, lambda_);
    }

    friend bool operator==(const Component& a, const Component& b) {
        return a.center_ == b.center_ && a.sigma_ == b.sigma_ && a.h_diag_ == b.h_diag_ &&
               a.theta_ == b.theta_ && a.rotation_ == b.rotation_ && a.lambda_ == b.lambda_ &&
               a.transform_ == b.transform_;
    }

private:
    std::vector<double> center_;
    double sigma_;
    std::vector<double> h_diag_;
    std::optional<ThetaSpec> theta_;
    RotationMatrix rotation_;
    double lambda_;
    TransformParams transform_;
};

inline double eval_component(const Component& c, std::span<const double> x) { return c(x); }

/// Which generator produced an instance, with its knobs and seed.
struct Provenance {
    std::string generator = "manual";
    std::map<std::string, double> knobs;
    std::uint64_t seed = 0;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// A box-bounded landscape: pointwise minimum over its components.
///
/// Evaluation costs O(o·d²): one matrix-vector product per component, skipped
/// for components whose rotation is the identity.
class ProblemInstance {
public:
    ProblemInstance(std::vector<double> lower, std::vector<double> upper, std::vector<Component> components,
                    Provenance provenance = {})
        : lower_(std::move(lower)),
          upper_(std::move(upper)),
          components_(std::move(components)),
          provenance_(std::move(provenance)) {
        if (components_.empty()) throw InvalidArgument("ProblemInstance: needs at least one component");
        const std::size_t d = components_.front().dim();
        if (lower_.size() != d || upper_.size() != d)
            throw InvalidArgument("ProblemInstance: bounds length must equal dim");
        for (std::size_t i = 0; i < d; ++i)
            if (!(lower_[i] < upper_[i]) || !std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
                throw InvalidArgument("ProblemInstance: requires finite lower < upper in every dimension");
        for (std::size_t k = 0; k < components_.size(); ++k) {
            const auto& c = components_[k];
            if (c.dim() != d) throw InvalidArgument("ProblemInstance: all components must share dim");
            for (std::size_t i = 0; i < d; ++i)
                if (c.center()[i] < lower_[i] || c.center()[i] > upper_[i])
                    throw InvalidArgument("ProblemInstance: component " + std::to_string(k) +
                                          " center lies outside the box");
        }
        // Ties in σ go to the lowest index.
        optimum_index_ = 0;
        for (std::size_t k = 1; k < components_.size(); ++k)
            if (components_[k].sigma() < components_[optimum_index_].sigma()) optimum_index_ = k;
    }

    std::size_t dim() const noexcept { return lower_.size(); }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    const Provenance& provenance() const noexcept { return provenance_; }

    double optimum_value() const { return components_[optimum_index_].sigma(); }
    const std::vector<double>& optimum_position() const { return components_[optimum_index_].center(); }
    std::size_t optimum_component() const noexcept { return optimum_index_; }

    double operator()(std::span<const double> x) const {
        double best = components_.front()(x);
        for (std::size_t k = 1; k < components_.size(); ++k) best = std::min(best, components_[k](x));
        return best;
    }

    friend bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
        return a.lower_ == b.lower_ && a.upper_ == b.upper_ && a.components_ == b.components_ &&
               a.provenance_ == b.provenance_;
    }

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<Component> components_;
    Provenance provenance_;
    std::size_t optimum_index_ = 0;
};

inline double evaluate(const ProblemInstance& inst, std::span<const double> x) { return inst(x); }

/// Default tolerance for dominance checks: 1e-12·max(1, |σ|).
inline double default_dominance_tol(double sigma) { return 1e-12 * std::max(1.0, std::abs(sigma)); }

/// Indices k with f(m_k) < σ_k − tol: components swallowed by another basin.
/// With tol < 0 the per-component default is used.
inline std::vector<std::size_t> dominated_components(const ProblemInstance& inst, double tol = -1.0) {
    std::vector<std::size_t> out;
    const auto& comps = inst.components();
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const double s = comps[k].sigma();
        const double t = tol >= 0.0 ? tol : default_dominance_tol(s);
        if (inst(comps[k].center()) < s - t) out.push_back(k);
    }
    return out;
}

}  // namespace gnbg
