#pragma once

#include <array>
#include <cfloat>
#include <cmath>
#include <span>
#include <vector>

#include "gnbg/errors.hpp"

namespace gnbg {

/// Amplitudes mu = (μ₁, μ₂) and frequencies omega = (ω₁..ω₄) of the
/// element-wise log-sinusoidal transform. μ₁, ω₁, ω₂ act on positive
/// elements; μ₂, ω₃, ω₄ on negative ones. All zero gives the identity map.
struct TransformParams {
    std::array<double, 2> mu{0.0, 0.0};
    std::array<double, 4> omega{0.0, 0.0, 0.0, 0.0};

    TransformParams() = default;
    TransformParams(std::array<double, 2> mu_, std::array<double, 4> omega_) : mu(mu_), omega(omega_) {
        validate();
    }

    /// μ₁ = μ₂ = mu and every ω = omega.
    static TransformParams symmetric(double mu, double omega) {
        return TransformParams({mu, mu}, {omega, omega, omega, omega});
    }

    void validate() const {
        for (double v : mu)
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidArgument("TransformParams: mu values must be finite and >= 0");
        for (double v : omega)
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidArgument("TransformParams: omega values must be finite and >= 0");
    }

    bool is_identity() const {
        return mu == std::array<double, 2>{0.0, 0.0} && omega == std::array<double, 4>{0.0, 0.0, 0.0, 0.0};
    }

    /// The positive and negative branches are mirror images of each other.
    bool is_symmetric() const {
        return mu[0] == mu[1] && ((omega[0] == omega[2] && omega[1] == omega[3]) ||
                                  (omega[0] == omega[3] && omega[1] == omega[2]));
    }

    /// Some branch has both a nonzero amplitude and a nonzero frequency.
    bool has_local_optima() const {
        return (mu[0] > 0.0 && (omega[0] > 0.0 || omega[1] > 0.0)) ||
               (mu[1] > 0.0 && (omega[2] > 0.0 || omega[3] > 0.0));
    }

    friend bool operator==(const TransformParams&, const TransformParams&) = default;
};

namespace detail {

// exp(log a + μ(sin(ω₁ log a) + sin(ω₂ log a))) for a > 0, computed as written.
inline double transform_branch(double a, double mu, double w1, double w2) {
    const double la = std::log(a);
    return std::exp(la + mu * (std::sin(w1 * la) + std::sin(w2 * la)));
}

}  // namespace detail

/// Scalar form of the transform. Zero maps to exactly 0; values whose
/// magnitude is below the smallest normal double are returned unchanged.
inline double transform_element(double a, const TransformParams& t) {
    if (a == 0.0) return 0.0;
    if (std::abs(a) < DBL_MIN) return a;
    if (a > 0.0) return detail::transform_branch(a, t.mu[0], t.omega[0], t.omega[1]);
    return -detail::transform_branch(-a, t.mu[1], t.omega[2], t.omega[3]);
}

/// out[j] = T(a[j]). `out` may alias `a`.
inline void apply_transform(std::span<const double> a, const TransformParams& t, std::span<double> out) {
    if (out.size() != a.size()) throw InvalidArgument("apply_transform: output size mismatch");
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (!std::isfinite(a[j])) throw InvalidArgument("apply_transform: non-finite input element");
        out[j] = transform_element(a[j], t);
    }
}

inline std::vector<double> apply_transform(std::span<const double> a, const TransformParams& t) {
    std::vector<double> out(a.size());
    apply_transform(a, t, out);
    return out;
}

}  // namespace gnbg
