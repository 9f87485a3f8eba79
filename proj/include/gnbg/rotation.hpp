#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gnbg/errors.hpp"
#include "gnbg/matrix.hpp"
#include "gnbg/random.hpp"

// Plane indices in this header are 0-based: the (p, q) plane with p < q.
// Documents and the CLI use 1-based indices.

namespace gnbg {

/// Upper-triangular matrix of plane-rotation angles (radians). Entries on and
/// below the diagonal are zero by construction.
class ThetaSpec {
public:
    struct Entry {
        std::size_t p;
        std::size_t q;
        double angle;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    explicit ThetaSpec(std::size_t dim) : dim_(dim), angles_(dim * dim, 0.0) {
        if (dim == 0) throw InvalidArgument("ThetaSpec: dim must be at least 1");
    }

    std::size_t dim() const noexcept { return dim_; }

    double angle(std::size_t p, std::size_t q) const {
        check_plane(p, q);
        return angles_[p * dim_ + q];
    }

    void set(std::size_t p, std::size_t q, double angle) {
        check_plane(p, q);
        if (!std::isfinite(angle)) throw InvalidArgument("ThetaSpec: angle must be finite");
        angles_[p * dim_ + q] = angle;
    }

    /// Nonzero entries in (p, q) row-major order.
    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        for (std::size_t p = 0; p + 1 < dim_; ++p)
            for (std::size_t q = p + 1; q < dim_; ++q)
                if (const double a = angles_[p * dim_ + q]; a != 0.0) out.push_back({p, q, a});
        return out;
    }

    std::size_t nonzero_count() const {
        std::size_t n = 0;
        for (double a : angles_) n += (a != 0.0);
        return n;
    }

    bool all_zero() const { return nonzero_count() == 0; }

    friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;

private:
    void check_plane(std::size_t p, std::size_t q) const {
        if (!(p < q) || q >= dim_)
            throw InvalidArgument("ThetaSpec: plane (" + std::to_string(p) + ", " +
                                  std::to_string(q) + ") requires p < q < " + std::to_string(dim_));
    }

    std::size_t dim_;
    std::vector<double> angles_;
};

/// Orthogonal d×d matrix. Immutable after construction.
class RotationMatrix {
public:
    static constexpr double orthogonality_tolerance = 1e-12;

    /// Wraps an arbitrary matrix; rejects it unless ‖MᵀM − I‖_max ≤ 1e-12.
    explicit RotationMatrix(SquareMatrix m) : m_(std::move(m)) {
        if (m_.size() == 0) throw InvalidArgument("RotationMatrix: dim must be at least 1");
        for (double v : m_.data())
            if (!std::isfinite(v)) throw InvalidArgument("RotationMatrix: entries must be finite");
        if (orthogonality_defect(m_) > orthogonality_tolerance)
            throw InvalidArgument("RotationMatrix: matrix is not orthogonal");
        identity_ = (m_ == SquareMatrix::identity(m_.size()));
    }

    static RotationMatrix identity(std::size_t dim) {
        return RotationMatrix(SquareMatrix::identity(dim), true);
    }

    std::size_t dim() const noexcept { return m_.size(); }
    const SquareMatrix& matrix() const noexcept { return m_; }
    double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    bool is_identity() const noexcept { return identity_; }

    /// out = R·v. For the identity the copy is bitwise equal to the dense product.
    void apply(std::span<const double> v, std::span<double> out) const {
        const std::size_t n = m_.size();
        if (identity_) {
            std::copy(v.begin(), v.end(), out.begin());
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = m_.row(i);
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += r[k] * v[k];
            out[i] = s;
        }
    }

    friend bool operator==(const RotationMatrix& a, const RotationMatrix& b) { return a.m_ == b.m_; }

private:
    friend RotationMatrix rotation_from_theta(const ThetaSpec&);
    friend RotationMatrix givens(std::size_t, std::size_t, std::size_t, double);

    RotationMatrix(SquareMatrix m, bool identity) : m_(std::move(m)), identity_(identity) {}

    SquareMatrix m_;
    bool identity_ = false;
};

/// Givens rotation in the (p, q) plane: identity except
/// G(p,p) = G(q,q) = cos θ, G(p,q) = −sin θ, G(q,p) = sin θ.
inline RotationMatrix givens(std::size_t dim, std::size_t p, std::size_t q, double theta) {
    if (dim == 0 || !(p < q) || q >= dim)
        throw InvalidArgument("givens: requires p < q < dim");
    SquareMatrix g = SquareMatrix::identity(dim);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    g(p, p) = c;
    g(q, q) = c;
    g(p, q) = -s;
    g(q, p) = s;
    const bool identity = (c == 1.0 && s == 0.0);
    return RotationMatrix(std::move(g), identity);
}

/// R = I · G(1,2) · G(1,3) ··· G(d−1,d) over the nonzero angles, outer loop on
/// p, inner on q, each factor multiplied on the right.
///
/// Right-multiplying by a Givens factor only touches columns p and q, so the
/// product is formed by updating those two columns. This gives the same bits as
/// the dense product: the extra terms are exact zeros.
inline RotationMatrix rotation_from_theta(const ThetaSpec& theta) {
    const std::size_t n = theta.dim();
    SquareMatrix r = SquareMatrix::identity(n);
    bool touched = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double a = theta.angle(p, q);
            if (a == 0.0) continue;
            touched = true;
            const double c = std::cos(a);
            const double s = std::sin(a);
            for (std::size_t i = 0; i < n; ++i) {
                const double rp = r(i, p);
                const double rq = r(i, q);
                r(i, p) = rp * c + rq * s;
                r(i, q) = rp * -s + rq * c;
            }
        }
    }
    const bool identity = !touched || r == SquareMatrix::identity(n);
    return RotationMatrix(std::move(r), identity);
}

/// Angles drawn uniformly from [lo, hi).
struct UniformAngles {
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
};

/// Angles drawn uniformly from a finite list of nonzero values.
struct AngleSet {
    std::vector<double> values;
};

using AngleSource = std::variant<UniformAngles, AngleSet>;

/// Each above-diagonal entry independently becomes nonzero with probability
/// `p_prob`, taking an angle from `source`; otherwise it stays zero.
/// p_prob = 0 gives the all-zero spec, p_prob = 1 a fully connected one.
inline ThetaSpec random_theta(std::size_t dim, double p_prob, const AngleSource& source, Rng& rng) {
    if (!(p_prob >= 0.0 && p_prob <= 1.0))
        throw InvalidArgument("random_theta: p_prob must lie in [0, 1]");
    if (const auto* u = std::get_if<UniformAngles>(&source); u && !(u->lo < u->hi))
        throw InvalidArgument("random_theta: uniform range requires lo < hi");
    if (const auto* s = std::get_if<AngleSet>(&source)) {
        if (s->values.empty()) throw InvalidArgument("random_theta: angle set is empty");
        for (double v : s->values)
            if (v == 0.0 || !std::isfinite(v))
                throw InvalidArgument("random_theta: angle set values must be finite and nonzero");
    }

    ThetaSpec theta(dim);
    for (std::size_t p = 0; p + 1 < dim; ++p) {
        for (std::size_t q = p + 1; q < dim; ++q) {
            if (!(rng.uniform01() < p_prob)) continue;
            double a = 0.0;
            if (const auto* u = std::get_if<UniformAngles>(&source)) {
                do {
                    a = rng.uniform(u->lo, u->hi);
                } while (a == 0.0);
            } else {
                const auto& vals = std::get<AngleSet>(source).values;
                a = vals[rng.uniform_index(vals.size())];
            }
            theta.set(p, q, a);
        }
    }
    return theta;
}

}  // namespace gnbg
