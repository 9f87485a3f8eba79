#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gnbg/errors.hpp"

namespace gnbg {

/// Dense square matrix, row-major.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    static SquareMatrix identity(std::size_t n) {
        SquareMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }
    std::span<const double> data() const noexcept { return data_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

    /// Naive triple-loop product.
    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        if (a.n_ != b.n_) throw InvalidArgument("matrix product: size mismatch");
        SquareMatrix c(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < a.n_; ++k) s += a(i, k) * b(k, j);
                c(i, j) = s;
            }
        return c;
    }

    SquareMatrix transposed() const {
        SquareMatrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// max |(MᵀM - I)_ij|
inline double orthogonality_defect(const SquareMatrix& m) {
    const std::size_t n = m.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += m(k, i) * m(k, j);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace gnbg
