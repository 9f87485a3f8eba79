#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string_view>
#include <vector>

#include "gnbg/errors.hpp"

namespace gnbg {

/// Seeded 64-bit generator with named sub-streams.
///
/// Every stream is an mt19937_64 whose seed is a SplitMix64 mix of the user
/// seed and a 64-bit FNV-1a hash of the stream name. Draws for different
/// parameter groups (centers, sigmas, H, Theta, ...) therefore never share
/// state, and adding a new group does not perturb the existing ones.
///
/// Stream scheme identifier: "mt19937_64+splitmix64/fnv1a", version 1.
class Rng {
public:
    static constexpr std::string_view scheme = "mt19937_64+splitmix64/fnv1a";
    static constexpr int scheme_version = 1;

    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent stream keyed by (seed, name).
    static Rng stream(std::uint64_t seed, std::string_view name) {
        return Rng(seed ^ splitmix64(fnv1a(name)));
    }

    /// Child stream keyed by this generator's next output and `name`.
    Rng split(std::string_view name) { return Rng::stream(engine_(), name); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw InvalidArgument("uniform_index: n must be positive");
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return static_cast<std::size_t>(r % bound);
    }

    /// Beta(alpha, beta) draw built from two Gamma draws.
    double beta(double alpha, double beta) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw InvalidArgument("beta: shape parameters must be positive");
        std::gamma_distribution<double> ga(alpha, 1.0);
        std::gamma_distribution<double> gb(beta, 1.0);
        for (;;) {
            const double x = ga(engine_);
            const double y = gb(engine_);
            if (x + y > 0.0) return x / (x + y);
        }
    }

    /// Random permutation of 0..n-1 (Fisher-Yates).
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[uniform_index(i)]);
        return p;
    }

    static constexpr std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static constexpr std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gnbg
