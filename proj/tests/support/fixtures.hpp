#pragma once

// Shared generators for tests and the acceptance suite.

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "scseg/core.hpp"
#include "scseg/dictionary.hpp"

namespace scseg::testing {

class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
    }
    double normal(double mean, double sigma) { return std::normal_distribution<double>(mean, sigma)(engine_); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Coefficients with DC for a block mean in [40, 200] and AC in +-(7.5 * N).
Eigen::VectorXd random_alpha(const Dictionary& dict, TestRng& rng);

/// 8-bit block: round(P * alpha + noise), with `outlier_fraction` of entries pushed by +-[30, 120], clamped.
Eigen::VectorXd block_like_signal(const Dictionary& dict, TestRng& rng, double noise_sigma = 2.0,
                                  double outlier_fraction = 0.1);

/// Rounded, clamped P * alpha written into `plane` at (x0, y0).
void stamp_model(PixelPlane& plane, const Dictionary& dict, const Eigen::VectorXd& alpha, int x0, int y0);

/// Column-major vector -> square plane without rounding loss (values assumed integral).
PixelPlane plane_from_vector(const Eigen::VectorXd& v, int n);

}  // namespace scseg::testing
