#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace scseg::testing {

Eigen::VectorXd random_alpha(const Dictionary& dict, TestRng& rng) {
    const double n = dict.block_size;
    Eigen::VectorXd alpha(dict.num_bases);
    alpha[0] = n * rng.uniform(40.0, 200.0);
    for (int k = 1; k < dict.num_bases; ++k) alpha[k] = rng.uniform(-7.5 * n, 7.5 * n);
    return alpha;
}

Eigen::VectorXd block_like_signal(const Dictionary& dict, TestRng& rng, double noise_sigma, double outlier_fraction) {
    Eigen::VectorXd f = dict.matrix * random_alpha(dict, rng);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (noise_sigma > 0) f[i] += rng.normal(0.0, noise_sigma);
        if (rng.uniform(0.0, 1.0) < outlier_fraction) f[i] += (rng.uniform(0.0, 1.0) < 0.5 ? -1 : 1) * rng.uniform(30, 120);
        f[i] = std::clamp(std::round(f[i]), 0.0, 255.0);
    }
    return f;
}

void stamp_model(PixelPlane& plane, const Dictionary& dict, const Eigen::VectorXd& alpha, int x0, int y0) {
    const Eigen::VectorXd v = dict.matrix * alpha;
    const int n = dict.block_size;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            plane.at(x0 + x, y0 + y) =
                static_cast<std::uint8_t>(std::clamp(std::lround(v[static_cast<Eigen::Index>(x) * n + y]), 0L, 255L));
}

PixelPlane plane_from_vector(const Eigen::VectorXd& v, int n) { return unvectorize_block(v, n); }

}  // namespace scseg::testing
