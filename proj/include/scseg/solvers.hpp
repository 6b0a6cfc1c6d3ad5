#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "scseg/core.hpp"
#include "scseg/dictionary.hpp"

namespace scseg {

struct FitResult {
    SmoothModel model;
    Eigen::VectorXd residuals;  // f - P*alpha
    double objective_l1 = 0.0;  // sum |residuals|
    int iterations = 0;         // solver iterations actually run (0 for closed-form fits)
};

/// Scaled-form ADMM variables for  min ||z||_1  s.t.  P*alpha - z = f.
struct AdmmState {
    Eigen::VectorXd z;  // auxiliary, tracks P*alpha - f
    Eigen::VectorXd u;  // scaled dual
    double rho = 1.0;
};

enum class AlphaUpdate {
    kProjector,  // (P^T P)^{-1} P^T precomputed per dictionary
    kTranspose,  // P^T, valid only for orthonormal dictionaries
};

struct AdmmOptions {
    double rho = 1.0;
    int iterations = 200;
    bool early_stop = false;  // stop when primal and dual residuals fall below 1e-6 * sqrt(len)
    AlphaUpdate alpha_update = AlphaUpdate::kProjector;
};

/// sign(x) * max(|x| - kappa, 0)
inline double soft_threshold(double x, double kappa) {
    if (x > kappa) return x - kappa;
    if (x < -kappa) return x + kappa;
    return 0.0;
}

/// L2 fit over every entry of f. Throws std::invalid_argument on a length mismatch.
FitResult least_squares_fit(const Dictionary& dict, const Eigen::VectorXd& f);

/// L2 fit using only entries with include[i] != 0; residuals are reported for every entry.
/// Rank-deficient selections get the minimum-norm solution.
FitResult least_squares_fit_subset(const Dictionary& dict, const Eigen::VectorXd& f,
                                   std::span<const std::uint8_t> include);

/// Least-absolute-deviation fit by ADMM, starting from z = u = 0.
/// Throws std::invalid_argument on length mismatch, non-finite input, rho <= 0 or iterations < 1.
FitResult lad_fit_admm(const Dictionary& dict, const Eigen::VectorXd& f, const AdmmOptions& options);
FitResult lad_fit_admm(const Dictionary& dict, const Eigen::VectorXd& f, double rho, int iterations);

/// Same as lad_fit_admm but also hands back the final ADMM variables.
FitResult lad_fit_admm(const Dictionary& dict, const Eigen::VectorXd& f, const AdmmOptions& options,
                       AdmmState& state);

}  // namespace scseg
