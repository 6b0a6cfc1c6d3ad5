#include "scseg/solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace scseg {
namespace {

void check_length(const Dictionary& dict, const Eigen::VectorXd& f, const char* who) {
    if (f.size() != dict.signal_length())
        throw std::invalid_argument(std::string(who) + ": signal length does not match dictionary");
}

FitResult make_result(const Dictionary& dict, const Eigen::VectorXd& f, Eigen::VectorXd alpha) {
    FitResult r;
    r.residuals = f - dict.matrix * alpha;
    r.objective_l1 = r.residuals.cwiseAbs().sum();
    r.model.coefficients = std::move(alpha);
    r.model.block_size = dict.block_size;
    return r;
}

}  // namespace

FitResult least_squares_fit(const Dictionary& dict, const Eigen::VectorXd& f) {
    check_length(dict, f, "least_squares_fit");
    return make_result(dict, f, dict.projector * f);
}

FitResult least_squares_fit_subset(const Dictionary& dict, const Eigen::VectorXd& f,
                                   std::span<const std::uint8_t> include) {
    check_length(dict, f, "least_squares_fit_subset");
    if (include.size() != static_cast<std::size_t>(f.size()))
        throw std::invalid_argument("least_squares_fit_subset: selection length mismatch");

    Eigen::Index rows = 0;
    for (auto s : include) rows += s != 0;
    if (rows == f.size()) return least_squares_fit(dict, f);

    Eigen::MatrixXd a(rows, dict.num_bases);
    Eigen::VectorXd b(rows);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        if (!include[static_cast<std::size_t>(i)]) continue;
        a.row(r) = dict.matrix.row(i);
        b[r] = f[i];
        ++r;
    }
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(dict.num_bases);
    if (rows > 0) alpha = a.completeOrthogonalDecomposition().solve(b);
    return make_result(dict, f, std::move(alpha));
}

FitResult lad_fit_admm(const Dictionary& dict, const Eigen::VectorXd& f, const AdmmOptions& options,
                       AdmmState& state) {
    check_length(dict, f, "lad_fit_admm");
    if (!f.allFinite()) throw std::invalid_argument("lad_fit_admm: non-finite input");
    if (!(options.rho > 0) || !std::isfinite(options.rho))
        throw std::invalid_argument("lad_fit_admm: rho must be positive");
    if (options.iterations < 1) throw std::invalid_argument("lad_fit_admm: iterations must be >= 1");

    const Eigen::MatrixXd& p = dict.matrix;
    const Eigen::MatrixXd pt = options.alpha_update == AlphaUpdate::kTranspose ? p.transpose() : dict.projector;
    const double kappa = 1.0 / options.rho;
    const double tol = 1e-6 * std::sqrt(static_cast<double>(f.size()));

    state.rho = options.rho;
    state.z = Eigen::VectorXd::Zero(f.size());
    state.u = Eigen::VectorXd::Zero(f.size());

    Eigen::VectorXd alpha(dict.num_bases);
    Eigen::VectorXd p_alpha(f.size());
    Eigen::VectorXd z_prev;
    int it = 0;
    while (it < options.iterations) {
        ++it;
        alpha.noalias() = pt * (f + state.z - state.u);
        p_alpha.noalias() = p * alpha;
        if (options.early_stop) z_prev = state.z;
        for (Eigen::Index i = 0; i < f.size(); ++i)
            state.z[i] = soft_threshold(p_alpha[i] - f[i] + state.u[i], kappa);
        state.u += p_alpha - state.z - f;

        if (options.early_stop) {
            const double primal = (p_alpha - state.z - f).norm();
            const double dual = options.rho * (p.transpose() * (state.z - z_prev)).norm();
            if (primal < tol && dual < tol) break;
        }
    }

    FitResult r = make_result(dict, f, std::move(alpha));
    r.iterations = it;
    return r;
}

FitResult lad_fit_admm(const Dictionary& dict, const Eigen::VectorXd& f, const AdmmOptions& options) {
    AdmmState state;
    return lad_fit_admm(dict, f, options, state);
}

FitResult lad_fit_admm(const Dictionary& dict, const Eigen::VectorXd& f, double rho, int iterations) {
    AdmmOptions options;
    options.rho = rho;
    options.iterations = iterations;
    return lad_fit_admm(dict, f, options);
}

}  // namespace scseg
