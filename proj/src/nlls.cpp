#include "incgap/nlls.hpp"

#include <cmath>
#include <string>

#include "incgap/error.hpp"

namespace incgap::nlls {

namespace {

constexpr const char* kModule = "nlls";

Eigen::MatrixXd inverse_normal_matrix(const Eigen::MatrixXd& jacobian) {
    const Eigen::MatrixXd jtj = jacobian.transpose() * jacobian;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(jtj);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() <= 1e-14 * ldlt.vectorD().maxCoeff()) {
        throw NumericalError(kModule, "singular normal matrix; parameters are not identified");
    }
    return ldlt.solve(Eigen::MatrixXd::Identity(jtj.rows(), jtj.cols()));
}

}  // namespace

Result levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd theta0, const Options& opts) {
    Result res;
    res.theta = std::move(theta0);
    fn(res.theta, res.residuals, res.jacobian);
    res.ssr = res.residuals.squaredNorm();
    if (!std::isfinite(res.ssr)) throw NumericalError(kModule, "non-finite SSR at starting point");

    double lambda = opts.initial_damping;
    Eigen::VectorXd trial_r;
    Eigen::MatrixXd trial_j;

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        res.iterations = iter;
        if (res.ssr == 0.0) {
            res.converged = true;
            return res;
        }
        const Eigen::MatrixXd jtj = res.jacobian.transpose() * res.jacobian;
        const Eigen::VectorXd grad = res.jacobian.transpose() * res.residuals;

        // Inner loop: raise damping until the step reduces SSR.
        bool accepted = false;
        while (lambda < 1e20) {
            Eigen::MatrixXd lhs = jtj;
            lhs.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
            const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
            if (!step.allFinite()) {
                lambda *= 10.0;
                continue;
            }
            const Eigen::VectorXd trial = res.theta + step;
            fn(trial, trial_r, trial_j);
            const double trial_ssr = trial_r.squaredNorm();
            if (std::isfinite(trial_ssr) && trial_ssr <= res.ssr) {
                const double decrease = res.ssr - trial_ssr;
                const double step_size = step.lpNorm<Eigen::Infinity>();
                const double prev_ssr = res.ssr;
                res.theta = trial;
                res.residuals = trial_r;
                res.jacobian = trial_j;
                res.ssr = trial_ssr;
                lambda = std::max(lambda / 10.0, 1e-12);
                accepted = true;
                if (decrease <= opts.rel_ssr_tol * prev_ssr || step_size < opts.step_tol) {
                    res.converged = true;
                    return res;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) {
            // No descent direction left at any damping: a stationary point.
            res.converged = grad.lpNorm<Eigen::Infinity>() <=
                            1e-8 * std::max(1.0, res.ssr);
            if (res.converged) return res;
            throw NumericalError(kModule, "damping exhausted without SSR decrease");
        }
    }
    throw NumericalError(kModule, "no convergence after " + std::to_string(opts.max_iterations) +
                                      " iterations");
}

Eigen::MatrixXd hc1_covariance(const Eigen::MatrixXd& jacobian, const Eigen::VectorXd& residuals) {
    const auto n = jacobian.rows();
    const auto k = jacobian.cols();
    if (n <= k) throw NumericalError(kModule, "HC1 covariance needs more observations than parameters");
    const Eigen::MatrixXd bread = inverse_normal_matrix(jacobian);
    const Eigen::MatrixXd weighted = jacobian.array().colwise() * residuals.array();
    const Eigen::MatrixXd meat = weighted.transpose() * weighted;
    const double scale = static_cast<double>(n) / static_cast<double>(n - k);
    return scale * bread * meat * bread;
}

Eigen::MatrixXd classical_covariance(const Eigen::MatrixXd& jacobian,
                                     const Eigen::VectorXd& residuals) {
    const auto n = jacobian.rows();
    const auto k = jacobian.cols();
    if (n <= k) throw NumericalError(kModule, "covariance needs more observations than parameters");
    const double s2 = residuals.squaredNorm() / static_cast<double>(n - k);
    return s2 * inverse_normal_matrix(jacobian);
}

}  // namespace incgap::nlls
