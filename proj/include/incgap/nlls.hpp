#pragma once

#include <functional>

#include <Eigen/Dense>

namespace incgap::nlls {

/// Fills residuals r(theta) and their Jacobian dr/dtheta (n x k).
using ResidualFn =
    std::function<void(const Eigen::VectorXd& theta, Eigen::VectorXd& residuals, Eigen::MatrixXd& jacobian)>;

struct Options {
    int max_iterations = 200;
    double rel_ssr_tol = 1e-12;   // relative SSR decrease on an accepted step
    double step_tol = 1e-10;      // max-norm of the parameter step
    double initial_damping = 1e-3;
};

struct Result {
    Eigen::VectorXd theta;
    Eigen::VectorXd residuals;
    Eigen::MatrixXd jacobian;
    double ssr = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Damped Gauss-Newton with Marquardt scaling: solves
/// (J'J + lambda diag(J'J)) step = -J'r, shrinking lambda after an accepted
/// step and growing it after a rejected one. Throws NumericalError when the
/// iteration limit is reached without meeting either tolerance.
[[nodiscard]] Result levenberg_marquardt(const ResidualFn& fn, Eigen::VectorXd theta0,
                                         const Options& opts = {});

/// HC1 sandwich covariance (J'J)^-1 [sum r_i^2 J_i J_i'] (J'J)^-1 * n/(n-k).
/// `jacobian` may be either dr/dtheta or df/dtheta; the sign cancels.
[[nodiscard]] Eigen::MatrixXd hc1_covariance(const Eigen::MatrixXd& jacobian,
                                             const Eigen::VectorXd& residuals);

/// Classical covariance s^2 (J'J)^-1 with s^2 = SSR/(n-k).
[[nodiscard]] Eigen::MatrixXd classical_covariance(const Eigen::MatrixXd& jacobian,
                                                   const Eigen::VectorXd& residuals);

}  // namespace incgap::nlls
