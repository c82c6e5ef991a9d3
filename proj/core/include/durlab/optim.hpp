#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace durlab {

struct NelderMeadResult {
    Eigen::VectorXd x;
    double fval = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    int max_iterations = 2000;
    double f_tolerance = 1e-10;
    double x_tolerance = 1e-9;
    double initial_step = 0.1;
};

/// Derivative-free simplex minimizer (standard reflect/expand/contract/
/// shrink coefficients). Deterministic given the start point.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& start,
                             const NelderMeadOptions& opt = {});

/// Central-difference Hessian of f at x.
Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x, double rel_step = 1e-4);

}  // namespace durlab
