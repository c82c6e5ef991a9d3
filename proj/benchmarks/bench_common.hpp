#pragma once

#include "durlab/affine2d.hpp"

namespace durlab::bench {

inline ModelParams2D economy() {
    ModelParams2D p;
    p.rho_z = 0.3;
    p.rho_y = 0.4;
    p.sigma_z = Eigen::Vector3d{0.10, 0.0, 0.0};
    p.sigma_y = Eigen::Vector3d{0.0, 0.6, 0.0};
    p.sigma_D = Eigen::Vector3d{0.03, 0.0, 0.06};
    p.sigma_lambda = Eigen::Vector3d{0.0, -0.8, 0.4};
    p.Sigma = Eigen::Matrix3d::Identity();
    p.g_bar = 0.05;
    p.lambda_bar = 0.4;
    p.r_f = 0.03;
    return p;
}

}  // namespace durlab::bench
