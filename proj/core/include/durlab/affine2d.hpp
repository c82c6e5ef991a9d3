#pragma once

#include <Eigen/Dense>

#include "durlab/affine.hpp"
#include "durlab/kv.hpp"

namespace durlab {

/// Two-state special case: z drives expected dividend growth, y drives the
/// price of risk (lambda_t = lambda_bar + y_t, priced through sigma_lambda).
struct ModelParams2D {
    double rho_z = 0.0;
    double rho_y = 0.0;
    Eigen::VectorXd sigma_z;       // N
    Eigen::VectorXd sigma_y;       // N
    Eigen::VectorXd sigma_D;       // N
    Eigen::VectorXd sigma_lambda;  // N
    Eigen::MatrixXd Sigma;         // N x N
    double g_bar = 0.0;
    double lambda_bar = 0.0;
    double r_f = 0.0;

    int N() const { return static_cast<int>(sigma_z.size()); }
    void validate() const;

    /// Embeds the 2D economy as a K = 2 instance of the general model,
    /// state order (z, y).
    ModelParams to_general() const;

    /// Parameters of the same economy at a finer period (m subperiods per
    /// period): persistence roots, innovation loadings rescaled so
    /// stationary state variances match, dividend variance and rates split
    /// evenly. An approximation, not an exact time aggregation.
    ModelParams2D subperiod(int m) const;

    KvFile to_kv() const;
    static ModelParams2D from_kv(const KvFile& kv);
};

/// Closed-form pricing coefficients of the 2D model:
///   pd_t  = A_pd + B_pd y_t + C_pd z_t
///   s1_t  = A_1  + B_1  y_t + C_1  z_t   (C_1 = 1 exactly)
///   E_t[r_{t+1}] = A_er + B_er y_t
struct ClosedForm2D {
    double kappa0 = 0, kappa1 = 0;
    double A_pd = 0, B_pd = 0, C_pd = 0;
    double A_1 = 0, B_1 = 0, C_1 = 1;
    double A_er = 0, B_er = 0;

    double pd(double y, double z) const { return A_pd + B_pd * y + C_pd * z; }
    double s1(double y, double z) const { return A_1 + B_1 * y + C_1 * z; }
    double dr(double y, double z) const { return pd(y, z) - s1(y, z); }
    double expected_return(double y) const { return A_er + B_er * y; }

    KvFile to_kv() const;
};

/// Solves the 2D closed forms with Campbell-Shiller constants taken at
/// pd_bar. Throws ValidationError when kappa1 rho_z = 1 or the B_pd
/// denominator vanishes.
ClosedForm2D solve_2d(const ModelParams2D& params, double pd_bar);

/// Inverts (pd, s1) to the states (z, y). Requires B_pd != B_1 C_pd.
Eigen::Vector2d recover_states_2d(const ClosedForm2D& cf, double pd, double s1);

}  // namespace durlab
