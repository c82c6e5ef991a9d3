#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "durlab/kv.hpp"

namespace durlab {

/// Coefficients of the K-state exponential-affine economy. States follow a
/// first-order VAR X' = Pi X + sigma_X^T eps with eps ~ N(0, Sigma); log
/// dividend growth is g_bar - 0.5 sigma_D' Sigma sigma_D + phi' X + sigma_D' eps;
/// the SDF prices shocks at lambda_bar + theta X.
struct ModelParams {
    int K = 0;                 // state dimension
    int N = 0;                 // shock dimension
    Eigen::MatrixXd Pi;        // K x K transition
    Eigen::MatrixXd sigma_X;   // N x K state shock loadings
    Eigen::MatrixXd Sigma;     // N x N shock covariance, symmetric PSD
    Eigen::VectorXd phi;       // K growth loadings
    double g_bar = 0.0;        // mean growth
    Eigen::VectorXd sigma_D;   // N dividend shock loadings
    Eigen::VectorXd lambda_bar;  // N mean risk price
    Eigen::MatrixXd theta;     // N x K risk-price loadings: lambda_t = lambda_bar + theta X_t
    double r_f = 0.0;          // one-period risk-free rate
    Eigen::VectorXd gamma;     // K auxiliary recursion constant, zero in the baseline model

    /// Checks shapes, stationarity (spectral radius of Pi < 1) and that
    /// Sigma is symmetric PSD. Throws ValidationError.
    void validate() const;

    KvFile to_kv() const;
    static ModelParams from_kv(const KvFile& kv);
};

/// Solved strip coefficients: the log price-dividend ratio of the maturity-n
/// strip is A(n) + B(n)' X_t, with A(0) = 0 and B(0) = 0.
struct StripCoefficients {
    std::vector<double> A;            // A(0..n_max)
    std::vector<Eigen::VectorXd> B;   // B(0..n_max), each K x 1

    int n_max() const { return static_cast<int>(A.size()) - 1; }
    int K() const { return A.empty() ? 0 : static_cast<int>(B.front().size()); }
};

/// Runs the strip recursion out to n_max.
/// B(n) = (Pi' - theta' Sigma sigma_X) B(n-1) + phi - theta' Sigma sigma_D - gamma
/// A(n) = A(n-1) + g_bar - 0.5 sigma_D' Sigma sigma_D - r_f
///        - (sigma_D + sigma_X B(n-1))' Sigma lambda_bar
///        + 0.5 (sigma_D + sigma_X B(n-1))' Sigma (sigma_D + sigma_X B(n-1))
StripCoefficients solve_strip_coefficients(const ModelParams& params, int n_max);

/// Campbell-Shiller log-linearization constants at the linearization point
/// pd_bar: kappa1 = e^pd / (1 + e^pd), kappa0 = ln(1 + e^pd) - kappa1 pd.
std::pair<double, double> loglinearize(double pd_bar);

/// Fixed point of the market log price-dividend ratio pd = A + B' X under
/// the log-linearized return identity.
std::pair<double, Eigen::VectorXd> solve_market_pd(const ModelParams& params, double kappa0,
                                                   double kappa1);

/// A + B' X for one strip maturity; pure function.
double valuation_ratio(const StripCoefficients& coeffs, int n, const Eigen::VectorXd& x);

/// Inverts K observed strip log-ratios (maturity, value) back to the state
/// vector through the loading matrix built from B(n_i). Throws
/// DegeneracyError carrying the achieved rank when the matrix is rank
/// deficient (reciprocal condition number below 1e-10).
Eigen::VectorXd recover_states(const std::vector<std::pair<int, double>>& ratios,
                               const StripCoefficients& coeffs);

/// Writes (n, A, B_1..B_K) rows.
void write_strip_coefficients_csv(const std::string& path, const StripCoefficients& coeffs);

}  // namespace durlab
