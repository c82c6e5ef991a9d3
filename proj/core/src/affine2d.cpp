#include "durlab/affine2d.hpp"

#include <cmath>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"

namespace durlab {

void ModelParams2D::validate() const {
    if (std::abs(rho_z) >= 1.0) throw ValidationError("|rho_z| must be < 1");
    if (std::abs(rho_y) >= 1.0) throw ValidationError("|rho_y| must be < 1");
    const int n = N();
    if (n <= 0) throw ValidationError("shock dimension must be positive");
    if (sigma_y.size() != n || sigma_D.size() != n || sigma_lambda.size() != n)
        throw ValidationError("sigma vectors must share one shock dimension");
    if (Sigma.rows() != n || Sigma.cols() != n) throw ValidationError("bad shape for Sigma");
    if (!Sigma.isApprox(Sigma.transpose(), 1e-10))
        throw ValidationError("Sigma must be symmetric");
}

ModelParams ModelParams2D::to_general() const {
    validate();
    const int n = N();
    ModelParams p;
    p.K = 2;
    p.N = n;
    p.Pi = Eigen::Matrix2d{{rho_z, 0.0}, {0.0, rho_y}};
    p.sigma_X.resize(n, 2);
    p.sigma_X.col(0) = sigma_z;
    p.sigma_X.col(1) = sigma_y;
    p.Sigma = Sigma;
    p.phi = Eigen::Vector2d{1.0, 0.0};
    p.g_bar = g_bar;
    p.sigma_D = sigma_D;
    p.lambda_bar = lambda_bar * sigma_lambda;
    p.theta.resize(n, 2);
    p.theta.col(0).setZero();
    p.theta.col(1) = sigma_lambda;
    p.r_f = r_f;
    p.gamma = Eigen::Vector2d::Zero();
    return p;
}

ModelParams2D ModelParams2D::subperiod(int m) const {
    if (m < 1) throw ValidationError("subperiod count must be >= 1");
    validate();
    ModelParams2D p = *this;
    auto scale_state = [&](double rho, Eigen::VectorXd& sigma) {
        const double rho_m = rho >= 0 ? std::pow(rho, 1.0 / m)
                                      : -std::pow(-rho, 1.0 / m);  // odd root keeps the sign
        // keep the stationary variance: var = s^2 / (1 - rho^2) at both scales
        const double num = 1.0 - rho_m * rho_m;
        const double den = 1.0 - rho * rho;
        sigma *= std::sqrt(num / den);
        return rho_m;
    };
    p.rho_z = scale_state(rho_z, p.sigma_z);
    p.rho_y = scale_state(rho_y, p.sigma_y);
    p.sigma_D /= std::sqrt(static_cast<double>(m));
    p.sigma_lambda /= std::sqrt(static_cast<double>(m));
    p.g_bar /= m;
    p.r_f /= m;
    return p;
}

KvFile ModelParams2D::to_kv() const {
    KvFile kv;
    kv.set("rho_z", rho_z);
    kv.set("rho_y", rho_y);
    kv.set("sigma_z", sigma_z);
    kv.set("sigma_y", sigma_y);
    kv.set("sigma_D", sigma_D);
    kv.set("sigma_lambda", sigma_lambda);
    kv.set("Sigma", Sigma);
    kv.set("g_bar", g_bar);
    kv.set("lambda_bar", lambda_bar);
    kv.set("r_f", r_f);
    return kv;
}

ModelParams2D ModelParams2D::from_kv(const KvFile& kv) {
    ModelParams2D p;
    p.rho_z = kv.get_double("rho_z");
    p.rho_y = kv.get_double("rho_y");
    p.sigma_z = kv.get_vector("sigma_z");
    p.sigma_y = kv.get_vector("sigma_y");
    p.sigma_D = kv.get_vector("sigma_D");
    p.sigma_lambda = kv.get_vector("sigma_lambda");
    p.Sigma = kv.get_matrix("Sigma");
    p.g_bar = kv.get_double("g_bar");
    p.lambda_bar = kv.get_double("lambda_bar");
    p.r_f = kv.get_double("r_f");
    p.validate();
    return p;
}

KvFile ClosedForm2D::to_kv() const {
    KvFile kv;
    kv.set("kappa0", kappa0);
    kv.set("kappa1", kappa1);
    kv.set("A_pd", A_pd);
    kv.set("B_pd", B_pd);
    kv.set("C_pd", C_pd);
    kv.set("A_1", A_1);
    kv.set("B_1", B_1);
    kv.set("C_1", C_1);
    kv.set("A_er", A_er);
    kv.set("B_er", B_er);
    return kv;
}

ClosedForm2D solve_2d(const ModelParams2D& params, double pd_bar) {
    params.validate();
    ClosedForm2D cf;
    std::tie(cf.kappa0, cf.kappa1) = loglinearize(pd_bar);
    const double k1 = cf.kappa1;

    if (std::abs(1.0 - k1 * params.rho_z) < 1e-14)
        throw ValidationError("kappa1 * rho_z = 1: pd coefficient on z is unbounded");
    cf.C_pd = 1.0 / (1.0 - k1 * params.rho_z);

    const auto& S = params.Sigma;
    const double b_den =
        1.0 + k1 * params.sigma_y.dot(S * params.sigma_lambda) - k1 * params.rho_y;
    if (std::abs(b_den) < 1e-14)
        throw ValidationError("B_pd denominator 1 + k1 sigma_y' Sigma sigma_lambda - k1 rho_y is zero");
    cf.B_pd = -(params.sigma_D + k1 * cf.C_pd * params.sigma_z).dot(S * params.sigma_lambda) /
              b_den;

    const Eigen::VectorXd v =
        params.sigma_D + k1 * cf.B_pd * params.sigma_y + k1 * cf.C_pd * params.sigma_z;
    const double jensen_d = 0.5 * params.sigma_D.dot(S * params.sigma_D);
    cf.A_pd = (params.g_bar - params.r_f + cf.kappa0 - jensen_d +
               0.5 * v.dot(S * (v - 2.0 * params.lambda_bar * params.sigma_lambda))) /
              (1.0 - k1);

    cf.C_1 = 1.0;
    cf.B_1 = -params.sigma_lambda.dot(S * params.sigma_D);
    cf.A_1 = params.g_bar - params.r_f +
             cf.B_1 * params.lambda_bar;  // B_1 lambda_bar = -lambda_bar sigma_lambda' Sigma sigma_D

    cf.A_er = cf.kappa0 - (1.0 - k1) * cf.A_pd + params.g_bar - jensen_d;
    cf.B_er = -(1.0 - k1 * params.rho_y) * cf.B_pd;
    return cf;
}

Eigen::Vector2d recover_states_2d(const ClosedForm2D& cf, double pd, double s1) {
    // [pd - A_pd; s1 - A_1] = [[C_pd, B_pd], [C_1, B_1]] [z; y]
    Eigen::Matrix2d loadings{{cf.C_pd, cf.B_pd}, {cf.C_1, cf.B_1}};
    const double det = loadings.determinant();
    if (std::abs(det) < 1e-12)
        throw DegeneracyError("pd and s1 loadings are collinear (det " + format_double(det) + ")",
                              1);
    return loadings.inverse() * Eigen::Vector2d{pd - cf.A_pd, s1 - cf.A_1};
}

}  // namespace durlab
