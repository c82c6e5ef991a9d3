#include "durlab/affine.hpp"

#include <cmath>
#include <fstream>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"

namespace durlab {

void ModelParams::validate() const {
    if (K <= 0 || N <= 0) throw ValidationError("model dimensions must be positive");
    auto want = [&](const Eigen::MatrixXd& m, int r, int c, const char* name) {
        if (m.rows() != r || m.cols() != c)
            throw ValidationError(std::string("bad shape for ") + name);
    };
    want(Pi, K, K, "Pi");
    want(sigma_X, N, K, "sigma_X");
    want(Sigma, N, N, "Sigma");
    want(theta, N, K, "theta");
    if (phi.size() != K) throw ValidationError("bad shape for phi");
    if (sigma_D.size() != N) throw ValidationError("bad shape for sigma_D");
    if (lambda_bar.size() != N) throw ValidationError("bad shape for lambda_bar");
    if (gamma.size() != K) throw ValidationError("bad shape for gamma");

    if (!Sigma.isApprox(Sigma.transpose(), 1e-10))
        throw ValidationError("Sigma must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Sigma);
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
        throw ValidationError("Sigma must be positive semidefinite");

    const double spectral_radius = Pi.eigenvalues().cwiseAbs().maxCoeff();
    if (spectral_radius >= 1.0)
        throw ValidationError("Pi spectral radius " + format_double(spectral_radius) +
                              " violates stationarity");
}

KvFile ModelParams::to_kv() const {
    KvFile kv;
    kv.set("K", static_cast<double>(K));
    kv.set("N", static_cast<double>(N));
    kv.set("Pi", Pi);
    kv.set("sigma_X", sigma_X);
    kv.set("Sigma", Sigma);
    kv.set("phi", phi);
    kv.set("g_bar", g_bar);
    kv.set("sigma_D", sigma_D);
    kv.set("lambda_bar", lambda_bar);
    kv.set("theta", theta);
    kv.set("r_f", r_f);
    kv.set("gamma", gamma);
    return kv;
}

ModelParams ModelParams::from_kv(const KvFile& kv) {
    ModelParams p;
    p.K = static_cast<int>(kv.get_double("K"));
    p.N = static_cast<int>(kv.get_double("N"));
    p.Pi = kv.get_matrix("Pi");
    p.sigma_X = kv.get_matrix("sigma_X");
    p.Sigma = kv.get_matrix("Sigma");
    p.phi = kv.get_vector("phi");
    p.g_bar = kv.get_double("g_bar");
    p.sigma_D = kv.get_vector("sigma_D");
    p.lambda_bar = kv.get_vector("lambda_bar");
    p.theta = kv.get_matrix("theta");
    p.r_f = kv.get_double("r_f");
    p.gamma = kv.has("gamma") ? kv.get_vector("gamma") : Eigen::VectorXd::Zero(p.K);
    p.validate();
    return p;
}

StripCoefficients solve_strip_coefficients(const ModelParams& params, int n_max) {
    params.validate();
    if (n_max < 0) throw ValidationError("n_max must be nonnegative");

    const Eigen::MatrixXd recursion = params.Pi.transpose() -
                                      params.theta.transpose() * params.Sigma * params.sigma_X;
    const Eigen::VectorXd drift =
        params.phi - params.theta.transpose() * params.Sigma * params.sigma_D - params.gamma;
    const double growth_const =
        params.g_bar - 0.5 * params.sigma_D.dot(params.Sigma * params.sigma_D) - params.r_f;

    StripCoefficients out;
    out.A.resize(n_max + 1);
    out.B.resize(n_max + 1);
    out.A[0] = 0.0;
    out.B[0] = Eigen::VectorXd::Zero(params.K);
    for (int n = 1; n <= n_max; ++n) {
        const Eigen::VectorXd exposure = params.sigma_D + params.sigma_X * out.B[n - 1];
        out.B[n] = recursion * out.B[n - 1] + drift;
        out.A[n] = out.A[n - 1] + growth_const - exposure.dot(params.Sigma * params.lambda_bar) +
                   0.5 * exposure.dot(params.Sigma * exposure);
        if (!std::isfinite(out.A[n]) || !out.B[n].allFinite())
            throw NumericalError("strip recursion diverged at n = " + std::to_string(n));
    }
    return out;
}

std::pair<double, double> loglinearize(double pd_bar) {
    if (!std::isfinite(pd_bar)) throw ValidationError("pd_bar must be finite");
    // logistic form; numerically stable for large |pd_bar|
    const double kappa1 = 1.0 / (1.0 + std::exp(-pd_bar));
    const double kappa0 = std::log1p(std::exp(pd_bar)) - kappa1 * pd_bar;
    return {kappa0, kappa1};
}

std::pair<double, Eigen::VectorXd> solve_market_pd(const ModelParams& params, double kappa0,
                                                   double kappa1) {
    params.validate();
    const Eigen::MatrixXd theta_sx = params.theta.transpose() * params.Sigma * params.sigma_X;
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(params.K, params.K) -
                                   kappa1 * params.Pi.transpose() + kappa1 * theta_sx;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible())
        throw NumericalError("market pd system matrix (I - k1 Pi' + k1 theta' Sigma sigma_X) is singular");
    const Eigen::VectorXd rhs =
        params.phi - params.theta.transpose() * params.Sigma * params.sigma_D - params.gamma;
    const Eigen::VectorXd B = lu.solve(rhs);

    const Eigen::VectorXd v = kappa1 * params.sigma_X * B + params.sigma_D;
    const double A =
        (params.g_bar - params.r_f + kappa0 - v.dot(params.Sigma * params.lambda_bar) +
         0.5 * v.dot(params.Sigma * v) -
         0.5 * params.sigma_D.dot(params.Sigma * params.sigma_D)) /
        (1.0 - kappa1);
    if (!std::isfinite(A) || !B.allFinite())
        throw NumericalError("market pd solution is not finite");
    return {A, B};
}

double valuation_ratio(const StripCoefficients& coeffs, int n, const Eigen::VectorXd& x) {
    if (n < 0 || n > coeffs.n_max()) throw ValidationError("maturity outside solved range");
    if (x.size() != coeffs.K()) throw ValidationError("state dimension mismatch");
    return coeffs.A[n] + coeffs.B[n].dot(x);
}

Eigen::VectorXd recover_states(const std::vector<std::pair<int, double>>& ratios,
                               const StripCoefficients& coeffs) {
    const int K = coeffs.K();
    if (static_cast<int>(ratios.size()) != K)
        throw ValidationError("need exactly K = " + std::to_string(K) + " strip ratios");

    Eigen::MatrixXd loadings(K, K);
    Eigen::VectorXd rhs(K);
    for (int i = 0; i < K; ++i) {
        const auto& [n, value] = ratios[i];
        if (n < 1 || n > coeffs.n_max()) throw ValidationError("maturity outside solved range");
        loadings.row(i) = coeffs.B[n].transpose();
        rhs[i] = value - coeffs.A[n];
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(loadings, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const double rcond = sv[sv.size() - 1] / sv[0];
    if (!(rcond > 1e-10)) {
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-10 * sv[0]) ++rank;
        throw DegeneracyError("strip loading matrix rank " + std::to_string(rank) + " < K = " +
                                  std::to_string(K) + " (rcond " + format_double(rcond) + ")",
                              rank);
    }
    return svd.solve(rhs);
}

void write_strip_coefficients_csv(const std::string& path, const StripCoefficients& coeffs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "n,A";
    for (int k = 1; k <= coeffs.K(); ++k) out << ",B_" << k;
    out << "\n";
    for (int n = 0; n <= coeffs.n_max(); ++n) {
        out << n << "," << format_double(coeffs.A[n]);
        for (int k = 0; k < coeffs.K(); ++k) out << "," << format_double(coeffs.B[n][k]);
        out << "\n";
    }
}

}  // namespace durlab
