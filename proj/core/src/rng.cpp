#include "durlab/rng.hpp"

#include <cmath>

#include "durlab/errors.hpp"

namespace durlab {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
}

Eigen::VectorXd Rng::normal_vector(const Eigen::MatrixXd& chol_lower) {
    Eigen::VectorXd z(chol_lower.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal();
    return chol_lower * z;
}

std::uint64_t Rng::split_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over (seed, index)
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols()) throw ValidationError("covariance must be square");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
    if (es.info() != Eigen::Success) throw NumericalError("eigen decomposition failed");
    Eigen::VectorXd ev = es.eigenvalues();
    const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] < -tol) throw ValidationError("covariance has a negative eigenvalue");
        ev[i] = ev[i] > 0 ? std::sqrt(ev[i]) : 0.0;
    }
    return es.eigenvectors() * ev.asDiagonal();
}

}  // namespace durlab
