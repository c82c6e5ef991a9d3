#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace durlab {

/// Seeded random source with a fixed, portable algorithm. mt19937_64 output
/// is pinned by the standard and the normal transform below is our own, so
/// identical seeds give bit-identical streams on every platform. The id
/// string goes into run metadata next to the seed.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr const char* algorithm_id() { return "mt19937_64/polar"; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the polar (Marsaglia) method.
    double normal();

    /// Draw from N(0, Sigma) given a precomputed Cholesky-like factor L
    /// with L L^T = Sigma.
    Eigen::VectorXd normal_vector(const Eigen::MatrixXd& chol_lower);

    /// Derives an independent stream for worker `index`, so parallel and
    /// serial execution of per-replication work coincide.
    static std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

   private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Robust PSD factor for shock covariances: Cholesky when positive
/// definite, eigenvalue square root otherwise (semidefinite allowed).
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& sigma);

}  // namespace durlab
