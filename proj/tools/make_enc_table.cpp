// Regenerates the encompassing-test critical-value table embedded in
// core/src/forecast_eval.cpp. Simulates the nested null (unpredictable
// target, persistent irrelevant predictors) under the recursive scheme and
// prints 10%/5%/1% quantiles of the statistic on the (pi, k) grid.
//
//   durlab-make-enc-table [n_reps]

#include <algorithm>
#include <cstdio>
#include <vector>

#include <Eigen/Dense>

#include "durlab/regress.hpp"
#include "durlab/rng.hpp"

namespace {

double one_rep(durlab::Rng& rng, int R, int P, int k) {
    const int n = R + P;
    const double rho = 0.95;
    const double innov = std::sqrt(1.0 - rho * rho);

    Eigen::MatrixXd X(n, k + 1);
    Eigen::VectorXd y(n);
    std::vector<double> x(k, 0.0);
    for (int t = 0; t < n; ++t) {
        X(t, 0) = 1.0;
        for (int j = 0; j < k; ++j) {
            x[j] = rho * x[j] + innov * rng.normal();
            X(t, j + 1) = x[j];
        }
        y[t] = rng.normal();  // unpredictable target
    }

    // recursive scheme with running normal equations
    Eigen::MatrixXd xtx = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd xty = Eigen::VectorXd::Zero(k + 1);
    double ysum = 0.0;
    for (int t = 0; t < R; ++t) {
        xtx += X.row(t).transpose() * X.row(t);
        xty += X.row(t).transpose() * y[t];
        ysum += y[t];
    }
    double num = 0.0, den = 0.0;
    for (int t = R; t < n; ++t) {
        const Eigen::VectorXd beta = xtx.ldlt().solve(xty);
        const double u2 = y[t] - beta.dot(X.row(t));          // model error
        const double u1 = y[t] - ysum / t;                    // mean benchmark error
        num += u1 * u1 - u1 * u2;
        den += u2 * u2;
        xtx += X.row(t).transpose() * X.row(t);
        xty += X.row(t).transpose() * y[t];
        ysum += y[t];
    }
    return static_cast<double>(P) * (num / P) / (den / P);
}

double quantile(std::vector<double>& v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * (v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] * (1 - (pos - lo)) + v[hi] * (pos - lo);
}

}  // namespace

int main(int argc, char** argv) {
    const int n_reps = argc > 1 ? std::atoi(argv[1]) : 40000;
    const int R = 120;
    const double pi_grid[] = {0.2, 0.5, 1.0, 2.0, 4.0};
    const int k_grid[] = {1, 2, 3};

    std::printf("// ENC critical values, recursive scheme, R = %d, %d reps\n", R, n_reps);
    for (const char* level : {"cv10", "cv05", "cv01"}) std::printf("// %s rows: k = 1, 2, 3\n", level);

    std::vector<std::vector<std::vector<double>>> cvs(3);  // [level][k][pi]
    for (auto& l : cvs) l.assign(3, std::vector<double>(5, 0.0));

    for (int ki = 0; ki < 3; ++ki) {
        for (int pi_i = 0; pi_i < 5; ++pi_i) {
            const int P = static_cast<int>(pi_grid[pi_i] * R + 0.5);
            std::vector<double> stats(n_reps);
            for (int rep = 0; rep < n_reps; ++rep) {
                durlab::Rng rng(durlab::Rng::split_seed(20240801 + ki * 100 + pi_i, rep));
                stats[rep] = one_rep(rng, R, P, k_grid[ki]);
            }
            cvs[0][ki][pi_i] = quantile(stats, 0.90);
            cvs[1][ki][pi_i] = quantile(stats, 0.95);
            cvs[2][ki][pi_i] = quantile(stats, 0.99);
            std::fprintf(stderr, "k=%d pi=%.1f done\n", k_grid[ki], pi_grid[pi_i]);
        }
    }

    const char* names[] = {"cv10", "cv05", "cv01"};
    for (int level = 0; level < 3; ++level) {
        std::printf("    static constexpr double %s[n_k][n_pi] = {\n", names[level]);
        for (int ki = 0; ki < 3; ++ki) {
            std::printf("        {");
            for (int pi_i = 0; pi_i < 5; ++pi_i)
                std::printf("%.3f%s", cvs[level][ki][pi_i], pi_i + 1 < 5 ? ", " : "");
            std::printf("},\n");
        }
        std::printf("    };\n");
    }
    return 0;
}
