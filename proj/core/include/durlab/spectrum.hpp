#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "durlab/series.hpp"

namespace durlab {

/// Smoothed-periodogram estimate on the Fourier grid over (0, pi]. The
/// density is normalized so its Riemann integral over (0, pi] matches the
/// sample (co)variance.
struct SpectrumEstimate {
    std::vector<double> frequencies;           // in (0, pi]
    std::vector<double> density;               // spectral density (real case)
    std::vector<std::complex<double>> cross;   // co/quad spectrum (cross case)
    int bandwidth = 0;                         // Daniell span actually used
    std::string method = "daniell";

    bool is_cross() const { return !cross.empty(); }
    /// Riemann integral of the (co-)density over (0, pi].
    double integral() const;
};

/// Daniell-window smoothed periodogram of a demeaned series.
/// bandwidth <= 0 picks ceil(sqrt(n)).
SpectrumEstimate spectral_density(const DatedSeries& series, int bandwidth = 0);
SpectrumEstimate spectral_density(const std::vector<double>& values, int bandwidth = 0);

/// Smoothed cross-periodogram of two aligned series; the real part
/// integrates to the sample covariance.
SpectrumEstimate cross_spectrum(const DatedSeries& a, const DatedSeries& b, int bandwidth = 0);
SpectrumEstimate cross_spectrum(const std::vector<double>& a, const std::vector<double>& b,
                                int bandwidth = 0);

/// OLS residual of a on b (with intercept); orthogonal to b in sample.
DatedSeries residualize(const DatedSeries& a, const DatedSeries& b);

/// Principal components of a panel. standardize = true works on the
/// correlation matrix. Loadings are sign-normalized so each component's
/// largest-magnitude loading is positive.
struct PcaResult {
    std::vector<std::string> variables;
    Eigen::VectorXd explained_variance_ratio;  // sorted descending, sums to 1
    Eigen::MatrixXd loadings;                  // columns are components
};
PcaResult pca(const Panel& panel, bool standardize = true);

/// Plot-ready CSV: frequency, cycle length in grid periods, then density
/// (spectral case) or co/quad components (cross case).
void write_spectrum_csv(const std::string& path, const SpectrumEstimate& est);

/// Plot-ready CSV: one (component, ratio) row per component, then one
/// (variable, loading1, loading2) row per input column.
void write_pca_csv(const std::string& path, const PcaResult& result);

}  // namespace durlab
