#include "durlab/spectrum.hpp"

#include <cmath>
#include <fstream>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"
#include "durlab/regress.hpp"

namespace durlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::complex<double>> dft(const std::vector<double>& x) {
    // plain O(n^2) transform; series here are at most ~1e5 points and the
    // acceptance budget tolerates it, but keep n moderate
    const std::size_t n = x.size();
    std::vector<std::complex<double>> X(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::complex<double> acc(0.0, 0.0);
        const double w = -2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        // incremental rotation avoids n^2 trig calls
        const std::complex<double> rot(std::cos(w), std::sin(w));
        std::complex<double> phase(1.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            acc += x[t] * phase;
            phase *= rot;
        }
        X[j] = acc;
    }
    return X;
}

// Cooley-Tukey radix-2 when n is a power of two, else the direct transform.
std::vector<std::complex<double>> fft_or_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0) return dft(x);
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = x[i];
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    return a;
}

std::vector<double> demean(const std::vector<double>& x) {
    double mu = 0;
    for (double v : x) mu += v;
    mu /= x.size();
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - mu;
    return out;
}

int effective_bandwidth(int requested, std::size_t n) {
    int bw = requested > 0 ? requested
                           : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (bw % 2 == 0) ++bw;  // odd span centers the window
    if (bw >= static_cast<int>(n) / 2)
        throw ValidationError("bandwidth must be below n/2");
    return bw;
}

template <typename T>
std::vector<T> daniell_smooth(const std::vector<T>& raw, int span) {
    const int n = static_cast<int>(raw.size());
    const int half = span / 2;
    std::vector<T> out(raw.size());
    for (int j = 0; j < n; ++j) {
        T acc{};
        int count = 0;
        for (int d = -half; d <= half; ++d) {
            const int idx = j + d;
            if (idx < 0 || idx >= n) continue;  // truncate at the edges, renormalize
            acc += raw[idx];
            ++count;
        }
        out[j] = acc / static_cast<double>(count);
    }
    return out;
}

}  // namespace

double SpectrumEstimate::integral() const {
    if (frequencies.empty()) return 0.0;
    const double step = frequencies.size() > 1 ? frequencies[1] - frequencies[0]
                                               : frequencies[0];
    double acc = 0.0;
    if (is_cross()) {
        for (const auto& c : cross) acc += c.real();
    } else {
        for (double d : density) acc += d;
    }
    return acc * step;
}

SpectrumEstimate spectral_density(const std::vector<double>& values, int bandwidth) {
    const std::size_t n = values.size();
    if (n < 32) throw ValidationError("need at least 32 observations");
    const int bw = effective_bandwidth(bandwidth, n);

    const std::vector<double> x = demean(values);
    const auto X = fft_or_dft(x);
    const std::size_t m = n / 2;

    std::vector<double> raw(m);
    for (std::size_t j = 1; j <= m; ++j)
        raw[j - 1] = std::norm(X[j]) / (static_cast<double>(n) * kPi);
    const std::vector<double> smooth = daniell_smooth(raw, bw);

    SpectrumEstimate est;
    est.bandwidth = bw;
    est.frequencies.resize(m);
    for (std::size_t j = 1; j <= m; ++j)
        est.frequencies[j - 1] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    est.density = smooth;
    return est;
}

SpectrumEstimate spectral_density(const DatedSeries& series, int bandwidth) {
    return spectral_density(series.values(), bandwidth);
}

SpectrumEstimate cross_spectrum(const std::vector<double>& a, const std::vector<double>& b,
                                int bandwidth) {
    if (a.size() != b.size()) throw ValidationError("series must be aligned");
    const std::size_t n = a.size();
    if (n < 32) throw ValidationError("need at least 32 observations");
    const int bw = effective_bandwidth(bandwidth, n);

    const auto A = fft_or_dft(demean(a));
    const auto B = fft_or_dft(demean(b));
    const std::size_t m = n / 2;

    std::vector<std::complex<double>> raw(m);
    for (std::size_t j = 1; j <= m; ++j)
        raw[j - 1] = A[j] * std::conj(B[j]) / (static_cast<double>(n) * kPi);
    const auto smooth = daniell_smooth(raw, bw);

    SpectrumEstimate est;
    est.bandwidth = bw;
    est.frequencies.resize(m);
    for (std::size_t j = 1; j <= m; ++j)
        est.frequencies[j - 1] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    est.cross = smooth;
    return est;
}

SpectrumEstimate cross_spectrum(const DatedSeries& a, const DatedSeries& b, int bandwidth) {
    Panel joined = align(a, b, "a", "b");
    return cross_spectrum(joined.column("a"), joined.column("b"), bandwidth);
}

DatedSeries residualize(const DatedSeries& a, const DatedSeries& b) {
    Panel joined = align(a, b, "a", "b");
    if (joined.rows() < 3) throw ValidationError("too few aligned observations");
    const auto& av = joined.column("a");
    const auto& bv = joined.column("b");
    Eigen::MatrixXd X(joined.rows(), 1);
    Eigen::VectorXd y(joined.rows());
    for (std::size_t i = 0; i < joined.rows(); ++i) {
        X(i, 0) = bv[i];
        y[i] = av[i];
    }
    OlsFit fit = ols(X, y, true);  // throws DegeneracyError for constant b
    std::vector<double> resid(fit.residuals.data(), fit.residuals.data() + fit.residuals.size());
    return DatedSeries(joined.dates(), std::move(resid), joined.frequency());
}

PcaResult pca(const Panel& panel, bool standardize) {
    const std::size_t p = panel.cols();
    const std::size_t n = panel.rows();
    if (p < 2) throw ValidationError("PCA needs at least 2 columns");
    if (n <= p) throw ValidationError("PCA needs more rows than columns");

    Eigen::MatrixXd X(n, p);
    for (std::size_t c = 0; c < p; ++c) {
        const auto& col = panel.column(panel.names()[c]);
        for (std::size_t r = 0; r < n; ++r) X(r, c) = col[r];
    }
    const Eigen::RowVectorXd mean = X.colwise().mean();
    X.rowwise() -= mean;
    if (standardize) {
        for (std::size_t c = 0; c < p; ++c) {
            const double sd = std::sqrt(X.col(c).squaredNorm() / (n - 1));
            if (sd <= 0)
                throw ValidationError("constant column '" + panel.names()[c] +
                                      "' cannot be standardized");
            X.col(c) /= sd;
        }
    }
    const Eigen::MatrixXd C = X.transpose() * X / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    if (es.info() != Eigen::Success) throw NumericalError("PCA eigen decomposition failed");

    PcaResult out;
    out.variables = panel.names();
    out.explained_variance_ratio.resize(p);
    out.loadings.resize(p, p);
    const double total = es.eigenvalues().sum();
    for (std::size_t i = 0; i < p; ++i) {  // eigenvalues ascending -> reverse
        const Eigen::Index src = static_cast<Eigen::Index>(p - 1 - i);
        out.explained_variance_ratio[i] = es.eigenvalues()[src] / total;
        Eigen::VectorXd v = es.eigenvectors().col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0) v = -v;
        out.loadings.col(i) = v;
    }
    return out;
}

void write_spectrum_csv(const std::string& path, const SpectrumEstimate& est) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << (est.is_cross() ? "frequency,cycle_periods,co,quad\n"
                           : "frequency,cycle_periods,density\n");
    for (std::size_t j = 0; j < est.frequencies.size(); ++j) {
        const double w = est.frequencies[j];
        out << format_double(w) << "," << format_double(2.0 * kPi / w);
        if (est.is_cross())
            out << "," << format_double(est.cross[j].real()) << ","
                << format_double(est.cross[j].imag());
        else
            out << "," << format_double(est.density[j]);
        out << "\n";
    }
}

void write_pca_csv(const std::string& path, const PcaResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "component,ratio\n";
    for (Eigen::Index c = 0; c < result.explained_variance_ratio.size(); ++c)
        out << (c + 1) << "," << format_double(result.explained_variance_ratio[c]) << "\n";
    out << "variable,loading1,loading2\n";
    for (std::size_t v = 0; v < result.variables.size(); ++v)
        out << result.variables[v] << "," << format_double(result.loadings(v, 0)) << ","
            << format_double(result.loadings(v, 1)) << "\n";
}

}  // namespace durlab
