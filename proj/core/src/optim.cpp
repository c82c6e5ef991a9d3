#include "durlab/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace durlab {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& start, const NelderMeadOptions& opt) {
    const Eigen::Index n = start.size();
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    auto safe_f = [&](const Eigen::VectorXd& x) {
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    std::vector<Eigen::VectorXd> pts(n + 1);
    std::vector<double> vals(n + 1);
    pts[0] = start;
    vals[0] = safe_f(start);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd p = start;
        p[i] += (p[i] != 0.0 ? std::abs(p[i]) * opt.initial_step : opt.initial_step);
        pts[i + 1] = p;
        vals[i + 1] = safe_f(p);
    }

    auto order = [&]() {
        std::vector<std::size_t> idx(pts.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<Eigen::VectorXd> p2(pts.size());
        std::vector<double> v2(vals.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            p2[i] = pts[idx[i]];
            v2[i] = vals[idx[i]];
        }
        pts.swap(p2);
        vals.swap(v2);
    };

    NelderMeadResult res;
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        order();
        const double spread = vals[n] - vals[0];
        double xspread = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            xspread = std::max(xspread, (pts[n] - pts[0]).cwiseAbs()[i]);
        if (spread < opt.f_tolerance && xspread < opt.x_tolerance) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) centroid += pts[i];
        centroid /= static_cast<double>(n);

        Eigen::VectorXd xr = centroid + alpha * (centroid - pts[n]);
        const double fr = safe_f(xr);
        if (fr < vals[0]) {
            Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = safe_f(xe);
            if (fe < fr) {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            Eigen::VectorXd xc = centroid + rho * (pts[n] - centroid);
            const double fc = safe_f(xc);
            if (fc < vals[n]) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for (Eigen::Index i = 1; i <= n; ++i) {
                    pts[i] = pts[0] + sigma * (pts[i] - pts[0]);
                    vals[i] = safe_f(pts[i]);
                }
            }
        }
    }
    order();
    res.x = pts[0];
    res.fval = vals[0];
    res.iterations = it;
    return res;
}

Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x, double rel_step) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i)
        h[i] = rel_step * std::max(1.0, std::abs(x[i]));

    Eigen::MatrixXd H(n, n);
    const double f0 = f(x);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            if (i == j) {
                Eigen::VectorXd xp = x, xm = x;
                xp[i] += h[i];
                xm[i] -= h[i];
                H(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (h[i] * h[i]);
            } else {
                Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
                xpp[i] += h[i]; xpp[j] += h[j];
                xpm[i] += h[i]; xpm[j] -= h[j];
                xmp[i] -= h[i]; xmp[j] += h[j];
                xmm[i] -= h[i]; xmm[j] -= h[j];
                H(i, j) = H(j, i) =
                    (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h[i] * h[j]);
            }
        }
    }
    return H;
}

}  // namespace durlab
