#include "hyperstab/profile.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace hyperstab {

CubicSpline::CubicSpline(const std::vector<double>& x, const std::vector<double>& y,
                         std::optional<double> left_slope,
                         std::optional<double> right_slope)
    : x_(x), y_(y) {
    const std::size_t n = x.size();
    if (n < 3 || y.size() != n) throw InputError("CubicSpline: need >= 3 nodes");

    std::vector<double> lower(n - 1), diag(n), upper(n - 1), rhs(n);
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    for (std::size_t i = 1; i + 1 < n; ++i) {
        lower[i - 1] = h(i - 1);
        diag[i] = 2.0 * (h(i - 1) + h(i));
        upper[i] = h(i);
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1));
    }
    if (left_slope) {
        diag[0] = 2.0 * h(0);
        upper[0] = h(0);
        rhs[0] = 6.0 * ((y_[1] - y_[0]) / h(0) - *left_slope);
    } else {
        diag[0] = 1.0;
        upper[0] = 0.0;
        rhs[0] = 0.0;
    }
    if (right_slope) {
        diag[n - 1] = 2.0 * h(n - 2);
        lower[n - 2] = h(n - 2);
        rhs[n - 1] = 6.0 * (*right_slope - (y_[n - 1] - y_[n - 2]) / h(n - 2));
    } else {
        diag[n - 1] = 1.0;
        lower[n - 2] = 0.0;
        rhs[n - 1] = 0.0;
    }
    m_ = solve_tridiag(lower, diag, upper, rhs);
}

std::size_t CubicSpline::locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin() - 1);
    return std::min(i, x_.size() - 2);
}

double CubicSpline::value(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

Profile::Profile(GridPtr grid, std::vector<double> values, int l)
    : grid_(std::move(grid)), values_(std::move(values)), l_(l) {
    if (!grid_) throw InputError("Profile: null grid");
    if (values_.size() != grid_->size()) throw InputError("Profile: length mismatch");
    if (l_ < 0) throw InputError("Profile: sector index must be >= 0");
}

Profile::Profile(GridPtr grid, std::vector<double> values, std::vector<double> derivatives,
                 int l)
    : Profile(std::move(grid), std::move(values), l) {
    if (derivatives.size() != values_.size())
        throw InputError("Profile: derivative length mismatch");
    derivs_ = std::move(derivatives);
}

const std::vector<double>& Profile::derivatives() const {
    if (!derivs_) throw Error("Profile: no stored derivatives");
    return *derivs_;
}

void Profile::build_splines() const {
    if (splines_built_) return;
    const auto& x = grid_->nodes();
    std::optional<double> s0, s1;
    if (derivs_) {
        s0 = (*derivs_).front();
        s1 = (*derivs_).back();
    } else if (l_ == 0) {
        s0 = 0.0; // even extension through the origin
    }
    value_spline_ = CubicSpline(x, values_, s0, s1);
    if (derivs_) deriv_spline_ = CubicSpline(x, *derivs_);
    splines_built_ = true;
}

double Profile::value_at(double rho) const {
    if (rho < 0.0) rho = -rho;
    if (tail_.valid && rho > tail_.start)
        return tail_.amplitude * std::exp(-tail_.exponent * rho);
    if (rho > grid_->rho_max()) return 0.0;
    build_splines();
    return value_spline_.value(rho);
}

double Profile::derivative_at(double rho) const {
    const double sgn = rho < 0.0 ? -1.0 : 1.0;
    if (rho < 0.0) rho = -rho;
    const double rmax = grid_->rho_max();
    if (tail_.valid && rho > tail_.start)
        return -sgn * tail_.exponent * tail_.amplitude * std::exp(-tail_.exponent * rho);
    if (rho > rmax) return 0.0;
    build_splines();
    return sgn * (derivs_ ? deriv_spline_.value(rho) : value_spline_.derivative(rho));
}

double Profile::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void Profile::save_csv(const std::string& path, double n_or_p1, double p_or_zero,
                       double lambda) const {
    std::ofstream out(path);
    if (!out) throw Error("Profile::save_csv: cannot open " + path);
    char buf[512];
    std::snprintf(buf, sizeof(buf), "n,p,lambda,l,tail_exponent\n%.17g,%.17g,%.17g,%d,%.17g\n",
                  n_or_p1, p_or_zero, lambda, l_, tail_.valid ? tail_.exponent : 0.0);
    out << buf << "rho,value\n";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", grid_->nodes()[i], values_[i]);
        out << buf;
    }
}

TailInfo fit_exponential_tail(const std::vector<double>& rho, const std::vector<double>& vals,
                              double lo_frac, double hi_frac) {
    double vmax = 0.0;
    for (double v : vals) vmax = std::max(vmax, std::abs(v));
    if (vmax <= 0.0) throw NumericalError("fit_exponential_tail: zero data");

    long double srr = 0, sr = 0, sy = 0, sry = 0, cnt = 0;
    double last_in_window = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double v = vals[i];
        if (v <= lo_frac * vmax || v >= hi_frac * vmax) continue;
        const double y = std::log(v);
        sr += rho[i];
        srr += rho[i] * rho[i];
        sy += y;
        sry += rho[i] * y;
        cnt += 1;
        last_in_window = rho[i];
    }
    if (cnt < 8) throw NumericalError("fit_exponential_tail: window too thin");
    const long double det = cnt * srr - sr * sr;
    const double slope = static_cast<double>((cnt * sry - sr * sy) / det);
    const double intercept = static_cast<double>((sy * srr - sr * sry) / det);
    if (slope >= 0.0) throw NumericalError("fit_exponential_tail: data not decaying");

    TailInfo t;
    t.valid = true;
    t.exponent = -slope;
    t.amplitude = std::exp(intercept);
    t.start = last_in_window;
    return t;
}

} // namespace hyperstab
