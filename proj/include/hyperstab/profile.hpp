#pragma once

#include "hyperstab/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperstab {

// Fitted exponential tail A * exp(-alpha * rho) used beyond the last node the
// solver trusts.
struct TailInfo {
    bool valid = false;
    double exponent = 0.0;   // alpha
    double amplitude = 0.0;  // A
    double start = 0.0;      // values beyond this radius follow the pure exponential
};

// Natural/clamped cubic spline on an arbitrary strictly increasing node set.
class CubicSpline {
public:
    CubicSpline() = default;
    // If end slopes are provided the spline is clamped there, otherwise natural.
    CubicSpline(const std::vector<double>& x, const std::vector<double>& y,
                std::optional<double> left_slope = std::nullopt,
                std::optional<double> right_slope = std::nullopt);

    double value(double x) const;
    double derivative(double x) const;

private:
    std::size_t locate(double x) const;
    std::vector<double> x_, y_, m_; // m_: second derivatives at nodes
};

// Scalar function of the geodesic radius on a radial grid, restricted to one
// spherical-harmonic sector (l = 0 means radially symmetric).
class Profile {
public:
    Profile() = default;
    Profile(GridPtr grid, std::vector<double> values, int l = 0);
    Profile(GridPtr grid, std::vector<double> values, std::vector<double> derivatives, int l);

    const RadialGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    int sector() const { return l_; }

    const TailInfo& tail() const { return tail_; }
    void set_tail(const TailInfo& t) { tail_ = t; }
    bool has_derivatives() const { return derivs_.has_value(); }
    const std::vector<double>& derivatives() const;

    // Pointwise evaluation; beyond the grid the fitted tail is used when valid,
    // zero otherwise.
    double value_at(double rho) const;
    double derivative_at(double rho) const;

    double max_abs() const;

    // CSV round trip: parameter header row, then (rho, value) rows.
    void save_csv(const std::string& path, double n_or_p1, double p_or_zero,
                  double lambda) const;

private:
    void build_splines() const;

    GridPtr grid_;
    std::vector<double> values_;
    std::optional<std::vector<double>> derivs_;
    int l_ = 0;
    TailInfo tail_;

    mutable bool splines_built_ = false;
    mutable CubicSpline value_spline_;
    mutable CubicSpline deriv_spline_;
};

// Least-squares exponential fit log(values) ~ log A - alpha * rho over the
// window where values/max lies in [lo_frac, hi_frac]. Throws if the window is
// too thin to fit.
TailInfo fit_exponential_tail(const std::vector<double>& rho, const std::vector<double>& vals,
                              double lo_frac = 1e-10, double hi_frac = 1e-4);

} // namespace hyperstab
