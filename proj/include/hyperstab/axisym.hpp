#pragma once

#include "hyperstab/grid.hpp"
#include "hyperstab/profile.hpp"

#include <functional>
#include <vector>

namespace hyperstab {

// Quadrature support for axisymmetric functions F(rho, theta) on the ball
// model: the radial grid (optionally extended past rho_max so translated
// profiles keep their tails inside the domain) tensored with a Gauss rule in
// cos(theta) that integrates the sin^{n-2} surface weight exactly.
class Axisym2D {
public:
    Axisym2D(GridPtr grid, double extend = 12.0, int theta_points = 64);

    int n() const { return n_; }
    double omega_axis() const { return omega_axis_; } // |S^{n-2}|
    const std::vector<double>& radial_nodes() const { return rho_; }
    const std::vector<double>& radial_weights() const { return wr_; } // sinh^{n-1} folded
    const std::vector<double>& theta_nodes() const { return theta_; }
    const std::vector<double>& theta_weights() const { return wt_; }  // sin^{n-2} folded

    // tensor-product volume integral; only adequate for integrands smooth in
    // theta, use ball_integral_translated for translated-profile kernels
    double integrate(const std::function<double(double, double)>& F) const;

private:
    int n_;
    double omega_axis_;
    std::vector<double> rho_, wr_, theta_, wt_;
};

// Geometry of a profile translated to geodesic offset s along the symmetry
// axis: separation from the moved centre and the radial coupling of gradients.
struct TranslatedGeom {
    double d;        // distance from (rho, theta) to the centre
    double dd_drho;  // <grad rho, grad d>, i.e. partial d / partial rho
};
TranslatedGeom translated_geometry(double s, double rho, double theta);

// U(tau_b x) for radial U with d(0, b) = s.
double translated_value(const Profile& profile, double s, double rho, double theta);

// Field of the translated profile on the tensor nodes, row-major in
// (radial index, theta index). s = 0 reproduces the radial profile.
std::vector<double> translated_bubble_values(const Profile& profile, double s,
                                             const Axisym2D& grid2d);

// int_0^pi g(d(rho, s, theta)) cos^m(theta) [dd/drho] sin^{n-2}(theta) dtheta,
// computed by substituting the distance for the angle so sharply peaked
// translated kernels stay resolvable at any offset.
double angular_translated(int n, double s, double rho, const std::function<double(double)>& g,
                          int cos_power = 0, bool radial_coupling = false);

// Volume integral  int f(rho) g(d) cos^m(theta) [dd/drho] dv  over the ball,
// using the grid's radial rule (with extension) and the distance-variable
// angular integrals.
double ball_integral_translated(const Axisym2D& grid2d, double s,
                                const std::function<double(double)>& f_radial,
                                const std::function<double(double)>& g_dist,
                                int cos_power = 0, bool radial_coupling = false);

} // namespace hyperstab
