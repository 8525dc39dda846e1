#include "hyperstab/axisym.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/geometry.hpp"
#include "hyperstab/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace hyperstab {

Axisym2D::Axisym2D(GridPtr grid, double extend, int theta_points) {
    if (!grid) throw InputError("Axisym2D: null grid");
    n_ = grid->n();
    omega_axis_ = sphere_surface(n_ - 1);

    rho_ = grid->nodes();
    wr_ = grid->quad_weights();
    if (extend > 0.0) {
        const QuadRule base = gauss_legendre(grid->spec().points_per_panel);
        const auto& edges = grid->panel_edges();
        const double h = edges[edges.size() - 1] - edges[edges.size() - 2];
        const int ext_panels = static_cast<int>(std::ceil(extend / h));
        for (int p = 0; p < ext_panels; ++p) {
            const QuadRule panel =
                map_to_interval(base, grid->rho_max() + p * h, grid->rho_max() + (p + 1) * h);
            for (std::size_t i = 0; i < panel.nodes.size(); ++i) {
                rho_.push_back(panel.nodes[i]);
                wr_.push_back(panel.weights[i] * std::pow(std::sinh(panel.nodes[i]), n_ - 1.0));
            }
        }
    }

    const QuadRule tq = gauss_ultraspherical(theta_points, 0.5 * (n_ - 3.0));
    theta_.resize(tq.nodes.size());
    wt_.resize(tq.nodes.size());
    for (std::size_t j = 0; j < tq.nodes.size(); ++j) {
        theta_[j] = std::acos(tq.nodes[j]);
        wt_[j] = tq.weights[j];
    }
}

double Axisym2D::integrate(const std::function<double(double, double)>& F) const {
    long double total = 0.0L;
    for (std::size_t i = 0; i < rho_.size(); ++i) {
        if (wr_[i] == 0.0) continue;
        long double row = 0.0L;
        for (std::size_t j = 0; j < theta_.size(); ++j)
            row += (long double)wt_[j] * F(rho_[i], theta_[j]);
        total += (long double)wr_[i] * row;
    }
    return omega_axis_ * static_cast<double>(total);
}

TranslatedGeom translated_geometry(double s, double rho, double theta) {
    const double d = geodesic_cosine(rho, s, theta);
    const double sd = std::sinh(d);
    TranslatedGeom g;
    g.d = d;
    if (sd < 1e-300) {
        g.dd_drho = 1.0;
        return g;
    }
    g.dd_drho =
        (std::sinh(rho) * std::cosh(s) - std::cosh(rho) * std::sinh(s) * std::cos(theta)) / sd;
    return g;
}

double translated_value(const Profile& profile, double s, double rho, double theta) {
    return profile.value_at(geodesic_cosine(rho, s, theta));
}

std::vector<double> translated_bubble_values(const Profile& profile, double s,
                                             const Axisym2D& grid2d) {
    if (s < 0.0) throw InputError("translated_bubble_values: offset must be >= 0");
    if (profile.sector() != 0) throw InputError("translated_bubble_values: profile must be radial");
    const auto& rho = grid2d.radial_nodes();
    const auto& th = grid2d.theta_nodes();
    std::vector<double> out(rho.size() * th.size());
    for (std::size_t i = 0; i < rho.size(); ++i)
        for (std::size_t j = 0; j < th.size(); ++j)
            out[i * th.size() + j] = translated_value(profile, s, rho[i], th[j]);
    return out;
}

namespace {

// moments int_0^pi cos^m(theta) sin^{n-2}(theta) dtheta
double angular_moment(int n, int m) {
    static thread_local int cache_n = -1;
    static thread_local std::vector<double> cache;
    if (cache_n != n) {
        const QuadRule tq = gauss_ultraspherical(24, 0.5 * (n - 3.0));
        cache.assign(8, 0.0);
        for (int mm = 0; mm < 8; ++mm)
            for (std::size_t j = 0; j < tq.nodes.size(); ++j)
                cache[mm] += tq.weights[j] * std::pow(tq.nodes[j], mm);
        cache_n = n;
    }
    return cache.at(m);
}

// one cosine-mapped Gauss panel of the distance-variable angular integral
double mapped_panel(int n, double s, double rho, const std::function<double(double)>& g,
                    int cos_power, bool radial_coupling, double xi_lo, double xi_hi,
                    double xi0, int npts) {
    const QuadRule base = gauss_legendre(npts);
    const double range = xi_hi - xi_lo;
    const double shs = std::sinh(rho) * std::sinh(s);
    const double shrms = std::sinh(rho - s);
    long double acc = 0.0L;
    for (int q = 0; q < npts; ++q) {
        // phi in (0, pi); xi - xi_lo = range * sin^2(phi/2)
        const double phi = 0.5 * std::numbers::pi * (1.0 + base.nodes[q]);
        const double wphi = 0.5 * std::numbers::pi * base.weights[q];
        const double sh = std::sin(0.5 * phi), ch = std::cos(0.5 * phi);
        const double xi = xi_lo + range * sh * sh;
        // 1 - cos(theta) = (cosh xi - cosh xi0) / (sinh rho sinh s), in product form
        const double one_minus_ct =
            2.0 * std::sinh(0.5 * (xi + xi0)) * std::sinh(0.5 * (xi - xi0)) / shs;
        const double ct = 1.0 - one_minus_ct;
        const double st2 = one_minus_ct * (1.0 + ct);
        if (st2 <= 0.0) continue;
        const double st = std::sqrt(st2);
        double val = g(xi) * std::pow(st, n - 3.0) * std::sinh(xi) / shs;
        if (cos_power == 1) val *= ct;
        else if (cos_power == 2) val *= ct * ct;
        else if (cos_power != 0) val *= std::pow(ct, cos_power);
        if (radial_coupling)
            val *= (shrms + std::cosh(rho) * std::sinh(s) * one_minus_ct) / std::sinh(xi);
        // d xi = range sin(phi/2) cos(phi/2) d phi
        acc += (long double)(wphi * range * sh * ch) * val;
    }
    return static_cast<double>(acc);
}

} // namespace

double angular_translated(int n, double s, double rho, const std::function<double(double)>& g,
                          int cos_power, bool radial_coupling) {
    if (s < 0.0 || rho < 0.0) throw InputError("angular_translated: radii must be >= 0");
    const double tiny = 1e-12;
    if (s < tiny || rho < tiny) {
        // distance is constant in theta; couplings reduce to plain moments
        const double d = std::max(rho, s);
        double base = g(d);
        if (radial_coupling) {
            if (rho < tiny && s >= tiny) {
                // dd/drho = -cos(theta) at the origin
                return -base * angular_moment(n, cos_power + 1);
            }
            // s ~ 0: dd/drho = 1
        }
        return base * angular_moment(n, cos_power);
    }

    const double xi0 = std::abs(rho - s);
    const double xi1 = rho + s;
    // the kernel mass concentrates within a few decay lengths of xi0
    const double cap = 12.0;
    if (xi1 - xi0 <= cap)
        return mapped_panel(n, s, rho, g, cos_power, radial_coupling, xi0, xi1, xi0, 64);
    return mapped_panel(n, s, rho, g, cos_power, radial_coupling, xi0, xi0 + cap, xi0, 64) +
           mapped_panel(n, s, rho, g, cos_power, radial_coupling, xi0 + cap, xi1, xi0, 48);
}

double ball_integral_translated(const Axisym2D& grid2d, double s,
                                const std::function<double(double)>& f_radial,
                                const std::function<double(double)>& g_dist,
                                int cos_power, bool radial_coupling) {
    const auto& rho = grid2d.radial_nodes();
    const auto& wr = grid2d.radial_weights();
    long double total = 0.0L;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (wr[i] == 0.0) continue;
        const double f = f_radial(rho[i]);
        if (f == 0.0) continue;
        total += (long double)wr[i] * f *
                 angular_translated(grid2d.n(), s, rho[i], g_dist, cos_power, radial_coupling);
    }
    return grid2d.omega_axis() * static_cast<double>(total);
}

} // namespace hyperstab
