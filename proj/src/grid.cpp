#include "hyperstab/grid.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/geometry.hpp"
#include "hyperstab/quadrature.hpp"

#include <cmath>

namespace hyperstab {

RadialGrid::RadialGrid(const GridSpec& spec) : spec_(spec) {
    if (spec.n < 3) throw InputError("RadialGrid: dimension must be >= 3");
    if (spec.rho_max <= 0.0 || spec.panels < 1 || spec.points_per_panel < 2)
        throw InputError("RadialGrid: bad grid spec");
    if (std::exp(-(spec.n - 1.0) * spec.rho_max) >= spec.tail_tol)
        throw InputError("RadialGrid: rho_max too small for requested tail_tol");

    if (spec.grading < 1.0) throw InputError("RadialGrid: grading must be >= 1");
    omega_ = sphere_surface(spec.n);

    const QuadRule base = gauss_legendre(spec.points_per_panel);
    panel_edges_.resize(spec.panels + 1);
    for (int p = 0; p <= spec.panels; ++p)
        panel_edges_[p] =
            spec.rho_max * std::pow(static_cast<double>(p) / spec.panels, spec.grading);

    nodes_.push_back(0.0);
    plain_weights_.push_back(0.0);
    for (int p = 0; p < spec.panels; ++p) {
        const QuadRule panel = map_to_interval(base, panel_edges_[p], panel_edges_[p + 1]);
        for (std::size_t i = 0; i < panel.nodes.size(); ++i) {
            nodes_.push_back(panel.nodes[i]);
            plain_weights_.push_back(panel.weights[i]);
        }
    }
    nodes_.push_back(spec.rho_max);
    plain_weights_.push_back(0.0);

    sinh_nodes_.resize(nodes_.size());
    quad_weights_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        sinh_nodes_[i] = std::sinh(nodes_[i]);
        quad_weights_[i] = plain_weights_[i] * std::pow(sinh_nodes_[i], spec.n - 1.0);
    }
}

double RadialGrid::integrate(const std::vector<double>& f) const {
    if (f.size() != nodes_.size()) throw InputError("RadialGrid::integrate: length mismatch");
    long double s = 0.0L;
    for (std::size_t i = 0; i < f.size(); ++i) s += (long double)quad_weights_[i] * f[i];
    return omega_ * static_cast<double>(s);
}

GridPtr make_radial_grid(const GridSpec& spec) {
    return std::make_shared<const RadialGrid>(spec);
}

double integrate_radial(const RadialGrid& grid, const std::vector<double>& f, int l) {
    if (l < 0) throw InputError("integrate_radial: sector index must be >= 0");
    return grid.integrate(f);
}

} // namespace hyperstab
