#pragma once

#include <memory>
#include <vector>

namespace hyperstab {

struct GridSpec {
    int n = 3;                 // ambient dimension
    double rho_max = 30.0;
    int panels = 160;          // composite Gauss-Legendre panels on [0, rho_max]
    int points_per_panel = 8;
    double grading = 1.5;      // panel edges at rho_max * (k/panels)^grading
    double tail_tol = 1e-12;   // required bound on exp(-(n-1) rho_max)

    GridSpec refined() const {
        GridSpec g = *this;
        g.panels *= 2;
        return g;
    }
};

// Radial quadrature grid in the geodesic radius rho. Nodes are the panel
// Gauss-Legendre points plus both interval endpoints (carrying zero quadrature
// weight). quad_weights fold the sinh^{n-1} volume factor in at the nodes, so
// sum_i quad_weights[i] f(rho_i) approximates the integral of f sinh^{n-1} drho.
// Panels are graded toward the origin, where steep ground-state cores live.
class RadialGrid {
public:
    explicit RadialGrid(const GridSpec& spec);

    int n() const { return spec_.n; }
    double rho_max() const { return spec_.rho_max; }
    double tail_tol() const { return spec_.tail_tol; }
    double omega() const { return omega_; }          // |S^{n-1}|
    const GridSpec& spec() const { return spec_; }

    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& quad_weights() const { return quad_weights_; }
    const std::vector<double>& plain_weights() const { return plain_weights_; }
    const std::vector<double>& sinh_nodes() const { return sinh_nodes_; }
    const std::vector<double>& panel_edges() const { return panel_edges_; } // incl. 0, rho_max

    // omega * sum_i w_i f_i, the volume integral of a radial function.
    double integrate(const std::vector<double>& f) const;

private:
    GridSpec spec_;
    double omega_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> plain_weights_; // Gauss-Legendre weights for d(rho)
    std::vector<double> quad_weights_;  // plain_weights * sinh^{n-1}(rho)
    std::vector<double> sinh_nodes_;
    std::vector<double> panel_edges_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_radial_grid(const GridSpec& spec);

// Volume integral of node values against sinh^{n-1}; the harmonic index l is
// part of the signature because sector functions carry the same radial weight.
double integrate_radial(const RadialGrid& grid, const std::vector<double>& f, int l = 0);

} // namespace hyperstab
