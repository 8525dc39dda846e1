#pragma once

#include "hyperstab/linalg.hpp"
#include "hyperstab/model.hpp"
#include "hyperstab/profile.hpp"

#include <functional>

namespace hyperstab {

// P1 finite-element discretization of the sector-l quadratic form
//   a(u,u) = int (u'^2 + [l(l+n-2)/sinh^2 - lambda] u^2) sinh^{n-1} drho
// on the grid nodes, with a Dirichlet condition at rho_max and, for l = 0, a
// natural condition at the origin (l >= 1 is Dirichlet there). Unknowns are
// the interior node values; index maps translate to full nodal vectors.
class SectorOperator {
public:
    SectorOperator(GridPtr grid, int l, double lambda);

    const SymTridiag& stiffness() const { return A_; }
    GridPtr grid_ptr() const { return grid_; }
    int sector() const { return l_; }
    double lambda() const { return lambda_; }
    std::size_t dof() const { return A_.size(); }

    // weighted mass matrix int w(rho) u v sinh^{n-1}, w given pointwise
    SymTridiag weighted_mass(const std::function<double(double)>& w) const;
    // diagonal (row-sum lumped) version
    std::vector<double> lumped_mass(const std::function<double(double)>& w) const;

    // stiffness coupling between the last interior dof and the Dirichlet node
    double dirichlet_coupling() const { return dirichlet_coupling_; }
    const std::vector<double>& load_mass() const { return load_mass_; }

    std::vector<double> restrict_to_dof(const std::vector<double>& nodal) const;
    std::vector<double> extend_to_nodes(const std::vector<double>& dof) const;

    // solve a(phi, .) = <f, .> given nodal values of f; returns nodal phi and
    // the duality pairing <f, phi>.
    std::pair<std::vector<double>, double> solve(const std::vector<double>& f_nodal) const;

private:
    GridPtr grid_;
    int l_;
    double lambda_;
    std::size_t first_node_ = 0; // 0 for l = 0, 1 otherwise
    SymTridiag A_;
    double dirichlet_coupling_ = 0.0;
    std::vector<double> load_mass_; // lumped unit-weight mass for load vectors
};

} // namespace hyperstab
