#include "hyperstab/spectral.hpp"
#include "hyperstab/axisym.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/geometry.hpp"
#include "hyperstab/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace hyperstab {

SpectralResult sector_spectrum(const Profile& ground_state, const ModelParams& params,
                               int l, int k, const SpectralOptions& opts) {
    if (k < 1) throw InputError("sector_spectrum: count must be >= 1");
    if (l < 0) throw InputError("sector_spectrum: sector must be >= 0");
    for (double v : ground_state.values())
        if (!(v > 0.0))
            throw NumericalError("sector_spectrum: weight profile not strictly positive");

    GridPtr grid = ground_state.grid_ptr();
    const double pm1 = params.p() - 1.0;
    SectorOperator op(grid, l, params.lambda());
    SymTridiag M = op.weighted_mass(
        [&](double rho) { return std::pow(ground_state.value_at(rho), pm1); });

    SpectralResult res;
    res.l = l;
    res.eigenvalues = pencil_smallest_eigenvalues(op.stiffness(), M, k);
    if (res.eigenvalues.front() <= 0.0)
        throw NumericalError("sector_spectrum: nonpositive eigenvalue, pencil not definite");

    std::vector<std::vector<double>> prev;
    for (int j = 0; j < k; ++j) {
        auto v = pencil_eigenvector(op.stiffness(), M, res.eigenvalues[j], prev);
        prev.push_back(v);
        Profile phi(grid, op.extend_to_nodes(v), l);
        // re-orthogonalize in the quadrature inner product; the finite-element
        // mass matrix and the panel quadrature agree only to discretization
        // order, and downstream checks use the quadrature product
        std::vector<double> scaled = phi.values();
        for (const Profile& q : res.eigenfunctions) {
            const double c = weighted_inner(phi, q, ground_state, pm1);
            for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] -= c * q.values()[i];
            phi = Profile(grid, scaled, l);
        }
        const double wn = std::sqrt(weighted_inner(phi, phi, ground_state, pm1));
        for (auto& x : scaled) x /= wn;
        Profile unit(grid, std::move(scaled), l);
        res.weighted_norms.push_back(
            std::sqrt(weighted_inner(unit, unit, ground_state, pm1)));
        res.eigenfunctions.push_back(std::move(unit));
    }

    res.trust_cutoff = opts.trust_cutoff_factor * params.p();
    for (double mu : res.eigenvalues)
        if (mu <= res.trust_cutoff) ++res.trusted_count;
    return res;
}

double first_eigenfunction_check(const SpectralResult& result, const Profile& ground_state,
                                 const ModelParams& params) {
    if (result.l != 0) throw InputError("first_eigenfunction_check: needs the radial sector");
    const double pm1 = params.p() - 1.0;
    const Profile& psi1 = result.eigenfunctions.front();
    const double num = std::abs(weighted_inner(psi1, ground_state, ground_state, pm1));
    const double den = std::sqrt(weighted_inner(psi1, psi1, ground_state, pm1) *
                                 weighted_inner(ground_state, ground_state, ground_state, pm1));
    return num / den;
}

double rayleigh_quotient(const Profile& phi, const Profile& ground_state,
                         const ModelParams& params) {
    const double num = lambda_norm_sq(phi, params);
    const double den = weighted_inner(phi, phi, ground_state, params.p() - 1.0);
    return num / den;
}

Profile phi_from_translation(const Profile& ground_state, const ModelParams& params, double h,
                             bool* step_warning) {
    if (!(h > 0.0) || h >= 1.0)
        throw InputError("phi_from_translation: step must lie in (0, 1)");
    GridPtr grid = ground_state.grid_ptr();
    const int n = grid->n();

    const QuadRule tq = gauss_ultraspherical(48, 0.5 * (n - 3.0));
    double denom = 0.0;
    for (std::size_t j = 0; j < tq.nodes.size(); ++j)
        denom += tq.weights[j] * tq.nodes[j] * tq.nodes[j];

    // the difference quotient of the two opposite translates projects onto
    // cos(theta) as K1/h, with K1 the first angular moment of the translate
    auto g = [&](double xi) { return ground_state.value_at(xi); };
    const auto& nodes = grid->nodes();
    std::vector<double> vals(nodes.size(), 0.0);
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i)
        vals[i] = angular_translated(n, h, nodes[i], g, 1, false) / (h * denom);
    Profile phi(grid, std::move(vals), 1);

    if (step_warning) {
        const double q = rayleigh_quotient(phi, ground_state, params);
        *step_warning = std::abs(q - params.p()) > 0.1 * params.p();
    }
    return phi;
}

} // namespace hyperstab
