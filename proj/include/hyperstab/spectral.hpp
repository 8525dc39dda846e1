#pragma once

#include "hyperstab/extremal.hpp"
#include "hyperstab/model.hpp"
#include "hyperstab/operators.hpp"
#include "hyperstab/profile.hpp"

#include <vector>

namespace hyperstab {

// Ordered generalized eigenvalues of (-Laplacian - lambda) / U^{p-1} in one
// spherical-harmonic sector, with the eigenfunctions as sector profiles.
struct SpectralResult {
    int l = 0;
    std::vector<double> eigenvalues;       // ascending
    std::vector<Profile> eigenfunctions;   // unit weighted norm
    std::vector<double> weighted_norms;    // independent quadrature of those norms
    double trust_cutoff = 0.0;             // eigenvalues above this are mesh artifacts
    int trusted_count = 0;
};

struct SpectralOptions {
    double trust_cutoff_factor = 4.0; // cutoff = factor * p
};

// k smallest eigenvalues of the sector-l pencil around the ground state.
SpectralResult sector_spectrum(const Profile& ground_state, const ModelParams& params,
                               int l, int k, const SpectralOptions& opts = {});

// |<Psi_1, U>_w| / (||Psi_1||_w ||U||_w) in the U^{p-1}-weighted product.
double first_eigenfunction_check(const SpectralResult& result, const Profile& ground_state,
                                 const ModelParams& params);

// Sector-1 profile obtained as the central difference of the translated-bubble
// family at geodesic offset h, projected on the first angular harmonic.
Profile phi_from_translation(const Profile& ground_state, const ModelParams& params, double h,
                             bool* step_warning = nullptr);

// Rayleigh quotient ||phi||_lambda^2 / int phi^2 U^{p-1} dv of a sector profile.
double rayleigh_quotient(const Profile& phi, const Profile& ground_state,
                         const ModelParams& params);

} // namespace hyperstab
