#pragma once

#include "hyperstab/model.hpp"
#include "hyperstab/profile.hpp"

namespace hyperstab {

struct ShootingOptions {
    double a_min = 1e-6;       // initial-height bracket search range
    double a_max = 1e8;
    // The trajectory tracks the separatrix only while the height error is below
    // the slow-mode contamination scale, so the bisection runs to extended
    // precision; anything looser pollutes the tail-fit window.
    long double bisect_rel_tol = 1e-18L;
    int max_bisect_iter = 200;
    long double ode_rel_tol = 1e-15L;
    // tail fit window as fractions of the centre height
    double tail_hi_frac = 1e-4;
    double tail_lo_frac = 1e-10;
};

// Positive radially decreasing ground state of
//   u'' + (n-1) coth(rho) u' + lambda u + u^p = 0,  u'(0) = 0,  u(inf) = 0,
// by bisection on the initial height. The returned profile carries nodal
// derivatives and a fitted exponential tail spliced in beyond the radius where
// the shot trajectory stops being trustworthy.
Profile solve_ground_state(const ModelParams& params, GridPtr grid, double tol = 1e-8,
                           const ShootingOptions& opts = {});

// Quadratic form  int (|u'|^2 + l(l+n-2) u^2 / sinh^2 - lambda u^2) dv,
// including the analytic tail correction when the profile has a fitted tail.
double lambda_norm_sq(const Profile& u, const ModelParams& params);

// int |u|^q dv with tail correction.
double lp_norm_pow(const Profile& u, double q);

// Weighted product  int u v w^pow dv  (pow applied to the weight profile).
double weighted_inner(const Profile& u, const Profile& v, const Profile& w, double pow);

// Best constant S = (int U^{p+1} dv)^{(p-1)/(p+1)} of a converged ground
// state; throws "normalization inconsistency" when the energy identity
// ||U||_lambda^2 = int U^{p+1} fails beyond consistency_tol.
double best_constant(const Profile& profile, const ModelParams& params,
                     double consistency_tol = 1e-6);

// |  ||U||^2 - int U^{p+1} |  /  ||U||^2, the converged-profile diagnostic.
double normalization_residual(const Profile& profile, const ModelParams& params);

// Flux-balance residual of the radial equation over quadrature panels,
// normalized by the profile scale; used as the convergence certificate.
double ode_flux_residual(const Profile& profile, const ModelParams& params);

} // namespace hyperstab
