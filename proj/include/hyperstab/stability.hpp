#pragma once

#include "hyperstab/axisym.hpp"
#include "hyperstab/extremal.hpp"
#include "hyperstab/model.hpp"
#include "hyperstab/operators.hpp"
#include "hyperstab/profile.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperstab {

struct StabilityReport {
    double deficit = 0.0;
    double distance = 0.0;
    double c_star = 1.0;
    double s_star = 0.0;            // geodesic offset of the optimal centre
    double ratio = 0.0;             // distance / deficit when both defined
    double residual_hminus1 = 0.0;
    bool boundary_optimum = false;  // offset scan found no interior bracket
};

struct RatioScanRow {
    double eps, deficit, distance, ratio_sq; // ratio_sq = dist^2 / deficit^2
};

struct ElScanRow {
    std::string label;
    double eps = 0.0;
    double energy = 0.0;       // ||u||_lambda^2
    double distance = 0.0;     // dist(u, Z), unit-coefficient manifold
    double residual = 0.0;     // ||I'(u)||_{H^-1}
    double ratio = 0.0;        // distance / residual
    bool in_window = true;     // energy inside the (1 +- eps0) band
    bool ratio_defined = false;
};

struct ElFamilyMember {
    std::string label;
    double eps = 0.0;
    Profile u;
    std::vector<double> residual_values; // nodal values of -Lap u - lambda u - u^p
};

// a x + b y on a common grid; derivatives carried along, tail inherited from
// whichever term still dominates past its splice radius
Profile linear_combination(double a, const Profile& x, double b, const Profile& y);

// Stability diagnostics around one ground state.
class StabilityContext {
public:
    StabilityContext(Profile ground_state, ModelParams params);

    const Profile& ground_state() const { return U_; }
    const ModelParams& params() const { return params_; }
    double best_constant_value() const { return S_; }
    double ground_energy() const { return K_; } // ||U||_lambda^2 = S^{(p+1)/(p-1)}

    // (||u||_lambda^2 - S ||u||_{p+1}^2)^{1/2}, clamped inside quadrature noise
    double deficit(const Profile& u) const;

    // <u, c U_b(s)>_lambda via the stationary-equation identity c int u U_b^p dv
    double cross_term(const Profile& u, double s, double c = 1.0) const;

    // distance to the two-parameter manifold {c U_b}; radial inputs only
    StabilityReport distance_to_manifold(const Profile& u) const;

    // distance to the unit-coefficient manifold {U_b} (the solution manifold)
    StabilityReport distance_to_solutions(const Profile& u) const;

    // distance of the translated bubble c0 U_b(s0) itself to the solution
    // manifold, evaluated as genuine 2D quadrature of the difference field
    StabilityReport bubble_self_distance(double s0, double c0 = 1.0) const;

    // dual-norm machinery: solve (-Lap - lambda) phi = f in f's sector
    std::pair<Profile, double> invert_operator(const Profile& f) const;
    double h_minus1_norm(const Profile& f) const;

    // perturbation scan along a radial direction (projected against U in the
    // weighted product); rows ordered as the given epsilons
    std::vector<RatioScanRow> stability_ratio_scan(const Profile& perturbation,
                                                   const std::vector<double>& epsilons) const;

    std::vector<ElScanRow> euler_lagrange_scan(const std::vector<ElFamilyMember>& family,
                                               double window = 0.1) const;

    // standard scan family {U + eps Psi, (1+eps) U} with analytic residuals;
    // psi must be a sector-0 eigenfunction with eigenvalue mu
    std::vector<ElFamilyMember> make_el_family(const Profile& psi, double mu,
                                               const std::vector<double>& epsilons) const;

    struct ScanOptions {
        double s_max = 10.0;
        int coarse_points = 41;
        double golden_tol = 1e-9;
    };
    ScanOptions scan_options;

private:
    double maximize_cross(const Profile& u, double& s_star, bool& boundary) const;

    Profile U_;
    ModelParams params_;
    double S_ = 0.0;
    double K_ = 0.0;
    double noise_floor_ = 0.0; // absolute quadrature-noise estimate on energies
    GridPtr grid_;
    Axisym2D grid2d_;
};

} // namespace hyperstab
