#include "hyperstab/stability.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hyperstab {

Profile linear_combination(double a, const Profile& x, double b, const Profile& y) {
    if (x.grid().size() != y.grid().size())
        throw InputError("linear_combination: grids differ");
    if (x.sector() != y.sector())
        throw InputError("linear_combination: sectors differ");
    const auto& nodes = x.grid().nodes();
    std::vector<double> vals(nodes.size()), ders(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        vals[i] = a * x.values()[i] + b * y.values()[i];
        ders[i] = a * x.derivative_at(nodes[i]) + b * y.derivative_at(nodes[i]);
    }
    Profile out(x.grid_ptr(), std::move(vals), std::move(ders), x.sector());

    const TailInfo &tx = x.tail(), &ty = y.tail();
    TailInfo t;
    if (tx.valid && ty.valid && std::abs(tx.exponent - ty.exponent) < 1e-9) {
        t = tx;
        t.amplitude = a * tx.amplitude + b * ty.amplitude;
        t.start = std::max(tx.start, ty.start);
        t.valid = t.amplitude != 0.0;
    } else if (tx.valid && (b == 0.0 || !ty.valid)) {
        t = tx;
        t.amplitude *= a;
        t.valid = a != 0.0;
    } else if (ty.valid && (a == 0.0 || !tx.valid)) {
        t = ty;
        t.amplitude *= b;
        t.valid = b != 0.0;
    }
    out.set_tail(t);
    return out;
}

StabilityContext::StabilityContext(Profile ground_state, ModelParams params)
    : U_(std::move(ground_state)), params_(params), grid_(U_.grid_ptr()),
      grid2d_(U_.grid_ptr(), /*extend=*/14.0) {
    S_ = best_constant(U_, params_);
    K_ = lp_norm_pow(U_, params_.p() + 1.0);
    noise_floor_ = std::abs(lambda_norm_sq(U_, params_) - K_) + 1e-13 * K_;
}

double StabilityContext::deficit(const Profile& u) const {
    const double e = lambda_norm_sq(u, params_);
    const double lp = lp_norm_pow(u, params_.p() + 1.0);
    const double d2 = e - S_ * std::pow(lp, 2.0 / (params_.p() + 1.0));
    const double scale = std::max(std::abs(e), 1e-300);
    const double est = 10.0 * noise_floor_ * (scale / K_);
    if (d2 < -est)
        throw NumericalError("inequality violation: deficit negative beyond quadrature noise");
    return std::sqrt(std::max(d2, 0.0));
}

double StabilityContext::cross_term(const Profile& u, double s, double c) const {
    if (u.sector() != 0) throw InputError("cross_term: radial profiles only");
    if (s < 0.0) throw InputError("cross_term: offset must be >= 0");
    const double p = params_.p();
    if (s < 1e-12)
        return c * weighted_inner(u, U_, U_, p - 1.0);
    return c * ball_integral_translated(
                   grid2d_, s, [&](double rho) { return u.value_at(rho); },
                   [&](double d) { return std::pow(U_.value_at(d), p); });
}

double StabilityContext::maximize_cross(const Profile& u, double& s_star,
                                        bool& boundary) const {
    const auto& so = scan_options;
    double best_s = 0.0, best_f = std::abs(cross_term(u, 0.0));
    const double ds = so.s_max / (so.coarse_points - 1);
    for (int j = 1; j < so.coarse_points; ++j) {
        const double s = j * ds;
        const double f = std::abs(cross_term(u, s));
        if (f > best_f) {
            best_f = f;
            best_s = s;
        }
    }
    boundary = (best_s == 0.0);
    double lo = std::max(0.0, best_s - ds), hi = std::min(so.s_max, best_s + ds);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = std::abs(cross_term(u, x1)), f2 = std::abs(cross_term(u, x2));
    while (hi - lo > so.golden_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = std::abs(cross_term(u, x2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = std::abs(cross_term(u, x1));
        }
    }
    s_star = 0.5 * (lo + hi);
    // near a flat interior maximum the value comparisons are quadrature-noise
    // limited; a boundary optimum this close to zero is the origin
    if (boundary && s_star < 1e-3) s_star = 0.0;
    return cross_term(u, s_star);
}

namespace {
// gradient coupling between two centres on the axis at offsets s1, s2
double grad_dot(double s1, double s2, double rho, double theta) {
    const TranslatedGeom g1 = translated_geometry(s1, rho, theta);
    const TranslatedGeom g2 = translated_geometry(s2, rho, theta);
    const double sh = std::sinh(rho);
    double tang = 0.0;
    if (sh > 1e-300 && std::sinh(g1.d) > 1e-300 && std::sinh(g2.d) > 1e-300) {
        const double t1 = std::sinh(s1) * std::sin(theta) / std::sinh(g1.d);
        const double t2 = std::sinh(s2) * std::sin(theta) / std::sinh(g2.d);
        tang = t1 * t2;
    }
    return g1.dd_drho * g2.dd_drho + tang;
}
} // namespace

StabilityReport StabilityContext::distance_to_manifold(const Profile& u) const {
    if (u.sector() != 0) throw InputError("distance_to_manifold: radial profiles only");
    StabilityReport rep;
    rep.deficit = deficit(u);

    double s_star = 0.0;
    bool boundary = false;
    const double F = maximize_cross(u, s_star, boundary);
    rep.s_star = s_star;
    rep.boundary_optimum = boundary;
    rep.c_star = F / K_;

    const double lam = params_.lambda();
    double dist2 = 0.0;
    if (s_star == 0.0) {
        const Profile diff = linear_combination(1.0, u, -rep.c_star, U_);
        dist2 = lambda_norm_sq(diff, params_);
    } else {
        const double c = rep.c_star;
        const double u_norm2 = lambda_norm_sq(u, params_);
        const double cross_grad = ball_integral_translated(
            grid2d_, s_star, [&](double rho) { return u.derivative_at(rho); },
            [&](double d) { return U_.derivative_at(d); }, 0, true);
        const double cross_mass = ball_integral_translated(
            grid2d_, s_star, [&](double rho) { return u.value_at(rho); },
            [&](double d) { return U_.value_at(d); });
        auto one = [](double) { return 1.0; };
        const double bub2 = ball_integral_translated(grid2d_, s_star, one, [&](double d) {
            const double du = U_.derivative_at(d);
            const double uv = U_.value_at(d);
            return du * du - lam * uv * uv;
        });
        dist2 = u_norm2 - 2.0 * c * (cross_grad - lam * cross_mass) + c * c * bub2;
    }
    rep.distance = std::sqrt(std::max(dist2, 0.0));
    rep.ratio = rep.deficit > 0.0 ? rep.distance / rep.deficit : 0.0;
    return rep;
}

StabilityReport StabilityContext::distance_to_solutions(const Profile& u) const {
    if (u.sector() != 0) throw InputError("distance_to_solutions: radial profiles only");
    StabilityReport rep;
    rep.deficit = deficit(u);
    double s_star = 0.0;
    bool boundary = false;
    const double F = maximize_cross(u, s_star, boundary);
    rep.s_star = s_star;
    rep.boundary_optimum = boundary;
    rep.c_star = 1.0;

    double dist2 = 0.0;
    if (s_star == 0.0) {
        const Profile diff = linear_combination(1.0, u, -1.0, U_);
        dist2 = lambda_norm_sq(diff, params_);
    } else {
        dist2 = lambda_norm_sq(u, params_) - 2.0 * F + K_;
    }
    rep.distance = std::sqrt(std::max(dist2, 0.0));
    rep.ratio = rep.deficit > 0.0 ? rep.distance / rep.deficit : 0.0;
    return rep;
}

StabilityReport StabilityContext::bubble_self_distance(double s0, double c0) const {
    StabilityReport rep;
    rep.c_star = c0;

    // squared lambda-norm of c0 U_{b(s0)} - U_{b(s)} by direct 2D quadrature;
    // the integrand is pointwise small near the optimum, so minimizing this
    // keeps full relative precision where the overlap scan would be noise bound
    const double lam = params_.lambda();
    const Axisym2D& g2 = grid2d_;
    auto diff_norm2 = [&](double s) {
        const auto& rho = g2.radial_nodes();
        const auto& th = g2.theta_nodes();
        long double acc = 0.0L;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            if (g2.radial_weights()[i] == 0.0) continue;
            long double row = 0.0L;
            for (std::size_t j = 0; j < th.size(); ++j) {
                const TranslatedGeom ga = translated_geometry(s0, rho[i], th[j]);
                const TranslatedGeom gb = translated_geometry(s, rho[i], th[j]);
                const double va = c0 * U_.value_at(ga.d), vb = U_.value_at(gb.d);
                const double da = c0 * U_.derivative_at(ga.d), db = U_.derivative_at(gb.d);
                const double gd = grad_dot(s0, s, rho[i], th[j]);
                const double grad2 = da * da - 2.0 * da * db * gd + db * db;
                row += (long double)g2.theta_weights()[j] *
                       (grad2 - lam * (va - vb) * (va - vb));
            }
            acc += (long double)g2.radial_weights()[i] * row;
        }
        return g2.omega_axis() * static_cast<double>(acc);
    };

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::max(0.0, s0 - 0.25), hi = s0 + 0.25;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = diff_norm2(x1), f2 = diff_norm2(x2);
    while (hi - lo > 1e-10) {
        if (f1 > f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = diff_norm2(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = diff_norm2(x1);
        }
    }
    rep.s_star = 0.5 * (lo + hi);
    rep.distance = std::sqrt(std::max(0.0, diff_norm2(rep.s_star)));
    return rep;
}

std::pair<Profile, double> StabilityContext::invert_operator(const Profile& f) const {
    SectorOperator op(grid_, f.sector(), params_.lambda());
    auto [phi_nodal, pairing] = op.solve(f.values());
    if (!(pairing >= 0.0))
        throw NumericalError("h_minus1_norm: singular operator, negative dual pairing");
    return {Profile(grid_, std::move(phi_nodal), f.sector()), std::sqrt(pairing)};
}

double StabilityContext::h_minus1_norm(const Profile& f) const {
    return invert_operator(f).second;
}

std::vector<RatioScanRow>
StabilityContext::stability_ratio_scan(const Profile& perturbation,
                                       const std::vector<double>& epsilons) const {
    if (perturbation.sector() != 0)
        throw InputError("stability_ratio_scan: radial perturbations only");
    const double pm1 = params_.p() - 1.0;
    const double proj =
        weighted_inner(perturbation, U_, U_, pm1) / weighted_inner(U_, U_, U_, pm1);
    const Profile psi = linear_combination(1.0, perturbation, -proj, U_);

    std::vector<RatioScanRow> rows;
    rows.reserve(epsilons.size());
    for (double eps : epsilons) {
        RatioScanRow row;
        row.eps = eps;
        row.deficit = 0.0;
        row.distance = 0.0;
        row.ratio_sq = 0.0;
        if (eps != 0.0) {
            const Profile u = linear_combination(1.0, U_, eps, psi);
            const StabilityReport rep = distance_to_manifold(u);
            row.deficit = rep.deficit;
            row.distance = rep.distance;
            if (rep.deficit > 0.0)
                row.ratio_sq = (rep.distance * rep.distance) / (rep.deficit * rep.deficit);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ElFamilyMember>
StabilityContext::make_el_family(const Profile& psi, double mu,
                                 const std::vector<double>& epsilons) const {
    if (psi.sector() != 0) throw InputError("make_el_family: sector-0 eigenfunction required");
    const double p = params_.p();
    std::vector<ElFamilyMember> fam;
    for (double eps : epsilons) {
        // u = U + eps psi with residual U^p + eps mu U^{p-1} psi - |u|^{p-1} u
        ElFamilyMember m;
        m.label = "eigen_perturbation";
        m.eps = eps;
        m.u = linear_combination(1.0, U_, eps, psi);
        m.residual_values.resize(grid_->size());
        for (std::size_t i = 0; i < grid_->size(); ++i) {
            const double Uv = U_.values()[i];
            const double uv = m.u.values()[i];
            m.residual_values[i] = std::pow(Uv, p) +
                                   eps * mu * std::pow(Uv, p - 1.0) * psi.values()[i] -
                                   std::copysign(std::pow(std::abs(uv), p), uv);
        }
        fam.push_back(std::move(m));
    }
    for (double eps : epsilons) {
        // u = (1+eps) U with residual ((1+eps) - (1+eps)^p) U^p
        ElFamilyMember m;
        m.label = "scaled_ground_state";
        m.eps = eps;
        m.u = linear_combination(1.0 + eps, U_, 0.0, U_);
        const double coef = (1.0 + eps) - std::pow(1.0 + eps, p);
        m.residual_values.resize(grid_->size());
        for (std::size_t i = 0; i < grid_->size(); ++i)
            m.residual_values[i] = coef * std::pow(U_.values()[i], p);
        fam.push_back(std::move(m));
    }
    return fam;
}

std::vector<ElScanRow>
StabilityContext::euler_lagrange_scan(const std::vector<ElFamilyMember>& family,
                                      double window) const {
    std::vector<ElScanRow> rows;
    rows.reserve(family.size());
    for (const auto& m : family) {
        ElScanRow row;
        row.label = m.label;
        row.eps = m.eps;
        row.energy = lambda_norm_sq(m.u, params_);
        row.in_window = row.energy >= (1.0 - window) * K_ && row.energy <= (1.0 + window) * K_;
        const StabilityReport rep = distance_to_solutions(m.u);
        row.distance = rep.distance;
        Profile f(grid_, m.residual_values, 0);
        row.residual = h_minus1_norm(f);
        const double floor = 1e-8 * std::sqrt(K_);
        row.ratio_defined = row.residual > floor && row.distance > floor;
        row.ratio = row.ratio_defined ? row.distance / row.residual : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace hyperstab
