#include "hyperstab/extremal.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <vector>

namespace hyperstab {

namespace {

struct State {
    long double u, v;
};

struct Rhs {
    int n;
    long double lambda, p;

    State operator()(long double rho, const State& y) const {
        const long double cth = std::cosh(rho) / std::sinh(rho);
        const long double up =
            y.u >= 0 ? std::pow(y.u, p) : -std::pow(-y.u, p);
        return {y.v, -(n - 1) * cth * y.v - lambda * y.u - up};
    }
};

// Dormand-Prince 5(4) step; returns the embedded error estimate.
State dp_step(const Rhs& f, long double t, const State& y, long double h, State& err) {
    auto ax = [&](const State& a, long double c, const State& b) {
        return State{a.u + c * b.u, a.v + c * b.v};
    };
    const State k1 = f(t, y);
    const State k2 = f(t + h / 5, ax(y, h / 5, k1));
    const State k3 = f(t + 3 * h / 10, {y.u + h * (3 * k1.u / 40 + 9 * k2.u / 40),
                                        y.v + h * (3 * k1.v / 40 + 9 * k2.v / 40)});
    const State k4 = f(t + 4 * h / 5,
                       {y.u + h * (44 * k1.u / 45 - 56 * k2.u / 15 + 32 * k3.u / 9),
                        y.v + h * (44 * k1.v / 45 - 56 * k2.v / 15 + 32 * k3.v / 9)});
    const State k5 =
        f(t + 8 * h / 9,
          {y.u + h * (19372 * k1.u / 6561 - 25360 * k2.u / 2187 + 64448 * k3.u / 6561 -
                      212 * k4.u / 729),
           y.v + h * (19372 * k1.v / 6561 - 25360 * k2.v / 2187 + 64448 * k3.v / 6561 -
                      212 * k4.v / 729)});
    const State k6 =
        f(t + h, {y.u + h * (9017 * k1.u / 3168 - 355 * k2.u / 33 + 46732 * k3.u / 5247 +
                             49 * k4.u / 176 - 5103 * k5.u / 18656),
                  y.v + h * (9017 * k1.v / 3168 - 355 * k2.v / 33 + 46732 * k3.v / 5247 +
                             49 * k4.v / 176 - 5103 * k5.v / 18656)});
    const State y5 = {y.u + h * (35 * k1.u / 384 + 500 * k3.u / 1113 + 125 * k4.u / 192 -
                                 2187 * k5.u / 6784 + 11 * k6.u / 84),
                      y.v + h * (35 * k1.v / 384 + 500 * k3.v / 1113 + 125 * k4.v / 192 -
                                 2187 * k5.v / 6784 + 11 * k6.v / 84)};
    const State k7 = f(t + h, y5);
    const State y4 = {
        y.u + h * (5179 * k1.u / 57600 + 7571 * k3.u / 16695 + 393 * k4.u / 640 -
                   92097 * k5.u / 339200 + 187 * k6.u / 2100 + k7.u / 40),
        y.v + h * (5179 * k1.v / 57600 + 7571 * k3.v / 16695 + 393 * k4.v / 640 -
                   92097 * k5.v / 339200 + 187 * k6.v / 2100 + k7.v / 40)};
    err = {y5.u - y4.u, y5.v - y4.v};
    return y5;
}

// Advance the state from t to t_end with adaptive steps.
void advance(const Rhs& f, long double& t, State& y, long double t_end, long double rtol,
             long double atol) {
    long double h = std::min<long double>(t_end - t, 0.05L);
    while (t < t_end) {
        h = std::min(h, t_end - t);
        State err;
        const State ynew = dp_step(f, t, y, h, err);
        const long double sc_u = atol + rtol * std::max(std::abs(y.u), std::abs(ynew.u));
        const long double sc_v = atol + rtol * std::max(std::abs(y.v), std::abs(ynew.v));
        const long double e =
            std::max(std::abs(err.u) / sc_u, std::abs(err.v) / sc_v);
        if (e <= 1.0L) {
            t += h;
            y = ynew;
            h *= std::min<long double>(5.0L, 0.9L * std::pow(std::max(e, 1e-30L), -0.2L));
        } else {
            h *= std::max<long double>(0.2L, 0.9L * std::pow(e, -0.2L));
        }
        if (h < 1e-14L) throw NumericalError("ode step underflow");
    }
}

// Taylor start around the regular singular point rho = 0.
State series_start(const ModelParams& mp, long double a, long double rho) {
    const long double lam = mp.lambda(), p = mp.p();
    const int n = mp.n();
    const long double ap = std::pow(a, p);
    const long double c2 = -(lam * a + ap) / (2.0L * n);
    const long double c4 =
        -c2 * (lam + p * std::pow(a, p - 1.0L) + 2.0L * (n - 1.0L) / 3.0L) / (4.0L * n + 8.0L);
    return {a + c2 * rho * rho + c4 * rho * rho * rho * rho,
            2.0L * c2 * rho + 4.0L * c4 * rho * rho * rho};
}

enum class Shot { CrossesZero, FailsToDecay, Undecided };

struct Trajectory {
    std::vector<double> rho, u, v; // states at requested checkpoints, in order
    Shot outcome = Shot::Undecided;
};

// Integrate an initial height through the checkpoint list, classifying the
// trajectory as the separatrix bisection needs.
Trajectory shoot(const ModelParams& mp, long double a, const std::vector<double>& checkpoints,
                 long double rel_tol, long double rho_start) {
    Trajectory out;
    const Rhs f{mp.n(), static_cast<long double>(mp.lambda()),
                static_cast<long double>(mp.p())};
    // keep the Taylor start well inside the core curvature scale, which shrinks
    // as the trial height grows
    const long double curvature =
        std::max<long double>(1.0L, mp.lambda() + mp.p() * std::pow(a, mp.p() - 1.0L));
    const long double rho_s = std::min(rho_start, 0.02L / std::sqrt(curvature));
    const long double s_mid = -0.5L * (mp.n() - 1.0L);
    const long double decay_gate = 1e-4L * a;
    const long double floor_gate = 1e-22L * a;

    long double t = rho_s;
    State y = series_start(mp, a, rho_s);
    for (double target : checkpoints) {
        if (target <= static_cast<double>(rho_s)) continue;
        advance(f, t, y, target, rel_tol, 1e-24L * a);
        if (y.u <= 0.0L) {
            out.outcome = Shot::CrossesZero;
            return out;
        }
        out.rho.push_back(static_cast<double>(t));
        out.u.push_back(static_cast<double>(y.u));
        out.v.push_back(static_cast<double>(y.v));
        if (y.u < decay_gate && y.v / y.u > s_mid) {
            out.outcome = Shot::FailsToDecay;
            return out;
        }
        if (y.u > 2.0L * a && y.v > 0.0L) {
            out.outcome = Shot::FailsToDecay;
            return out;
        }
        if (y.u < floor_gate) {
            out.outcome = Shot::Undecided; // deep tail reached, nothing more to learn
            return out;
        }
    }
    out.outcome = (y.v / y.u > s_mid) ? Shot::FailsToDecay : Shot::CrossesZero;
    return out;
}

} // namespace

Profile solve_ground_state(const ModelParams& params, GridPtr grid, double tol,
                           const ShootingOptions& opts) {
    if (!grid) throw InputError("solve_ground_state: null grid");
    if (grid->n() != params.n()) throw InputError("solve_ground_state: grid dimension mismatch");
    if (!(tol > 0.0)) throw InputError("solve_ground_state: tol must be positive");

    // checkpoints: grid nodes plus panel boundaries (for the flux certificate)
    std::vector<double> checkpoints = grid->nodes();
    for (int p = 1; p < grid->spec().panels; ++p)
        checkpoints.push_back(grid->panel_edges()[p]);
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

    double first_positive = grid->rho_max();
    for (double c : checkpoints)
        if (c > 0.0) { first_positive = c; break; }
    const long double rho_start = std::min<long double>(1e-3L, 0.5L * first_positive);

    auto classify = [&](long double a) {
        return shoot(params, a, checkpoints, opts.ode_rel_tol, rho_start).outcome;
    };

    // bracket the separatrix in the initial height
    long double lo = 0.0L, hi = 0.0L; // lo fails to decay, hi crosses zero
    {
        long double a = 1.0L;
        Shot s = classify(a);
        if (s == Shot::Undecided) s = Shot::FailsToDecay;
        if (s == Shot::CrossesZero) {
            hi = a;
            while (true) {
                a *= 0.5;
                if (a < opts.a_min) throw NumericalError("no ground state bracket");
                const Shot c = classify(a);
                if (c != Shot::CrossesZero) { lo = a; break; }
                hi = a;
            }
        } else {
            lo = a;
            while (true) {
                a *= 2.0;
                if (a > opts.a_max) throw NumericalError("no ground state bracket");
                const Shot c = classify(a);
                if (c == Shot::CrossesZero) { hi = a; break; }
                lo = a;
            }
        }
    }

    int iter = 0;
    while ((hi - lo) > opts.bisect_rel_tol * lo) {
        if (++iter > opts.max_bisect_iter)
            throw NumericalError("ground state bisection iteration limit");
        const long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break; // extended precision exhausted
        (classify(mid) == Shot::CrossesZero ? hi : lo) = mid;
    }
    const long double a_star = 0.5L * (lo + hi);

    const Trajectory traj = shoot(params, a_star, checkpoints, opts.ode_rel_tol, rho_start);
    if (std::getenv("HYPERSTAB_DEBUG_SHOOT")) {
        std::fprintf(stderr, "a*=%.18Lg bracket=[%.18Lg, %.18Lg]\n", a_star, lo, hi);
        for (std::size_t i = 0; i < traj.rho.size(); i += 40)
            std::fprintf(stderr, "  rho=%7.3f u=%.6e v/u=%.6f\n", traj.rho[i], traj.u[i],
                         traj.v[i] / traj.u[i]);
    }
    if (traj.rho.size() < 32) throw NumericalError("ground state trajectory too short");

    // Tail model: the decay rate settles onto a plateau between the slowly
    // dying curvature corrections near the core and the slow-mode contamination
    // that eventually overtakes the deep trajectory however tightly the height
    // was bisected. Pick the flattest-and-deepest window of local log-slopes,
    // fit the exponent there, and anchor the amplitude at the deep end so the
    // assembled profile stays continuous.
    TailInfo tail;
    {
        const double a_val = static_cast<double>(a_star);
        double u_min = a_val;
        for (double v : traj.u)
            if (v > 0.0) u_min = std::min(u_min, v);
        // skip the core and the contaminated bottom decades of the recording
        const double hi_bound = opts.tail_hi_frac * a_val;
        const double lo_bound = std::max(30.0 * u_min, opts.tail_lo_frac * 1e-8 * a_val);
        std::vector<double> slope;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i + 1 < traj.rho.size(); ++i) {
            if (traj.u[i] > hi_bound || traj.u[i + 1] <= 0.0) continue;
            if (traj.u[i] < lo_bound) break;
            slope.push_back(std::log(traj.u[i] / traj.u[i + 1]) /
                            (traj.rho[i + 1] - traj.rho[i]));
            idx.push_back(i + 1);
        }
        const std::size_t m = slope.size();
        const std::size_t K = std::max<std::size_t>(16, m / 6);
        if (m < K + 4) throw NumericalError("ground state tail window collapsed");
        std::vector<double> spread(m - K + 1);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + K <= m; ++i) {
            double lo_s = slope[i], hi_s = slope[i];
            for (std::size_t j = i; j < i + K; ++j) {
                lo_s = std::min(lo_s, slope[j]);
                hi_s = std::max(hi_s, slope[j]);
            }
            spread[i] = hi_s - lo_s;
            best = std::min(best, spread[i]);
        }
        std::size_t pick = 0;
        for (std::size_t i = 0; i + K <= m; ++i)
            if (spread[i] <= std::max(2.0 * best, 1e-4 * std::abs(slope[i]))) pick = i;
        double alpha = 0.0;
        for (std::size_t j = pick; j < pick + K; ++j) alpha += slope[j];
        alpha /= K;
        if (!(alpha > 0.0) || best > 0.02 * alpha)
            throw NumericalError("ground state tail window collapsed");
        const std::size_t cut = idx[pick + K - 1];
        tail.valid = true;
        tail.exponent = alpha;
        tail.start = traj.rho[cut];
        tail.amplitude = traj.u[cut] * std::exp(alpha * traj.rho[cut]);
    }

    // assemble nodal arrays: integrated values up to the splice, fitted
    // exponential beyond
    const auto& nodes = grid->nodes();
    std::vector<double> vals(nodes.size()), ders(nodes.size());
    std::size_t k = 0; // walks the recorded trajectory
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = nodes[i];
        if (r == 0.0) {
            vals[i] = static_cast<double>(a_star);
            ders[i] = 0.0;
            continue;
        }
        if (r <= tail.start) {
            while (k < traj.rho.size() && traj.rho[k] < r - 1e-12) ++k;
            if (k >= traj.rho.size() || std::abs(traj.rho[k] - r) > 1e-9)
                throw NumericalError("ground state: node not covered by trajectory");
            vals[i] = traj.u[k];
            ders[i] = traj.v[k];
        } else {
            vals[i] = tail.amplitude * std::exp(-tail.exponent * r);
            ders[i] = -tail.exponent * vals[i];
        }
    }

    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
        if (!(vals[i] > 0.0) || !(vals[i + 1] < vals[i])) {
            if (std::getenv("HYPERSTAB_DEBUG_SHOOT"))
                std::fprintf(stderr, "monotone break at i=%zu rho=%.6f vals: %.17g %.17g (tail start %.4f a*=%.17g)\n",
                             i, nodes[i], vals[i], vals[i + 1], tail.start, static_cast<double>(a_star));
            throw NumericalError("ground state not positive decreasing");
        }

    Profile prof(grid, std::move(vals), std::move(ders), 0);
    prof.set_tail(tail);

    // flux-balance certificate on the recorded panel boundaries
    {
        const int n = params.n();
        const double lam = params.lambda(), p = params.p();
        auto flux = [&](double r, double u_r, double v_r) {
            (void)u_r;
            return std::pow(std::sinh(r), n - 1.0) * v_r;
        };
        double worst = 0.0;
        double prev_r = 0.0, prev_flux = 0.0;
        std::size_t j = 0;
        for (int pb = 1; pb <= grid->spec().panels; ++pb) {
            const double r = grid->panel_edges()[pb];
            if (r > tail.start) break;
            while (j < traj.rho.size() && traj.rho[j] < r - 1e-12) ++j;
            if (j >= traj.rho.size()) break;
            const double fl = flux(traj.rho[j], traj.u[j], traj.v[j]);
            // quadrature of (lambda u + u^p) sinh^{n-1} over [prev_r, r]
            double integral = 0.0, mass = 0.0;
            const auto& nd = grid->nodes();
            for (std::size_t i = 0; i < nd.size(); ++i) {
                if (nd[i] <= prev_r || nd[i] > r) continue;
                const double term = grid->quad_weights()[i] *
                                    (lam * prof.values()[i] + std::pow(prof.values()[i], p));
                integral += term;
                mass += std::abs(term);
            }
            const double resid = fl - prev_flux + integral;
            const double scale = std::abs(fl) + std::abs(prev_flux) + mass + 1e-30;
            if (scale > 1e-200 * static_cast<double>(a_star))
                worst = std::max(worst, std::abs(resid) / scale);
            prev_r = r;
            prev_flux = fl;
            if (r >= tail.start) break;
        }
        if (worst > tol)
            throw NumericalError("ground state residual above tolerance");
    }

    return prof;
}

double lambda_norm_sq(const Profile& u, const ModelParams& params) {
    const RadialGrid& g = u.grid();
    const int n = params.n();
    const int l = u.sector();
    const double lam = params.lambda();
    const double ang = l * (l + n - 2.0);

    const bool have_d = u.has_derivatives();
    long double sum = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double ui = u.values()[i];
        const double di = have_d ? u.derivatives()[i] : u.derivative_at(g.nodes()[i]);
        sum += (long double)g.quad_weights()[i] * (di * di - lam * ui * ui);
        if (ang != 0.0)
            sum += (long double)g.plain_weights()[i] *
                   std::pow(g.sinh_nodes()[i], n - 3.0) * ang * ui * ui;
    }
    double total = static_cast<double>(sum);

    const TailInfo& t = u.tail();
    if (t.valid) {
        const double A2 = t.amplitude * t.amplitude;
        const double beta = 2.0 * t.exponent;
        if (beta > n - 1) {
            total += A2 * (t.exponent * t.exponent - lam) * exp_sinh_tail(beta, n - 1, g.rho_max());
            if (ang != 0.0 && beta > n - 3)
                total += A2 * ang * exp_sinh_tail(beta, n - 3, g.rho_max());
        }
    }
    return g.omega() * total;
}

double lp_norm_pow(const Profile& u, double q) {
    const RadialGrid& g = u.grid();
    long double sum = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i)
        sum += (long double)g.quad_weights()[i] * std::pow(std::abs(u.values()[i]), q);
    double total = static_cast<double>(sum);
    const TailInfo& t = u.tail();
    if (t.valid && q * t.exponent > g.n() - 1)
        total += std::pow(t.amplitude, q) * exp_sinh_tail(q * t.exponent, g.n() - 1, g.rho_max());
    return g.omega() * total;
}

double weighted_inner(const Profile& u, const Profile& v, const Profile& w, double pow) {
    if (u.sector() != v.sector()) return 0.0; // angular orthogonality of sectors
    const RadialGrid& g = u.grid();
    long double sum = 0.0L;
    for (std::size_t i = 0; i < g.size(); ++i)
        sum += (long double)g.quad_weights()[i] * u.values()[i] * v.values()[i] *
               std::pow(w.values()[i], pow);
    double total = static_cast<double>(sum);
    const TailInfo &tu = u.tail(), &tv = v.tail(), &tw = w.tail();
    if (tu.valid && tv.valid && tw.valid) {
        const double beta = tu.exponent + tv.exponent + pow * tw.exponent;
        if (beta > g.n() - 1)
            total += tu.amplitude * tv.amplitude * std::pow(tw.amplitude, pow) *
                     exp_sinh_tail(beta, g.n() - 1, g.rho_max());
    }
    return g.omega() * total;
}

double normalization_residual(const Profile& profile, const ModelParams& params) {
    const double e = lambda_norm_sq(profile, params);
    const double k = lp_norm_pow(profile, params.p() + 1.0);
    return std::abs(e - k) / std::abs(e);
}

double best_constant(const Profile& profile, const ModelParams& params,
                     double consistency_tol) {
    if (normalization_residual(profile, params) > consistency_tol)
        throw NumericalError("normalization inconsistency: profile is not a converged ground state");
    const double k = lp_norm_pow(profile, params.p() + 1.0);
    return std::pow(k, (params.p() - 1.0) / (params.p() + 1.0));
}

double ode_flux_residual(const Profile& profile, const ModelParams& params) {
    const RadialGrid& g = profile.grid();
    const int n = params.n();
    const double lam = params.lambda(), p = params.p();
    const double cutoff = profile.tail().valid ? profile.tail().start : g.rho_max();

    double worst = 0.0;
    double prev_r = 0.0;
    double prev_flux = 0.0;
    for (int pb = 1; pb <= g.spec().panels; ++pb) {
        const double r = g.panel_edges()[pb];
        if (r > cutoff) break;
        const double fl = std::pow(std::sinh(r), n - 1.0) * profile.derivative_at(r);
        double integral = 0.0, mass = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.nodes()[i] <= prev_r || g.nodes()[i] > r) continue;
            const double ui = profile.values()[i];
            const double term =
                g.quad_weights()[i] * (lam * ui + std::copysign(std::pow(std::abs(ui), p), ui));
            integral += term;
            mass += std::abs(term);
        }
        const double resid = fl - prev_flux + integral;
        const double scale = std::abs(fl) + std::abs(prev_flux) + mass + 1e-30;
        if (scale > 1e-200)
            worst = std::max(worst, std::abs(resid) / scale);
        prev_r = r;
        prev_flux = fl;
    }
    return worst;
}

} // namespace hyperstab
