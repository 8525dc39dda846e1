#include <doctest.h>

#include "hyperstab/errors.hpp"
#include "hyperstab/spectral.hpp"
#include "hyperstab/stability.hpp"

#include <cmath>
#include <random>

using namespace hyperstab;

namespace {
struct Setup {
    GridPtr grid;
    ModelParams mp{3, 2.0, 0.5};
    Profile U;
    StabilityContext ctx;
    SpectralResult radial;

    Setup()
        : grid(make_radial_grid([] {
              GridSpec s;
              s.n = 3;
              s.panels = 120;
              s.points_per_panel = 8;
              return s;
          }())),
          U(solve_ground_state(mp, grid, 1e-8)),
          ctx(U, mp),
          radial(sector_spectrum(U, mp, 0, 2)) {}
};

const Setup& setup() {
    static Setup s;
    return s;
}
} // namespace

TEST_CASE("deficit vanishes on the extremal ray") {
    const auto& s = setup();
    CHECK(s.ctx.deficit(s.U) < 1e-6 * std::sqrt(s.ctx.ground_energy()));
    for (double c : {0.3, 2.0, -1.5}) {
        const Profile cu = linear_combination(c, s.U, 0.0, s.U);
        CHECK(s.ctx.deficit(cu) < 1e-6 * std::abs(c) * std::sqrt(s.ctx.ground_energy()));
    }
}

TEST_CASE("deficit quadratic expansion along the second radial eigenfunction") {
    const auto& s = setup();
    const double mu3 = s.radial.eigenvalues[1];
    const Profile& psi3 = s.radial.eigenfunctions[1];
    const double p = s.mp.p();
    const double psi_norm2 = lambda_norm_sq(psi3, s.mp);

    const double eps = 1e-2;
    const Profile u = linear_combination(1.0, s.U, eps, psi3);
    const double d = s.ctx.deficit(u);
    const double expect2 = eps * eps * (1.0 - p / mu3) * psi_norm2;
    CHECK(d * d == doctest::Approx(expect2).epsilon(0.1));
}

TEST_CASE("cross term endpoints and route agreement") {
    const auto& s = setup();
    const double K = s.ctx.ground_energy();
    CHECK(s.ctx.cross_term(s.U, 0.0) == doctest::Approx(K).epsilon(1e-9));
    CHECK(std::abs(s.ctx.cross_term(s.U, 9.5)) < 2e-2 * K);
    CHECK(s.ctx.cross_term(s.U, 1.0, 2.5) ==
          doctest::Approx(2.5 * s.ctx.cross_term(s.U, 1.0)).epsilon(1e-13));

    // stationary-equation route vs direct gradient quadrature
    Axisym2D g2(s.grid, 14.0, 64);
    for (double off : {0.8, 2.5}) {
        const double pde_route = s.ctx.cross_term(s.U, off);
        const double grad = ball_integral_translated(
            g2, off, [&](double rho) { return s.U.derivative_at(rho); },
            [&](double d) { return s.U.derivative_at(d); }, 0, true);
        const double mass = ball_integral_translated(
            g2, off, [&](double rho) { return s.U.value_at(rho); },
            [&](double d) { return s.U.value_at(d); });
        const double direct = grad - s.mp.lambda() * mass;
        CHECK(direct == doctest::Approx(pde_route).epsilon(1e-6));
    }
}

TEST_CASE("distance to the optimizer manifold") {
    const auto& s = setup();
    const double K = s.ctx.ground_energy();

    SUBCASE("the ground state itself") {
        const auto rep = s.ctx.distance_to_manifold(s.U);
        CHECK(rep.distance < 1e-3 * std::sqrt(K));
        CHECK(rep.c_star == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(rep.s_star == 0.0);
    }
    SUBCASE("scaled copies land on the ray") {
        for (double kappa : {-2.0, 0.5, 3.0}) {
            const Profile ku = linear_combination(kappa, s.U, 0.0, s.U);
            const auto rep = s.ctx.distance_to_manifold(ku);
            CHECK(rep.distance < 1e-3 * std::abs(kappa) * std::sqrt(K));
            CHECK(rep.c_star == doctest::Approx(kappa).epsilon(1e-8));
        }
    }
    SUBCASE("scaling law for a genuinely off-manifold profile") {
        const Profile& psi3 = s.radial.eigenfunctions[1];
        const Profile u = linear_combination(1.0, s.U, 0.05, psi3);
        const double base = s.ctx.distance_to_manifold(u).distance;
        for (double kappa : {-2.0, 0.5, 3.0}) {
            const Profile ku = linear_combination(kappa, u, 0.0, u);
            const double d = s.ctx.distance_to_manifold(ku).distance;
            CHECK(d == doctest::Approx(std::abs(kappa) * base).epsilon(1e-7));
        }
    }
    SUBCASE("eigen-perturbation distance matches the projection formula") {
        const Profile& psi3 = s.radial.eigenfunctions[1];
        const double psi_norm = std::sqrt(lambda_norm_sq(psi3, s.mp));
        const double eps = 1e-2;
        const Profile u = linear_combination(1.0, s.U, eps, psi3);
        const auto rep = s.ctx.distance_to_manifold(u);
        CHECK(rep.distance == doctest::Approx(eps * psi_norm).epsilon(0.05));
        // orthogonality at the optimum: c* K = <u, U_{b*}^p>
        const double lhs = rep.c_star * s.ctx.ground_energy();
        const double rhs = s.ctx.cross_term(u, rep.s_star);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("stability ratio scan approaches the spectral constant") {
    const auto& s = setup();
    const double p = s.mp.p();
    const double mu3 = s.radial.eigenvalues[1];
    const auto rows =
        s.ctx.stability_ratio_scan(s.radial.eigenfunctions[1], {1e-1, 1e-2, 1e-3, 1e-4});
    const double target = 1.0 / (1.0 - p / mu3);
    for (const auto& r : rows) CHECK(r.ratio_sq < 10.0 * target);
    CHECK(rows.back().ratio_sq == doctest::Approx(target).epsilon(0.10));
    const auto zero = s.ctx.stability_ratio_scan(s.radial.eigenfunctions[1], {0.0});
    CHECK(zero[0].deficit == 0.0);
    CHECK(zero[0].distance == 0.0);
}

TEST_CASE("dual norm solver") {
    const auto& s = setup();
    const double p = s.mp.p();

    // f = U^p has the ground state as its potential, so the norm is ||U||
    std::vector<double> f_vals(s.grid->size());
    for (std::size_t i = 0; i < s.grid->size(); ++i)
        f_vals[i] = std::pow(s.U.values()[i], p);
    Profile f(s.grid, f_vals, 0);
    const double expect = std::sqrt(s.ctx.ground_energy());
    CHECK(s.ctx.h_minus1_norm(f) == doctest::Approx(expect).epsilon(5e-3));

    // duality identity against an independent reconstruction of the pairing
    auto [phi, norm] = s.ctx.invert_operator(f);
    SectorOperator op(s.grid, 0, s.mp.lambda());
    const auto fd = op.restrict_to_dof(f.values());
    const auto pd = op.restrict_to_dof(phi.values());
    const auto lm = op.lumped_mass([](double) { return 1.0; });
    long double pairing = 0.0L;
    for (std::size_t i = 0; i < fd.size(); ++i) pairing += (long double)lm[i] * fd[i] * pd[i];
    const double resid =
        std::abs(s.grid->omega() * double(pairing) - norm * norm) / (norm * norm);
    CHECK(resid < 1e-6);

    std::vector<double> zero_vals(s.grid->size(), 0.0);
    CHECK(s.ctx.h_minus1_norm(Profile(s.grid, zero_vals, 0)) == 0.0);
}

TEST_CASE("euler-lagrange scan over the standard family") {
    const auto& s = setup();
    const double mu3 = s.radial.eigenvalues[1];
    const auto fam = s.ctx.make_el_family(s.radial.eigenfunctions[1], mu3,
                                          {1e-3, 1e-2, 1e-1});
    const auto rows = s.ctx.euler_lagrange_scan(fam);
    REQUIRE(rows.size() == 6);
    double max_ratio = 0.0;
    for (const auto& r : rows) {
        if (r.label == "scaled_ground_state") {
            CHECK(r.distance ==
                  doctest::Approx(r.eps * std::sqrt(s.ctx.ground_energy())).epsilon(1e-4));
        }
        if (r.ratio_defined) max_ratio = std::max(max_ratio, r.ratio);
    }
    CHECK(max_ratio > 0.0);
    CHECK(max_ratio < 1e3);

    CHECK(rows[0].ratio == doctest::Approx(rows[1].ratio).epsilon(0.05));
}

TEST_CASE("translated bubble has negligible self distance") {
    const auto& s = setup();
    for (double s0 : {1.5, 4.0}) {
        const auto rep = s.ctx.bubble_self_distance(s0);
        CHECK(rep.distance < 1e-6);
        CHECK(rep.s_star == doctest::Approx(s0).epsilon(1e-6));
    }
}

TEST_CASE("deficit stays nonnegative across random radial profiles") {
    const auto& s = setup();
    std::mt19937_64 rng(20240);
    std::uniform_real_distribution<double> amp(-0.5, 0.5), width(1.0, 6.0);
    const double target = 1.0 / (1.0 - s.mp.p() / s.radial.eigenvalues[1]);
    for (int it = 0; it < 6; ++it) {
        std::vector<double> vals(s.grid->size());
        const double w = width(rng), a1 = amp(rng), a2 = amp(rng);
        for (std::size_t i = 0; i < s.grid->size(); ++i) {
            const double r = s.grid->nodes()[i];
            vals[i] =
                s.U.values()[i] * (1.0 + a1 * std::exp(-r) + a2 * std::exp(-r * r / (w * w)));
        }
        Profile u(s.grid, vals, 0);
        TailInfo t = s.U.tail();
        t.amplitude *= (1.0);
        u.set_tail(t);
        const auto rep = s.ctx.distance_to_manifold(u);
        CHECK(rep.deficit >= 0.0);
        if (rep.distance < std::sqrt(lambda_norm_sq(u, s.mp))) {
            CHECK(rep.distance <= 10.0 * std::sqrt(target) * rep.deficit);
        }
    }
}
