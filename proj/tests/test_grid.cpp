#include <doctest.h>

#include "hyperstab/errors.hpp"
#include "hyperstab/geometry.hpp"
#include "hyperstab/grid.hpp"

#include <cmath>
#include <numbers>

using namespace hyperstab;

TEST_CASE("grid node structure") {
    GridSpec spec;
    spec.n = 3;
    spec.rho_max = 30.0;
    spec.panels = 40;
    spec.points_per_panel = 6;
    auto g = make_radial_grid(spec);

    CHECK(g->nodes().front() == 0.0);
    CHECK(g->nodes().back() == 30.0);
    for (std::size_t i = 0; i + 1 < g->size(); ++i) CHECK(g->nodes()[i] < g->nodes()[i + 1]);
    for (double w : g->quad_weights()) CHECK(w >= 0.0);
    CHECK(g->omega() == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("unit integrand reproduces the sinh volume integral") {
    for (int n : {3, 4, 5}) {
        GridSpec spec;
        spec.n = n;
        spec.panels = 60;
        auto g = make_radial_grid(spec);
        std::vector<double> ones(g->size(), 1.0);
        const double expect = g->omega() * sinh_power_integral(n - 1, spec.rho_max);
        CHECK(integrate_radial(*g, ones) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("zero integrand and length mismatch") {
    auto g = make_radial_grid(GridSpec{});
    std::vector<double> zeros(g->size(), 0.0);
    CHECK(integrate_radial(*g, zeros) == 0.0);
    CHECK_THROWS_AS(integrate_radial(*g, std::vector<double>{1.0, 2.0}), InputError);
}

TEST_CASE("exponential decay integral with closed form") {
    // omega_2 * int_0^inf e^{-4 rho} sinh^2 rho = 4 pi / 24
    GridSpec spec;
    spec.n = 3;
    auto g = make_radial_grid(spec);
    std::vector<double> f(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) f[i] = std::exp(-4.0 * g->nodes()[i]);
    CHECK(integrate_radial(*g, f) ==
          doctest::Approx(4.0 * std::numbers::pi / 24.0).epsilon(1e-12));
}

TEST_CASE("grid refinement converges at scheme order") {
    auto value_at = [](int panels) {
        GridSpec s;
        s.n = 4;
        s.panels = panels;
        s.points_per_panel = 4;
        auto g = make_radial_grid(s);
        std::vector<double> f(g->size());
        for (std::size_t i = 0; i < g->size(); ++i)
            f[i] = std::exp(-3.5 * g->nodes()[i]) * (1.0 + std::sin(g->nodes()[i]));
        return integrate_radial(*g, f);
    };
    const double i0 = value_at(40), i1 = value_at(80), i2 = value_at(160);
    const double e1 = std::abs(i1 - i0), e2 = std::abs(i2 - i1);
    CHECK(e2 < std::max(0.25 * e1, 1e-12 * std::abs(i2)));
}

TEST_CASE("grid rejects bad specs") {
    GridSpec s;
    s.n = 2;
    CHECK_THROWS_AS(RadialGrid{s}, InputError);
    GridSpec t;
    t.rho_max = 5.0; // e^{-2*5} violates the default tail tolerance
    t.n = 3;
    CHECK_THROWS_AS(RadialGrid{t}, InputError);
}
