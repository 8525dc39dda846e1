#include <doctest.h>

#include "hyperstab/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace hyperstab;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int n : {2, 5, 8, 16}) {
        const QuadRule r = gauss_legendre(n);
        double wsum = 0.0, x2 = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += r.weights[i];
            x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    }
}

TEST_CASE("gauss-legendre handles smooth transcendental integrands") {
    const QuadRule r = map_to_interval(gauss_legendre(24), 0.0, std::numbers::pi);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::sin(r.nodes[i]);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("ultraspherical rule integrates the sin^{n-2} surface weight") {
    // alpha = 1/2 corresponds to the n = 4 angular weight sin^2(theta)
    const QuadRule r = gauss_ultraspherical(32, 0.5);
    double wsum = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        wsum += r.weights[i];
        m2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    // int_{-1}^{1} sqrt(1-t^2) dt = pi/2, int t^2 sqrt(1-t^2) dt = pi/8
    CHECK(wsum == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(std::numbers::pi / 8).epsilon(1e-12));

    // smooth integrand against the weight
    double e = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) e += r.weights[i] * std::exp(r.nodes[i]);
    // int_{-1}^1 e^t sqrt(1-t^2) dt = pi * I_1(1)
    CHECK(e == doctest::Approx(std::numbers::pi * 0.565159103992485).epsilon(1e-12));
}

TEST_CASE("ultraspherical at alpha=0 matches gauss-legendre") {
    const QuadRule a = gauss_ultraspherical(12, 0.0);
    const QuadRule b = gauss_legendre(12);
    for (int i = 0; i < 12; ++i) {
        CHECK(a.nodes[i] == doctest::Approx(b.nodes[i]).epsilon(1e-13));
        CHECK(a.weights[i] == doctest::Approx(b.weights[i]).epsilon(1e-13));
    }
}

TEST_CASE("adaptive simpson") {
    const double v = adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, 5.0, 1e-12);
    CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-10));
}
