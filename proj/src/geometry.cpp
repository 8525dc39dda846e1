#include "hyperstab/geometry.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/quadrature.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace hyperstab {

namespace {
double norm_sq_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// acosh(1 + t) for t >= 0 without cancellation near t = 0.
double acosh1p(double t) {
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}
} // namespace

BallPoint::BallPoint(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InputError("BallPoint: empty coordinate vector");
    if (norm_sq_of(coords_) >= 1.0)
        throw InputError("BallPoint: coordinates must satisfy |x| < 1");
}

double BallPoint::norm_sq() const { return norm_sq_of(coords_); }

double hyperbolic_distance(const BallPoint& x, const BallPoint& y) {
    if (x.dim() != y.dim()) throw InputError("hyperbolic_distance: dimension mismatch");
    double diff2 = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double d = x.coords()[i] - y.coords()[i];
        diff2 += d * d;
    }
    const double t = 2.0 * diff2 / ((1.0 - x.norm_sq()) * (1.0 - y.norm_sq()));
    return acosh1p(t);
}

double hyperbolic_distance_to_origin(const BallPoint& x) {
    const double r = std::sqrt(x.norm_sq());
    return std::log((1.0 + r) / (1.0 - r));
}

BallPoint hyperbolic_translate(const BallPoint& b, const BallPoint& x) {
    if (b.dim() != x.dim()) throw InputError("hyperbolic_translate: dimension mismatch");
    const double b2 = b.norm_sq();
    const double x2 = x.norm_sq();
    const double xb = dot(x.coords(), b.coords());
    const double den = b2 * x2 + 2.0 * xb + 1.0;
    assert(den > 0.0 && "translation denominator must be positive inside the ball");
    const double cx = (1.0 - b2) / den;
    const double cb = (x2 + 2.0 * xb + 1.0) / den;
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        out[i] = cx * x.coords()[i] + cb * b.coords()[i];
    return BallPoint(std::move(out));
}

double geodesic_cosine(double rho1, double rho2, double theta) {
    if (rho1 < 0.0 || rho2 < 0.0) throw InputError("geodesic_cosine: radii must be >= 0");
    // cosh d = cosh(r1 - r2) + sinh r1 sinh r2 (1 - cos theta), evaluated so the
    // colinear case theta = 0 returns |r1 - r2| exactly.
    const double base = std::cosh(rho1 - rho2) - 1.0;
    const double extra = std::sinh(rho1) * std::sinh(rho2) * (1.0 - std::cos(theta));
    return acosh1p(base + extra);
}

double sphere_surface(int n) {
    if (n < 1) throw InputError("sphere_surface: dimension must be >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double exp_sinh_tail(double beta, int k, double r0) {
    if (k < 0) throw InputError("exp_sinh_tail: power must be >= 0");
    if (beta <= k) throw InputError("exp_sinh_tail: divergent tail integral");
    // sinh^k = 2^{-k} sum_j C(k,j) (-1)^j e^{(k-2j) rho}
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double expo = beta - (k - 2.0 * j);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * std::exp(-expo * r0) / expo;
        binom *= static_cast<double>(k - j) / (j + 1.0);
    }
    return std::ldexp(sum, -k);
}

double sinh_power_integral(int k, double R) {
    if (k < 0) throw InputError("sinh_power_integral: power must be >= 0");
    if (k == 0) return R;
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double expo = k - 2.0 * j;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        if (expo == 0.0)
            sum += sign * binom * R;
        else
            sum += sign * binom * (std::exp(expo * R) - 1.0) / expo;
        binom *= static_cast<double>(k - j) / (j + 1.0);
    }
    return std::ldexp(sum, -k);
}

double green_function(int n, double r) {
    if (n < 3) throw InputError("green_function: dimension must be >= 3");
    if (!(r > 0.0)) throw InputError("green_function: separation must be positive");

    // (sinh s)^{-(n-1)} = 2^{n-1} e^{-(n-1)s} (1 - e^{-2s})^{-(n-1)}; the binomial
    // series in q = e^{-2s} integrates term by term and converges fast once r is
    // not too small. Below r = 0.5 the head is done by graded quadrature panels.
    auto series_from = [n](double a) {
        double sum = 0.0;
        double coeff = 1.0; // C(n-2+j, j)
        for (int j = 0; j < 100000; ++j) {
            const double expo = (n - 1.0) + 2.0 * j;
            const double term = coeff * std::exp(-expo * a) / expo;
            sum += term;
            if (term < 1e-17 * (sum + 1e-300) && j > 2) break;
            coeff *= static_cast<double>(n - 1 + j) / (j + 1.0);
        }
        return std::ldexp(sum, n - 1);
    };

    const double split = 0.5;
    if (r >= split) return series_from(r);

    // graded geometric panels on [r, split]
    const QuadRule base = gauss_legendre(16);
    double head = 0.0;
    double a = r;
    while (a < split) {
        const double b = std::min(2.0 * a, split);
        const QuadRule panel = map_to_interval(base, a, b);
        for (std::size_t i = 0; i < panel.nodes.size(); ++i)
            head += panel.weights[i] * std::pow(std::sinh(panel.nodes[i]), -(n - 1.0));
        a = b;
    }
    return head + series_from(split);
}

} // namespace hyperstab
