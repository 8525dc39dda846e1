#include "hyperstab/quadrature.hpp"
#include "hyperstab/errors.hpp"
#include "hyperstab/linalg.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace hyperstab {

QuadRule gauss_legendre(int npts) {
    if (npts < 1) throw InputError("gauss_legendre: npts must be >= 1");
    QuadRule r;
    r.nodes.resize(npts);
    r.weights.resize(npts);
    const int m = (npts + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (npts == 1) { p1 = x; }
            for (int k = 2; k <= npts; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (npts == 1) ? x : p1;
            const double pnm1 = (npts == 1) ? 1.0 : p0;
            pp = npts * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.nodes[i] = -x;
        r.nodes[npts - 1 - i] = x;
        r.weights[i] = w;
        r.weights[npts - 1 - i] = w;
    }
    if (npts % 2 == 1) r.nodes[npts / 2] = 0.0;
    return r;
}

QuadRule gauss_ultraspherical(int npts, double alpha) {
    if (npts < 1) throw InputError("gauss_ultraspherical: npts must be >= 1");
    if (alpha <= -1.0) throw InputError("gauss_ultraspherical: alpha must be > -1");
    if (alpha == 0.0) return gauss_legendre(npts);

    // Jacobi matrix of the monic three-term recurrence for weight (1-x^2)^alpha:
    // diagonal zero by symmetry, off-diagonal b_k with
    //   b_k^2 = k (k + 2 alpha) / ((2k + 2 alpha + 1)(2k + 2 alpha - 1)).
    SymTridiag J;
    J.diag.assign(npts, 0.0);
    J.off.resize(npts - 1);
    for (int k = 1; k < npts; ++k) {
        const double num = k * (k + 2.0 * alpha);
        const double den = (2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0);
        J.off[k - 1] = std::sqrt(num / den);
    }
    SymTridiag I;
    I.diag.assign(npts, 1.0);
    I.off.assign(npts > 1 ? npts - 1 : 0, 0.0);

    const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(alpha + 1.0) /
                       std::tgamma(alpha + 1.5);

    auto evals = pencil_smallest_eigenvalues(J, I, npts, 1e-15);
    QuadRule r;
    r.nodes = evals;
    r.weights.resize(npts);
    std::vector<std::vector<double>> prev;
    for (int j = 0; j < npts; ++j) {
        auto v = pencil_eigenvector(J, I, evals[j], prev);
        prev.push_back(v);
        r.weights[j] = mu0 * v[0] * v[0];
    }
    return r;
}

QuadRule map_to_interval(const QuadRule& rule, double a, double b) {
    QuadRule r = rule;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (auto& x : r.nodes) x = c + h * x;
    for (auto& w : r.weights) w *= h;
    return r;
}

namespace {
double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adsimp(const std::function<double(double)>& f, double a, double fa, double b,
              double fb, double fm, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adsimp(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adsimp(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(a, fa, b, fb, fm);
    return adsimp(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

} // namespace hyperstab
