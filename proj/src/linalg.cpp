#include "hyperstab/linalg.hpp"
#include "hyperstab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hyperstab {

std::vector<double> SymTridiag::apply(const std::vector<double>& x) const {
    const std::size_t n = diag.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = diag[i] * x[i];
        if (i > 0) y[i] += off[i - 1] * x[i - 1];
        if (i + 1 < n) y[i] += off[i] * x[i + 1];
    }
    return y;
}

int inertia_below(const SymTridiag& A, const SymTridiag& B, double shift) {
    const std::size_t n = A.size();
    int count = 0;
    double d_prev = 1.0;
    double d = 0.0;
    const double tiny = std::numeric_limits<double>::min() * 64;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = A.diag[i] - shift * B.diag[i];
        double b2 = 0.0;
        if (i > 0) {
            const double b = A.off[i - 1] - shift * B.off[i - 1];
            b2 = b * b / d_prev;
        }
        d = a - b2;
        if (d == 0.0) d = -tiny;
        if (d < 0.0) ++count;
        d_prev = d;
        if (std::abs(d_prev) < tiny) d_prev = (d_prev < 0 ? -tiny : tiny);
    }
    return count;
}

std::vector<double> solve_tridiag(std::vector<double> lower,
                                  std::vector<double> diag,
                                  std::vector<double> upper,
                                  std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    std::vector<double> upper2(n, 0.0); // fill-in from row swaps
    // forward elimination with partial pivoting
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double l = lower[i]; // entry (i+1, i)
        if (std::abs(l) > std::abs(diag[i])) {
            std::swap(diag[i], l);
            // after swap: row i holds old row i+1
            std::swap(upper[i], diag[i + 1]);
            upper2[i] = (i + 2 < n) ? upper[i + 1] : 0.0;
            if (i + 2 < n) upper[i + 1] = 0.0;
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (diag[i] == 0.0)
            throw NumericalError("tridiagonal solve: singular pivot");
        const double m = l / diag[i];
        diag[i + 1] -= m * upper[i];
        if (i + 2 < n) upper[i + 1] -= m * upper2[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (diag[n - 1] == 0.0)
        throw NumericalError("tridiagonal solve: singular pivot");
    // back substitution
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    if (n >= 2) {
        const std::size_t i = n - 2;
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    }
    for (std::size_t k = n; k >= 3; --k) {
        const std::size_t i = k - 3;
        x[i] = (rhs[i] - upper[i] * x[i + 1] - upper2[i] * x[i + 2]) / diag[i];
    }
    return x;
}

std::vector<double> pencil_smallest_eigenvalues(const SymTridiag& A, const SymTridiag& B,
                                                int k, double rel_tol) {
    const std::size_t n = A.size();
    if (k <= 0 || static_cast<std::size_t>(k) > n)
        throw InputError("pencil_smallest_eigenvalues: bad count");

    // initial window: grow upper bound until it holds k eigenvalues
    double lo = 0.0;
    if (inertia_below(A, B, lo) > 0) {
        lo = -1.0;
        while (inertia_below(A, B, lo) > 0) lo *= 2.0;
        if (lo < -1e18) throw NumericalError("eigenvalue search: no lower bound");
    }
    double hi = 1.0;
    while (inertia_below(A, B, hi) < k) {
        hi *= 2.0;
        if (hi > 1e18) throw NumericalError("eigenvalue search: no upper bound");
    }

    std::vector<double> mus(k);
    for (int j = 1; j <= k; ++j) {
        double a = lo, b = hi;
        // smallest mu with inertia >= j
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            if (inertia_below(A, B, m) >= j) b = m; else a = m;
            if (b - a <= rel_tol * (std::abs(a) + std::abs(b) + 1e-30)) break;
        }
        mus[j - 1] = 0.5 * (a + b);
    }
    return mus;
}

double b_inner(const SymTridiag& B, const std::vector<double>& x, const std::vector<double>& y) {
    const auto By = B.apply(y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * By[i];
    return s;
}

std::vector<double> pencil_eigenvector(const SymTridiag& A, const SymTridiag& B, double mu,
                                       const std::vector<std::vector<double>>& prev) {
    const std::size_t n = A.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(A.diag[i]));
    const double shift = mu + 1e-11 * (std::abs(mu) + 1.0);

    std::vector<double> lower(n > 1 ? n - 1 : 0), diag(n), upper(n > 1 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) diag[i] = A.diag[i] - shift * B.diag[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        lower[i] = A.off[i] - shift * B.off[i];
        upper[i] = lower[i];
    }

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = unif(rng);

    auto b_orthogonalize = [&](std::vector<double>& v) {
        for (const auto& p : prev) {
            const double c = b_inner(B, v, p) / b_inner(B, p, p);
            for (std::size_t i = 0; i < n; ++i) v[i] -= c * p[i];
        }
    };

    for (int it = 0; it < 6; ++it) {
        b_orthogonalize(x);
        auto bx = B.apply(x);
        x = solve_tridiag(lower, diag, upper, bx);
        double nrm = std::sqrt(b_inner(B, x, x));
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw NumericalError("inverse iteration failed");
        for (auto& v : x) v /= nrm;
    }
    b_orthogonalize(x);
    const double nrm = std::sqrt(b_inner(B, x, x));
    for (auto& v : x) v /= nrm;
    // fix sign: largest-magnitude component positive
    std::size_t imax = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    if (x[imax] < 0)
        for (auto& v : x) v = -v;
    return x;
}

} // namespace hyperstab
