#pragma once

#include <functional>
#include <vector>

namespace hyperstab {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int npts);

// Gauss rule on [-1, 1] for the ultraspherical weight (1 - x^2)^alpha, alpha > -1.
// alpha = 0 reduces to Gauss-Legendre. Built by Golub-Welsch on the Jacobi matrix.
QuadRule gauss_ultraspherical(int npts, double alpha);

// Affine map of a rule to [a, b].
QuadRule map_to_interval(const QuadRule& rule, double a, double b);

// Adaptive Simpson on [a, b] to absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

} // namespace hyperstab
