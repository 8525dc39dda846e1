#pragma once

#include <vector>

namespace hyperstab {

// Point of the unit-ball model, |coords| < 1 strictly.
class BallPoint {
public:
    explicit BallPoint(std::vector<double> coords);
    const std::vector<double>& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size(); }
    double norm_sq() const;

private:
    std::vector<double> coords_;
};

// Geodesic distance between two ball-model points.
double hyperbolic_distance(const BallPoint& x, const BallPoint& y);

// Distance from the origin, log((1+|x|)/(1-|x|)).
double hyperbolic_distance_to_origin(const BallPoint& x);

// Mobius translation moving the origin to b.
BallPoint hyperbolic_translate(const BallPoint& b, const BallPoint& x);

// Hyperbolic law of cosines: distance between points at radii rho1, rho2 with
// angle theta between their rays from the origin.
double geodesic_cosine(double rho1, double rho2, double theta);

// Green's function of the Laplace-Beltrami operator at separation r > 0:
// the integral of (sinh s)^{-(n-1)} from r to infinity.
double green_function(int n, double r);

// Surface measure of the unit (n-1)-sphere.
double sphere_surface(int n);

// Integral of exp(-beta*rho) * sinh(rho)^k on [r0, inf), k >= 0 integer,
// beta > k required for convergence. Exact binomial expansion.
double exp_sinh_tail(double beta, int k, double r0);

// Integral of sinh(rho)^k on [0, R], k >= 0 integer, in closed form.
double sinh_power_integral(int k, double R);

} // namespace hyperstab
