#pragma once

namespace hyperstab {

// Parameter triple (n, p, lambda) for the shifted semilinear problem on the
// n-dimensional ball model. The constructor enforces the solvability window:
// lambda < (n-1)^2/4 in the subcritical range 1 < p < (n+2)/(n-2), and
// n(n-2)/4 < lambda < (n-1)^2/4 with n >= 4 at the critical exponent.
class ModelParams {
public:
    ModelParams(int n, double p, double lambda);

    // Skips the solvability-window validation (exponent above critical or
    // lambda outside the admissible band). The solvers make no promises for
    // such parameters; the shooting solver reports a bracket failure when no
    // decaying profile exists.
    static ModelParams unchecked(int n, double p, double lambda);

    int n() const { return n_; }
    double p() const { return p_; }
    double lambda() const { return lambda_; }
    bool critical() const { return critical_; }

    double critical_exponent() const { return (n_ + 2.0) / (n_ - 2.0); }
    double spectral_bottom() const { return 0.25 * (n_ - 1.0) * (n_ - 1.0); }

private:
    ModelParams() = default;
    int n_ = 3;
    double p_ = 2.0;
    double lambda_ = 0.0;
    bool critical_ = false;
};

} // namespace hyperstab
