#pragma once

#include "hyperstab/operators.hpp"
#include "hyperstab/profile.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hyperstab {

// Fast-diffusion parameters. The exponent window (H2) is m in (m_s, 1) with
// m_s = (n-2)/(n+2); uniform relative-error rate claims additionally need
// 3 <= n <= 5 and m < 1/2.
struct FlowParams {
    double m = 0.5;
    double dt = 0.02;
    double floor_rel = 1e-14;          // positivity floor, relative and tail-shaped
    double newton_tol = 1e-11;
    int max_newton = 50;
    bool implicit_reaction = true;      // false: reaction term frozen at the old state
    bool project_initial = true;        // remove the amplitude-ray seed from w0
    double T_hint = 1.0;                // dictionary extinction time for diagnostics
    int snapshot_every = 1;

    double p(int) const { return 1.0 / m; }
    void validate(int n) const;
};

struct FlowTraceRow {
    double tau = 0.0;
    double energy = 0.0;         // I_0(w)
    double entropy = 0.0;        // E[w]
    double sup_rel_err = 0.0;    // sup |w / U - 1|
    double residual_hminus1 = 0.0;
    double mass = 0.0;           // int w^{p+1}
    double lp_diff = 0.0;        // int |w - U|^{p+1}
};

struct RateFit {
    double rate = 0.0;       // positive = decay
    double sigma = 0.0;      // jackknife standard error
    bool valid = false;
};

struct FlowTrace {
    std::vector<FlowTraceRow> rows;
    std::vector<double> snapshot_tau;
    std::vector<std::vector<double>> snapshots; // nodal w at snapshot times
    std::vector<double> reference;              // nodal stationary state
    bool aborted = false;
    std::string abort_reason;
    std::size_t fit_begin = 0, fit_end = 0;     // rate-fit window into rows
    RateFit entropy_rate, lp_rate, sup_rate;

    void save_csv(const std::string& path) const;
};

// One-ground-state flow workbench: holds the discrete stationary profile the
// implicit stepper relaxes to and the assembled operators.
class FlowContext {
public:
    FlowContext(FlowParams fp, Profile ground_state);

    const FlowParams& params() const { return fp_; }
    const Profile& stationary() const { return stationary_; }
    GridPtr grid_ptr() const { return grid_; }
    double p() const { return p_; }

    // one backward-Euler step of the rescaled equation; throws on Newton
    // failure ("step failure") or floor contact ("positivity loss")
    std::vector<double> rescaled_step(const std::vector<double>& w, double dt) const;
    Profile rescaled_step(const Profile& w) const;

    FlowTrace run_rescaled_flow(const Profile& w0, double tau_end) const;

    // original-time fast diffusion; returns extinction-time estimate and trace
    std::pair<double, FlowTrace> run_original_flow(const Profile& u0,
                                                   double t_budget = 0.0) const;

    double energy(const std::vector<double>& w) const;
    double entropy(const std::vector<double>& w) const;
    double sup_relative_error(const std::vector<double>& w) const;
    double residual_dual_norm(const std::vector<double>& w) const;

    // signed gap between the discrete energy slope and the dissipation
    // integral at the midpoint state
    double dissipation_check(const std::vector<double>& w, const std::vector<double>& w_next,
                             double dt) const;

    // rescale an original-time state to the logarithmic frame
    std::vector<double> to_rescaled(const std::vector<double>& u) const;
    static double log_time(double t, double T, double m);

private:
    std::vector<double> step_implicit(const std::vector<double>& w, double dt,
                                      const std::vector<double>& reaction_base) const;
    void fill_rates(FlowTrace& tr) const;

    FlowParams fp_;
    Profile ground_;
    Profile stationary_;
    GridPtr grid_;
    double p_ = 2.0;
    SectorOperator op_;                 // lambda = 0, sector 0
    std::vector<double> mass_;          // lumped sinh mass per dof
    std::vector<double> floor_shape_;   // stationary profile normalized to max 1
    std::size_t ref_node_ = 0;          // tail-ratio reference dof
};

// Free-function forms of the trace diagnostics.
double flow_energy(const Profile& w, double p);
double flow_entropy(const Profile& w, const Profile& reference, double p);
double relative_error_sup(const Profile& w, const Profile& reference);

// Max over nodes and steps of d(tau) v - (2m/T)(v+1) past the dictionary onset
// time; expects a trace with snapshots and a reference profile.
double benilan_crandall_check(const FlowTrace& trace, const FlowParams& fp);

struct SmoothingReport {
    bool defined = false;     // false for stationary traces
    double sup_rate = 0.0;
    double sup_sigma = 0.0;
    double entropy_rate = 0.0;
    double kappa_bar = 0.0;   // sup-rate / entropy-rate
    double envelope_constant = 0.0;
    bool envelope_holds = false;
};
SmoothingReport smoothing_diagnostic(const FlowTrace& trace);

// least squares of log(y) vs tau over [begin, end) with jackknife error bars
RateFit fit_log_rate(const std::vector<double>& tau, const std::vector<double>& y,
                     std::size_t begin, std::size_t end);

} // namespace hyperstab
