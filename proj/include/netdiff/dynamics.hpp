#ifndef NETDIFF_DYNAMICS_HPP
#define NETDIFF_DYNAMICS_HPP

#include <string>
#include <vector>

#include "netdiff/spectral.hpp"
#include "netdiff/well.hpp"

namespace netdiff {

enum class Status { ReachedHorizon, Converged, BlowUp, StepUnderflow };

std::string to_string(Status s);

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-12;
    double t_horizon = 10.0;
    double u_max = 1e8;      // blow-up declaration threshold on max|u|
    double h_min = 0.0;      // 0 -> 1e-14 * t_horizon
    double conv_tol = 1e-9;  // ||u||_inf below which Converged is declared
    int record_every = 1;    // keep every k-th accepted step (first and last always kept)
    double sync_dt = 0.0;    // >0: accepted times include every multiple of sync_dt
    double h_fixed = 0.0;    // >0: fixed-step mode (error control off); test plumbing
    // A step-size stall is labeled BlowUp (not StepUnderflow) once max|u| has
    // grown past underflow_growth * (1 + max|u0|): the singularity is then
    // beyond floating-point time resolution even though u_max was not reached.
    double underflow_growth = 100.0;
};

struct TraceRow {
    double max_abs_u;
    double l2_norm;
    double J;
    double N;
};

struct Trajectory {
    std::vector<double> times;      // strictly increasing, starts at 0
    std::vector<NodeField> states;  // one per retained sample
    std::vector<TraceRow> traces;
    Status status = Status::ReachedHorizon;
    double t_detect = 0.0;   // time of the status event (last accepted time)
    double bracket = 0.0;    // width of the [t_detect, t_detect + bracket] blow-up bracket
    long n_accepted = 0;
    long n_rejected = 0;
};

/// Right side F(u) = lap u - a (u - ubar) + |u|^{p-1} u.
NodeField rhs(const ProblemSpec& ps, const NodeField& u);

/// Adaptive Dormand-Prince 5(4) integration with PI step control. Terminates
/// with one of the four statuses; deterministic for fixed inputs.
Trajectory integrate(const ProblemSpec& ps, const IntegratorOptions& opts = {});

struct EnergySample {
    double t;
    double J;
    double N;
    double dJdt; // -int rhs(u)^2 dmu, the dissipation identity evaluated at the sample
};

/// Per-sample J, N and the energy dissipation rate. Requires ubar = 0 and a
/// trajectory produced from the same problem.
std::vector<EnergySample> energy_trace(const ProblemSpec& ps, const Trajectory& traj);

struct EnvelopeReport {
    bool applicable = false;
    std::string reason;      // set when not applicable
    double max_ratio = 0.0;  // max over samples of ||u||_inf / envelope
    bool pass = false;       // max_ratio <= 1 + tol_env
};

/// Check the exponential decay envelope
///   ||u(t)||_inf <= (1/sqrt(mu_min)) ||u0||_2 exp(-lambda_a t / 2)
/// against a trajectory. Applicable when ||u0||_2 < eps0, ubar = 0 and a != 0.
EnvelopeReport decay_envelope_check(const ProblemSpec& ps, const Trajectory& traj,
                                    const EigenPair& pair, double tol_env = 1e-6);

} // namespace netdiff

#endif
