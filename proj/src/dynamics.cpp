#include "netdiff/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netdiff {

std::string to_string(Status s) {
    switch (s) {
        case Status::ReachedHorizon: return "ReachedHorizon";
        case Status::Converged: return "Converged";
        case Status::BlowUp: return "BlowUp";
        default: return "StepUnderflow";
    }
}

NodeField rhs(const ProblemSpec& ps, const NodeField& u) {
    NodeField f = laplacian(ps.graph, u);
    f.array() -= ps.a.array() * (u.array() - ps.ubar);
    f.array() += u.array().abs().pow(ps.p - 1.0) * u.array();
    return f;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Step controller constants (PI stabilization).
constexpr double kSafe = 0.9, kFacMax = 5.0, kFacMin = 0.2, kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;

struct Stepper {
    const ProblemSpec& ps;
    NodeField k2, k3, k4, k5, k6, k7, y5, err;

    explicit Stepper(const ProblemSpec& p) : ps(p) {}

    // One trial step from (y, f0 = F(y)) with size h. Returns the scaled
    // error norm; y5 holds the 5th-order result and k7 = F(y5) (FSAL).
    double attempt(const NodeField& y, const NodeField& f0, double h, double atol, double rtol) {
        k2 = rhs(ps, y + h * (a21 * f0));
        k3 = rhs(ps, y + h * (a31 * f0 + a32 * k2));
        k4 = rhs(ps, y + h * (a41 * f0 + a42 * k2 + a43 * k3));
        k5 = rhs(ps, y + h * (a51 * f0 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(ps, y + h * (a61 * f0 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y5 = y + h * (b1 * f0 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs(ps, y5);
        err = h * (e1 * f0 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double sum = 0.0;
        for (int i = 0; i < y.size(); ++i) {
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double q = err[i] / sc;
            sum += q * q;
        }
        const double norm = std::sqrt(sum / static_cast<double>(y.size()));
        return std::isfinite(norm) ? norm : std::numeric_limits<double>::infinity();
    }
};

double initial_step(const ProblemSpec& ps, const NodeField& y0, const NodeField& f0,
                    const IntegratorOptions& o) {
    auto scnorm = [&](const NodeField& v, const NodeField& ref) {
        double sum = 0.0;
        for (int i = 0; i < v.size(); ++i) {
            const double sc = o.atol + o.rtol * std::abs(ref[i]);
            sum += (v[i] / sc) * (v[i] / sc);
        }
        return std::sqrt(sum / static_cast<double>(v.size()));
    };
    const double d0 = scnorm(y0, y0);
    const double d1 = scnorm(f0, y0);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, o.t_horizon);
    const NodeField y1 = y0 + h0 * f0;
    const NodeField f1 = rhs(ps, y1);
    const double d2 = scnorm(f1 - f0, y0) / h0;
    double h1;
    if (std::max(d1, d2) <= 1e-15)
        h1 = std::max(1e-6, h0 * 1e-3);
    else
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    return std::min({100.0 * h0, h1, o.t_horizon});
}

void validate_options(const IntegratorOptions& o) {
    if (!(o.rtol >= 1e-13)) throw ValidationError("rtol must be >= 1e-13");
    if (!(o.atol > 0.0) || !(o.t_horizon > 0.0) || !(o.u_max > 0.0) || !(o.conv_tol > 0.0))
        throw ValidationError("integrator options must be positive");
    if (o.record_every < 1) throw ValidationError("record_every must be >= 1");
    if (o.h_min < 0.0 || o.sync_dt < 0.0 || o.h_fixed < 0.0)
        throw ValidationError("step controls must be nonnegative");
}

} // namespace

Trajectory integrate(const ProblemSpec& ps, const IntegratorOptions& opts) {
    validate(ps);
    validate_options(opts);

    Trajectory traj;
    const double h_min = opts.h_min > 0.0 ? opts.h_min : 1e-14 * opts.t_horizon;

    NodeField y = ps.u0;
    double t = 0.0;
    long steps_since_record = 0;

    auto record = [&](double tt, const NodeField& state) {
        traj.times.push_back(tt);
        traj.states.push_back(state);
        traj.traces.push_back({state.lpNorm<Eigen::Infinity>(), lp_norm(ps.graph, state, 2.0),
                               energy_J(ps, state), nehari_N(ps, state)});
    };
    auto record_final = [&](double tt, const NodeField& state) {
        if (traj.times.empty() || traj.times.back() != tt) record(tt, state);
    };

    record(0.0, y);
    if (y.lpNorm<Eigen::Infinity>() < opts.conv_tol) {
        traj.status = Status::Converged;
        traj.t_detect = 0.0;
        return traj;
    }
    if (!y.allFinite() || y.lpNorm<Eigen::Infinity>() >= opts.u_max) {
        traj.status = Status::BlowUp;
        traj.t_detect = 0.0;
        traj.bracket = 0.0;
        return traj;
    }

    Stepper stepper(ps);
    // A controller stall at amplitudes far above the initial scale signals
    // blow-up beyond resolution rather than stiffness.
    const double growth_blowup =
        opts.underflow_growth * (1.0 + ps.u0.lpNorm<Eigen::Infinity>());
    auto stall_status = [&](double amplitude) {
        return (amplitude >= opts.u_max || amplitude >= growth_blowup)
                   ? Status::BlowUp
                   : Status::StepUnderflow;
    };
    NodeField f0 = rhs(ps, y);
    double h = opts.h_fixed > 0.0 ? opts.h_fixed : initial_step(ps, y, f0, opts);
    double facold = 1e-4;
    const bool fixed = opts.h_fixed > 0.0;

    while (true) {
        if (t >= opts.t_horizon) {
            traj.status = Status::ReachedHorizon;
            traj.t_detect = t;
            record_final(t, y);
            return traj;
        }

        // Clamp the step so accepted times hit sync multiples and the horizon.
        double t_stop = opts.t_horizon;
        if (opts.sync_dt > 0.0) {
            const double next_sync =
                (std::floor(t / opts.sync_dt + 1e-9) + 1.0) * opts.sync_dt;
            t_stop = std::min(t_stop, next_sync);
        }
        bool clamped = false;
        double h_try = h;
        if (t + 1.01 * h_try >= t_stop) {
            h_try = t_stop - t;
            clamped = true;
        }

        const double errnorm = stepper.attempt(y, f0, h_try, opts.atol, opts.rtol);

        if (fixed || errnorm <= 1.0) {
            t = clamped ? t_stop : t + h_try;
            y = stepper.y5;
            f0 = stepper.k7;
            traj.n_accepted++;

            const double umax_now = y.allFinite()
                                        ? y.lpNorm<Eigen::Infinity>()
                                        : std::numeric_limits<double>::infinity();
            if (umax_now >= opts.u_max) {
                traj.status = Status::BlowUp;
                traj.t_detect = t;
                traj.bracket = h_try;
                record_final(t, y);
                return traj;
            }
            if (umax_now < opts.conv_tol) {
                traj.status = Status::Converged;
                traj.t_detect = t;
                record_final(t, y);
                return traj;
            }
            if (++steps_since_record >= opts.record_every) {
                record(t, y);
                steps_since_record = 0;
            }

            if (!fixed) {
                const double fac11 = std::pow(std::max(errnorm, 1e-30), kExpo);
                double fac = fac11 / std::pow(facold, kBeta);
                fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
                h = clamped ? std::max(h, h_try / fac) : h_try / fac;
                facold = std::max(errnorm, 1e-4);
                if (t < opts.t_horizon && (h < h_min || t + h == t)) {
                    traj.status = stall_status(umax_now);
                    traj.t_detect = t;
                    traj.bracket = std::max(h, h_min);
                    record_final(t, y);
                    return traj;
                }
            }
        } else {
            traj.n_rejected++;
            const double fac11 = std::pow(errnorm, kExpo);
            h = h_try / std::min(fac11 / kSafe, 1.0 / kFacMin);
            if (h < h_min || t + h == t) {
                // error test still failing at the smallest permitted step
                const double umax_now = y.allFinite()
                                            ? y.lpNorm<Eigen::Infinity>()
                                            : std::numeric_limits<double>::infinity();
                traj.status = stall_status(umax_now);
                traj.t_detect = t;
                traj.bracket = h_min;
                record_final(t, y);
                return traj;
            }
        }
    }
}

std::vector<EnergySample> energy_trace(const ProblemSpec& ps, const Trajectory& traj) {
    validate(ps);
    if (ps.ubar != 0.0)
        throw ValidationError("energy_trace applies to the ubar = 0 equation");
    std::vector<EnergySample> out;
    out.reserve(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const NodeField& u = traj.states[k];
        check_field(ps.graph, u);
        const NodeField f = rhs(ps, u);
        out.push_back({traj.times[k], energy_J(ps, u), nehari_N(ps, u),
                       -(ps.graph.mu().array() * f.array().square()).sum()});
    }
    return out;
}

EnvelopeReport decay_envelope_check(const ProblemSpec& ps, const Trajectory& traj,
                                    const EigenPair& pair, double tol_env) {
    validate(ps);
    EnvelopeReport rep;
    if (ps.ubar != 0.0) {
        rep.reason = "ubar != 0";
        return rep;
    }
    if (ps.a.maxCoeff() == 0.0) {
        rep.reason = "a == 0";
        return rep;
    }
    const double l2_0 = lp_norm(ps.graph, ps.u0, 2.0);
    const double eps0 = l2_threshold_epsilon0(ps.graph, pair.lambda_a, ps.p);
    if (!(l2_0 < eps0)) {
        rep.reason = "||u0||_2 not below epsilon0";
        return rep;
    }
    rep.applicable = true;
    if (l2_0 == 0.0) {
        rep.max_ratio = 0.0;
        rep.pass = true;
        return rep;
    }
    const double amp = l2_0 / std::sqrt(ps.graph.mu_min());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const double env = amp * std::exp(-0.5 * pair.lambda_a * traj.times[k]);
        rep.max_ratio = std::max(rep.max_ratio, traj.traces[k].max_abs_u / env);
    }
    rep.pass = rep.max_ratio <= 1.0 + tol_env;
    return rep;
}

} // namespace netdiff
