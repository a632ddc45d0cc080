#ifndef NETDIFF_WELL_HPP
#define NETDIFF_WELL_HPP

#include <string>

#include "netdiff/graph.hpp"

namespace netdiff {

/// One instance of the semilinear problem du/dt = lap u - a (u - ubar) + |u|^{p-1} u.
/// The variational machinery (J, N, the well) always refers to ubar = 0.
struct ProblemSpec {
    Graph graph;
    NodeField a;    // potential, a >= 0
    double p;       // nonlinearity exponent, p > 1
    NodeField u0;   // initial data
    double ubar = 0.0;
};

/// Throws ValidationError unless p > 1, a >= 0 and both fields live on the graph.
void validate(const ProblemSpec& ps);

/// Throws ValidationError when a is identically zero (required by the
/// spectral/variational results).
void require_nontrivial_potential(const ProblemSpec& ps);

enum class WellClass { InWell, Exterior, Indeterminate };

std::string to_string(WellClass c);

/// Snapshot of the initial data against the potential well.
struct WellReport {
    double J0 = 0.0;
    double N0 = 0.0;
    double Lambda = 0.0;
    double depth_r = 0.0;  // ((p-1)/(2(p+1))) Lambda^{(p+1)/(p-1)}
    double norm_1a = 0.0;
    WellClass classification = WellClass::Indeterminate;
};

/// Energy J(u) = (1/2) int(|grad u|^2 + a u^2) dmu - (1/(p+1)) int |u|^{p+1} dmu.
double energy_J(const ProblemSpec& ps, const NodeField& u);

/// Nehari functional N(u) = int(|grad u|^2 + a u^2) dmu - int |u|^{p+1} dmu.
double nehari_N(const ProblemSpec& ps, const NodeField& u);

/// ||u||_{1,a} = (int(|grad u|^2 + a u^2) dmu)^{1/2}.
double norm_1a(const ProblemSpec& ps, const NodeField& u);

/// The scale s* with N(s* u) = 0 for u != 0:
/// s* = (||u||_{1,a}^2 / ||u||_{p+1}^{p+1})^{1/(p-1)}.
double nehari_scale(const ProblemSpec& ps, const NodeField& u);

/// Best constant of the embedding quotient and the minimizer that attains it.
struct LambdaResult {
    double value = 0.0;
    NodeField minimizer; // normalized to ||.||_{p+1} = 1
};

/// Fixed default seed for the restart stream; results are deterministic for
/// fixed inputs and seed.
inline constexpr unsigned long long kLambdaSeed = 0x9e3779b97f4a7c15ULL;

/// Lambda = inf ||u||_{1,a}^2 / ||u||_{p+1}^2 over u != 0, by normalized
/// gradient descent on the log-quotient over the unit L^{p+1} sphere with
/// `seeds` random restarts drawn from `seed`.
LambdaResult lambda_constant(const ProblemSpec& ps, double tol = 1e-10, int seeds = 16,
                             unsigned long long seed = kLambdaSeed);

/// Well depth r = ((p-1)/(2(p+1))) Lambda^{(p+1)/(p-1)}.
double well_depth(const ProblemSpec& ps, double tol = 1e-10);

/// Guaranteed lower bound r - eps/(p+1) for inf{J(u) : N(u) = -eps}, eps > 0.
double depth_shift(double r, double p, double eps);

/// Classify ps.u0 against the well: InWell iff u0 == 0 or (J0 < r and N0 > 0);
/// Exterior iff J0 < r and N0 < 0; boundary and above-depth cases are
/// Indeterminate.
WellReport classify(const ProblemSpec& ps, double tol = 1e-10,
                    unsigned long long seed = kLambdaSeed);

} // namespace netdiff

#endif
