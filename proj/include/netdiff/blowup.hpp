#ifndef NETDIFF_BLOWUP_HPP
#define NETDIFF_BLOWUP_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netdiff/dynamics.hpp"
#include "netdiff/spectral.hpp"
#include "netdiff/well.hpp"

namespace netdiff {

/// Outcome of one blow-up criterion: the cutoff it compares against, the
/// quantity compared, and (when applicable) the closed-form upper bound on
/// the maximal existence time.
struct BoundResult {
    bool applicable = false;
    double threshold = 0.0;
    double witness = 0.0;
    std::optional<double> t_bound; // absent for the equilibrium criterion
    std::string note;
};

/// Mass criterion: applicable when u0 >= 0 and int u0 dmu > c1 with
/// c1 = (max a)^{1/(p-1)} |V|; then
///   T <= log(1 / (1 - |V|^{p-1} (max a) (int u0 dmu)^{1-p})) / ((p-1) max a).
BoundResult criterion_mass(const ProblemSpec& ps);

/// Eigenfunction-weighted criterion: applicable when u0 >= 0 and
/// int phi u0 dmu > c2 = lambda_a^{1/(p-1)} int phi dmu; then
///   T <= log(1 / (1 - lambda_a (int phi dmu)^{p-1} (int phi u0 dmu)^{1-p}))
///        / ((p-1) lambda_a).
BoundResult criterion_eigen(const ProblemSpec& ps, const EigenPair& pair);

/// Initial-energy criterion: applicable when u0 >= 0, u0 != 0 and
/// J(u0) < c3 = ((p-1)/(2(p+1))) |V|^{(1-p)/2} ||u0||_2^{p+1}. The bound is
///   J < 0:  T <= ((p+1)/(p-1)^2) |V|^{(p-1)/2} ||u0||_2^{1-p}
///   else:   the max{...} expression of the two-branch estimate.
BoundResult criterion_energy(const ProblemSpec& ps);

/// Super-equilibrium criterion: v > 0 with residual ||lap v - a v + v^p||_inf
/// <= res_tol, u0 >= v and u0 != v certify a finite maximal time. No
/// closed-form bound is produced (the proof's constant depends on run-time
/// quantities).
BoundResult criterion_equilibrium(const ProblemSpec& ps, const NodeField& v,
                                  double res_tol = 1e-8);

/// Upper bound of the energy criterion as one direct closed-form expression.
/// Exposed together with the alternate form below as a cross-check pair; the
/// two are algebraically identical but independently coded.
double energy_time_bound(double p, double total_measure, double l2_u0, double J0);

/// Same bound via the auxiliary quantities of the underlying growth ODE
/// (w0 = ||u0||_2^2, d0 = 4 J0, d1, alpha = (p+1)/2, eta0 = d1 w0^alpha - d0).
double energy_time_bound_alt(double p, double total_measure, double l2_u0, double J0);

/// Blow-up-rate extrapolation from the tail of a blow-up trajectory.
struct RateFit {
    double t_hat = 0.0;                                  // extrapolated blow-up time
    std::vector<std::pair<double, double>> rate_samples; // (t, (t_hat - t) (max u)^{p-1})
    double limit_estimate = 0.0;                         // median rate sample; -> 1/(p-1)
};

/// Least-squares fit of (max u)^{1-p} against t over the last `window`
/// samples with max u >= 1% of the final amplitude. Requires a BlowUp
/// trajectory with a monotone tail.
RateFit fit_blowup_rate(const Trajectory& traj, double p, int window = 20);

/// Everything the toolkit knows about one instance.
struct AnalysisReport {
    EigenPair eigen;
    double epsilon0 = 0.0;
    double sigma = 0.0; // decay rate used for the constructive constants below
    double delta = 0.0;
    double C = 0.0;
    WellReport well;
    BoundResult mass;
    BoundResult eigen_bound;
    BoundResult energy;
    BoundResult equilibrium;
    std::optional<double> best_bound; // min over applicable closed-form bounds
};

/// Run the full analysis: eigenpair, decay thresholds (with sigma =
/// lambda_a / 2), well classification and every blow-up criterion. The
/// equilibrium criterion is only evaluated against a supplied candidate.
/// Requires ubar = 0 and a nontrivial potential.
AnalysisReport analyze(const ProblemSpec& ps,
                       const std::optional<NodeField>& equilibrium_candidate = {},
                       unsigned long long lambda_seed = kLambdaSeed);

} // namespace netdiff

#endif
