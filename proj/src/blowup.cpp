#include "netdiff/blowup.hpp"

#include <algorithm>
#include <cmath>

namespace netdiff {

namespace {

bool nonnegative(const NodeField& u) { return u.minCoeff() >= 0.0; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

BoundResult criterion_mass(const ProblemSpec& ps) {
    validate(ps);
    BoundResult res;
    if (!nonnegative(ps.u0)) {
        res.note = "requires nonnegative initial data";
        return res;
    }
    const double p = ps.p;
    const double vol = ps.graph.total_measure();
    const double a0 = ps.a.maxCoeff();
    const double z0 = integral(ps.graph, ps.u0);
    res.witness = z0;
    if (a0 == 0.0) {
        // Limiting form of the bound as max a -> 0; reported in the note only.
        res.threshold = 0.0;
        if (z0 > 0.0)
            res.note = "max a = 0: outside the criterion; limiting-form bound T <= " +
                       fmt(std::pow(z0, 1.0 - p) * std::pow(vol, p - 1.0) / (p - 1.0));
        else
            res.note = "max a = 0";
        return res;
    }
    res.threshold = std::pow(a0, 1.0 / (p - 1.0)) * vol;
    if (z0 > res.threshold) {
        res.applicable = true;
        const double q = std::pow(vol, p - 1.0) * a0 * std::pow(z0, 1.0 - p);
        res.t_bound = std::log(1.0 / (1.0 - q)) / ((p - 1.0) * a0);
    }
    return res;
}

BoundResult criterion_eigen(const ProblemSpec& ps, const EigenPair& pair) {
    validate(ps);
    BoundResult res;
    if (!nonnegative(ps.u0)) {
        res.note = "requires nonnegative initial data";
        return res;
    }
    if (!(pair.lambda_a > 0.0)) {
        res.note = "requires lambda_a > 0";
        return res;
    }
    const double p = ps.p;
    const double phi_mass = integral(ps.graph, pair.phi);
    const double y0 = integral(ps.graph, (pair.phi.array() * ps.u0.array()).matrix());
    res.threshold = std::pow(pair.lambda_a, 1.0 / (p - 1.0)) * phi_mass;
    res.witness = y0;
    if (y0 > res.threshold) {
        res.applicable = true;
        const double q =
            pair.lambda_a * std::pow(phi_mass, p - 1.0) * std::pow(y0, 1.0 - p);
        res.t_bound = std::log(1.0 / (1.0 - q)) / ((p - 1.0) * pair.lambda_a);
    }
    return res;
}

double energy_time_bound(double p, double total_measure, double l2_u0, double J0) {
    const double vol = total_measure;
    if (J0 < 0.0)
        return (p + 1.0) / ((p - 1.0) * (p - 1.0)) * std::pow(vol, (p - 1.0) / 2.0) *
               std::pow(l2_u0, 1.0 - p);
    const double pw = std::pow(p - 1.0, 2.0 / (p + 1.0));
    const double first =
        (p + 1.0) *
        (std::pow(4.0 * (p + 1.0) * std::pow(vol, (p - 1.0) / 2.0) * J0, 2.0 / (p + 1.0)) -
         pw * l2_u0 * l2_u0) /
        (pw * (2.0 * (p - 1.0) * std::pow(vol, (1.0 - p) / 2.0) * std::pow(l2_u0, p + 1.0) -
               4.0 * (p + 1.0) * J0));
    const double second = 2.0 * (p + 1.0) * std::pow(l2_u0, 1.0 - p) /
                          ((p - 1.0) * (p - 1.0) * std::pow(vol, (1.0 - p) / 2.0));
    return std::max(first, second);
}

double energy_time_bound_alt(double p, double total_measure, double l2_u0, double J0) {
    const double w0 = l2_u0 * l2_u0;
    const double d0 = 4.0 * J0;
    const double d1 = (2.0 * p - 2.0) / (p + 1.0) * std::pow(total_measure, (1.0 - p) / 2.0);
    const double alpha = (p + 1.0) / 2.0;
    if (J0 < 0.0) return std::pow(w0, 1.0 - alpha) / ((alpha - 1.0) * d1);
    const double eta0 = d1 * std::pow(w0, alpha) - d0;
    const double first = (std::pow(2.0 * d0 / d1, 1.0 / alpha) - w0) / eta0;
    const double second = 2.0 * std::pow(w0, 1.0 - alpha) / ((alpha - 1.0) * d1);
    return std::max(first, second);
}

BoundResult criterion_energy(const ProblemSpec& ps) {
    validate(ps);
    BoundResult res;
    if (!nonnegative(ps.u0)) {
        res.note = "requires nonnegative initial data";
        return res;
    }
    const double p = ps.p;
    const double vol = ps.graph.total_measure();
    const double l2 = lp_norm(ps.graph, ps.u0, 2.0);
    const double J0 = energy_J(ps, ps.u0);
    const double c3 =
        (p - 1.0) / (2.0 * (p + 1.0)) * std::pow(vol, (1.0 - p) / 2.0) * std::pow(l2, p + 1.0);
    res.threshold = c3;
    res.witness = J0;
    if (l2 == 0.0) {
        res.note = "u0 == 0";
        return res;
    }
    if (J0 < c3) {
        res.applicable = true;
        res.t_bound = energy_time_bound(p, vol, l2, J0);
        res.note = J0 < 0.0 ? "negative-energy branch" : "sub-threshold-energy branch";
    }
    return res;
}

BoundResult criterion_equilibrium(const ProblemSpec& ps, const NodeField& v, double res_tol) {
    validate(ps);
    check_field(ps.graph, v);
    BoundResult res;
    if (v.minCoeff() <= 0.0) {
        res.note = "candidate fails positivity";
        return res;
    }
    const NodeField residual = laplacian(ps.graph, v) -
                               (ps.a.array() * v.array()).matrix() +
                               v.array().pow(ps.p).matrix();
    const double rnorm = residual.lpNorm<Eigen::Infinity>();
    res.witness = rnorm;
    res.threshold = res_tol;
    if (rnorm > res_tol) {
        res.note = "candidate residual " + fmt(rnorm) + " above tolerance";
        return res;
    }
    if (!((ps.u0.array() >= v.array()).all())) {
        res.note = "u0 is not >= the equilibrium";
        return res;
    }
    if (ps.u0 == v) {
        res.note = "u0 coincides with the equilibrium";
        return res;
    }
    res.applicable = true;
    res.note = "finite maximal time certified; no closed-form bound";
    return res;
}

RateFit fit_blowup_rate(const Trajectory& traj, double p, int window) {
    if (traj.status != Status::BlowUp)
        throw ValidationError("rate fit requires a BlowUp trajectory");
    if (window < 3) throw ValidationError("rate-fit window too small");

    const std::size_t n = traj.times.size();
    std::vector<std::size_t> idx;
    const double peak = traj.states.back().maxCoeff();
    const double floor = 0.01 * peak;
    for (std::size_t k = 0; k < n; ++k)
        if (traj.states[k].maxCoeff() >= floor) idx.push_back(k);
    if (static_cast<int>(idx.size()) < window)
        throw ValidationError("too few samples before blow-up for the rate fit");
    idx.erase(idx.begin(), idx.end() - window);

    double prev = -std::numeric_limits<double>::infinity();
    for (auto k : idx) {
        const double m = traj.states[k].maxCoeff();
        if (m <= prev) throw ValidationError("non-monotone max u in the rate-fit window");
        prev = m;
    }

    // (max u)^{1-p} is asymptotically affine in t with slope -(p-1).
    double st = 0.0, sy = 0.0;
    for (auto k : idx) {
        st += traj.times[k];
        sy += std::pow(traj.states[k].maxCoeff(), 1.0 - p);
    }
    const double tbar = st / idx.size(), ybar = sy / idx.size();
    double sxx = 0.0, sxy = 0.0;
    for (auto k : idx) {
        const double dt = traj.times[k] - tbar;
        sxx += dt * dt;
        sxy += dt * (std::pow(traj.states[k].maxCoeff(), 1.0 - p) - ybar);
    }
    const double slope = sxy / sxx;
    if (!(slope < 0.0)) throw ValidationError("rate-fit transform is not decreasing");

    RateFit fit;
    fit.t_hat = std::max(tbar - ybar / slope, traj.t_detect);
    std::vector<double> rates;
    for (auto k : idx) {
        const double r =
            (fit.t_hat - traj.times[k]) * std::pow(traj.states[k].maxCoeff(), p - 1.0);
        fit.rate_samples.emplace_back(traj.times[k], r);
        rates.push_back(r);
    }
    std::sort(rates.begin(), rates.end());
    const std::size_t m = rates.size();
    fit.limit_estimate = (m % 2 == 1) ? rates[m / 2] : 0.5 * (rates[m / 2 - 1] + rates[m / 2]);
    return fit;
}

AnalysisReport analyze(const ProblemSpec& ps,
                       const std::optional<NodeField>& equilibrium_candidate,
                       unsigned long long lambda_seed) {
    validate(ps);
    require_nontrivial_potential(ps);
    if (ps.ubar != 0.0)
        throw ValidationError("analysis applies to the ubar = 0 equation");

    AnalysisReport rep;
    rep.eigen = principal_eigenpair(ps.graph, ps.a);
    rep.epsilon0 = l2_threshold_epsilon0(ps.graph, rep.eigen.lambda_a, ps.p);
    rep.sigma = 0.5 * rep.eigen.lambda_a;
    const auto sd = small_data_threshold(rep.eigen, ps.p, rep.sigma);
    rep.delta = sd.delta;
    rep.C = sd.C;
    rep.well = classify(ps, 1e-10, lambda_seed);
    rep.mass = criterion_mass(ps);
    rep.eigen_bound = criterion_eigen(ps, rep.eigen);
    rep.energy = criterion_energy(ps);
    if (equilibrium_candidate)
        rep.equilibrium = criterion_equilibrium(ps, *equilibrium_candidate);
    else
        rep.equilibrium.note = "no equilibrium candidate supplied";

    for (const BoundResult* b : {&rep.mass, &rep.eigen_bound, &rep.energy, &rep.equilibrium})
        if (b->applicable && b->t_bound)
            rep.best_bound = rep.best_bound ? std::min(*rep.best_bound, *b->t_bound)
                                            : *b->t_bound;
    return rep;
}

} // namespace netdiff
