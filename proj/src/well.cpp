#include "netdiff/well.hpp"

#include <cmath>
#include <random>

#include "netdiff/spectral.hpp"

namespace netdiff {

void validate(const ProblemSpec& ps) {
    check_field(ps.graph, ps.a);
    check_field(ps.graph, ps.u0);
    if (!(ps.p > 1.0)) throw ValidationError("exponent p must be > 1");
    if (ps.a.minCoeff() < 0.0) throw ValidationError("potential has negative entries");
    if (!std::isfinite(ps.ubar)) throw ValidationError("ubar must be finite");
}

void require_nontrivial_potential(const ProblemSpec& ps) {
    if (ps.a.maxCoeff() == 0.0)
        throw ValidationError("potential must not be identically zero");
}

std::string to_string(WellClass c) {
    switch (c) {
        case WellClass::InWell: return "InWell";
        case WellClass::Exterior: return "Exterior";
        default: return "Indeterminate";
    }
}

namespace {

double grad_term(const ProblemSpec& ps, const NodeField& u) {
    return dirichlet_energy(ps.graph, u) +
           (ps.graph.mu().array() * ps.a.array() * u.array().square()).sum();
}

double pp1_integral(const ProblemSpec& ps, const NodeField& u) {
    return (ps.graph.mu().array() * u.array().abs().pow(ps.p + 1.0)).sum();
}

} // namespace

double energy_J(const ProblemSpec& ps, const NodeField& u) {
    check_field(ps.graph, u);
    return 0.5 * grad_term(ps, u) - pp1_integral(ps, u) / (ps.p + 1.0);
}

double nehari_N(const ProblemSpec& ps, const NodeField& u) {
    check_field(ps.graph, u);
    return grad_term(ps, u) - pp1_integral(ps, u);
}

double norm_1a(const ProblemSpec& ps, const NodeField& u) {
    check_field(ps.graph, u);
    return std::sqrt(grad_term(ps, u));
}

double nehari_scale(const ProblemSpec& ps, const NodeField& u) {
    check_field(ps.graph, u);
    if (u.isZero(0.0)) throw ValidationError("nehari_scale of the zero field");
    return std::pow(grad_term(ps, u) / pp1_integral(ps, u), 1.0 / (ps.p - 1.0));
}

LambdaResult lambda_constant(const ProblemSpec& ps, double tol, int seeds,
                             unsigned long long seed_base) {
    validate(ps);
    require_nontrivial_potential(ps);
    const int n = ps.graph.size();
    const Eigen::MatrixXd S = stiffness_matrix(ps.graph, ps.a);
    const Eigen::ArrayXd mu = ps.graph.mu().array();
    const double p = ps.p;

    auto pnorm = [&](const NodeField& u) {
        return std::pow((mu * u.array().abs().pow(p + 1.0)).sum(), 1.0 / (p + 1.0));
    };
    // quotient with ||u||_{p+1} = 1 maintained by the caller
    auto quad = [&](const NodeField& u) { return u.dot(S * u); };

    LambdaResult best;
    best.value = std::numeric_limits<double>::infinity();
    std::mt19937_64 eng(seed_base);
    bool converged_any = false;

    for (int seed = 0; seed < seeds; ++seed) {
        NodeField u(n);
        for (int i = 0; i < n; ++i)
            u[i] = 2.0 * ((eng() >> 11) * 0x1.0p-53) - 1.0;
        if (u.isZero(0.0)) u.setOnes();
        u /= pnorm(u);

        double q = quad(u);
        double eta = 1.0;
        bool converged = (n == 1); // the quotient is constant on one node
        for (int it = 0; it < 50000 && !converged; ++it) {
            const NodeField su = S * u;
            const double A = u.dot(su);
            const double P = (mu * u.array().abs().pow(p + 1.0)).sum();
            const NodeField grad =
                2.0 / A * su -
                (2.0 / P) * (mu * u.array().abs().pow(p - 1.0) * u.array()).matrix();
            bool stepped = false;
            while (eta > 1e-18) {
                NodeField v = u - eta * grad;
                const double vn = pnorm(v);
                if (vn > 0.0) {
                    v /= vn;
                    const double qv = quad(v);
                    if (qv < q) {
                        const double drop = (q - qv) / q;
                        u = v;
                        q = qv;
                        eta *= 1.25;
                        stepped = true;
                        if (drop < tol) converged = true;
                        break;
                    }
                }
                eta *= 0.5;
            }
            if (!stepped) converged = true; // stationary to machine precision
        }
        if (converged) converged_any = true;
        if (q < best.value) {
            best.value = q;
            best.minimizer = u;
        }
    }
    if (!converged_any)
        throw ConvergenceError("Lambda minimizer did not converge within the iteration budget");
    return best;
}

double well_depth(const ProblemSpec& ps, double tol) {
    const double lambda = lambda_constant(ps, tol).value;
    return (ps.p - 1.0) / (2.0 * (ps.p + 1.0)) * std::pow(lambda, (ps.p + 1.0) / (ps.p - 1.0));
}

double depth_shift(double r, double p, double eps) {
    if (!(eps > 0.0)) throw ValidationError("depth_shift requires eps > 0");
    return r - eps / (p + 1.0);
}

WellReport classify(const ProblemSpec& ps, double tol, unsigned long long seed) {
    validate(ps);
    require_nontrivial_potential(ps);
    WellReport rep;
    rep.Lambda = lambda_constant(ps, tol, 16, seed).value;
    rep.depth_r = (ps.p - 1.0) / (2.0 * (ps.p + 1.0)) *
                  std::pow(rep.Lambda, (ps.p + 1.0) / (ps.p - 1.0));
    rep.J0 = energy_J(ps, ps.u0);
    rep.N0 = nehari_N(ps, ps.u0);
    rep.norm_1a = norm_1a(ps, ps.u0);
    if (ps.u0.isZero(0.0)) {
        rep.classification = WellClass::InWell;
    } else if (rep.J0 < rep.depth_r && rep.N0 > 0.0) {
        rep.classification = WellClass::InWell;
    } else if (rep.J0 < rep.depth_r && rep.N0 < 0.0) {
        rep.classification = WellClass::Exterior;
    } else {
        rep.classification = WellClass::Indeterminate;
    }
    return rep;
}

} // namespace netdiff
