#include "netdiff/spectral.hpp"

#include <cmath>

namespace netdiff {

Eigen::MatrixXd combinatorial_laplacian(const Graph& g) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(g.size(), g.size());
    for (const auto& e : g.edges()) {
        K(e.a, e.a) += e.w;
        K(e.b, e.b) += e.w;
        K(e.a, e.b) -= e.w;
        K(e.b, e.a) -= e.w;
    }
    return K;
}

Eigen::MatrixXd stiffness_matrix(const Graph& g, const NodeField& a) {
    check_field(g, a);
    Eigen::MatrixXd S = combinatorial_laplacian(g);
    S.diagonal() += (g.mu().array() * a.array()).matrix();
    return S;
}

double rayleigh_quotient(const Graph& g, const NodeField& a, const NodeField& u) {
    check_field(g, a);
    check_field(g, u);
    if (a.minCoeff() < 0.0) throw ValidationError("potential has negative entries");
    if (u.isZero(0.0)) throw ValidationError("Rayleigh quotient of the zero field");
    const double num = dirichlet_energy(g, u) + (g.mu().array() * a.array() * u.array().square()).sum();
    const double den = (g.mu().array() * u.array().square()).sum();
    return num / den;
}

namespace {

// Cyclic Jacobi on a private copy of a symmetric matrix. Eigenvalues land in
// A's diagonal, eigenvectors in the columns of V.
void jacobi_eigensolve(Eigen::MatrixXd& A, Eigen::MatrixXd& V) {
    const int n = static_cast<int>(A.rows());
    V = Eigen::MatrixXd::Identity(n, n);
    if (n == 1) return;
    const double fro = A.norm();
    const double stop = std::max(fro * 1e-15, 1e-300);
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (std::sqrt(2.0 * off) <= stop) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                Eigen::VectorXd ap = A.col(p), aq = A.col(q);
                A.col(p) = c * ap - s * aq;
                A.col(q) = s * ap + c * aq;
                ap = A.row(p);
                aq = A.row(q);
                A.row(p) = c * ap.transpose() - s * aq.transpose();
                A.row(q) = s * ap.transpose() + c * aq.transpose();
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                Eigen::VectorXd vp = V.col(p), vq = V.col(q);
                V.col(p) = c * vp - s * vq;
                V.col(q) = s * vp + c * vq;
            }
        }
    }
    throw ConvergenceError("Jacobi eigensolver did not converge within the sweep budget");
}

} // namespace

EigenPair principal_eigenpair(const Graph& g, const NodeField& a, double tol) {
    check_field(g, a);
    if (a.minCoeff() < 0.0) throw ValidationError("potential has negative entries");

    EigenPair pair;
    if (a.maxCoeff() == 0.0)
        pair.note = "a == 0 everywhere: lambda_a = 0 and the positivity of the "
                    "eigenvalue fails; proceeding anyway";

    // Similarity transform to the mu-weighted symmetric form.
    const Eigen::ArrayXd d = g.mu().array().sqrt();
    Eigen::MatrixXd M = stiffness_matrix(g, a);
    M.array().colwise() /= d;
    M.array().rowwise() /= d.transpose();

    Eigen::MatrixXd V;
    jacobi_eigensolve(M, V);

    int imin = 0;
    for (int i = 1; i < g.size(); ++i)
        if (M(i, i) < M(imin, imin)) imin = i;
    pair.lambda_a = M(imin, imin);

    // Back-transform; normalizing the transformed vector to unit Euclidean
    // norm makes int phi^2 dmu = 1 exact.
    Eigen::VectorXd v = V.col(imin).normalized();
    pair.phi = (v.array() / d).matrix();
    if (pair.phi[0] < 0.0) pair.phi = -pair.phi;

    const NodeField r = -laplacian(g, pair.phi) + (a.array() * pair.phi.array()).matrix() -
                        pair.lambda_a * pair.phi;
    pair.residual = r.lpNorm<Eigen::Infinity>();
    if (pair.residual > tol * std::max(1.0, std::abs(pair.lambda_a)))
        throw ConvergenceError("principal eigenpair residual above tolerance");
    return pair;
}

SmallDataThreshold small_data_threshold(const EigenPair& pair, double p, double sigma) {
    if (!(p > 1.0)) throw ValidationError("small_data_threshold requires p > 1");
    if (!(sigma > 0.0) || !(sigma < pair.lambda_a))
        throw ValidationError("sigma must lie in (0, lambda_a)");
    const double lo = pair.phi.minCoeff();
    const double hi = pair.phi.maxCoeff();
    return {std::pow(pair.lambda_a - sigma, 1.0 / (p - 1.0)) * lo / (2.0 * hi), 2.0 * hi / lo};
}

double l2_threshold_epsilon0(const Graph& g, double lambda_a, double p) {
    if (!(p > 1.0)) throw ValidationError("l2_threshold_epsilon0 requires p > 1");
    if (!(lambda_a > 0.0)) throw ValidationError("l2_threshold_epsilon0 requires lambda_a > 0");
    const double num = lambda_a * lambda_a * std::pow(g.mu_min(), p + 1.0);
    return std::pow(num / (4.0 * g.total_measure()), 1.0 / (p - 1.0));
}

} // namespace netdiff
