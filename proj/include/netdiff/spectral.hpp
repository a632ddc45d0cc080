#ifndef NETDIFF_SPECTRAL_HPP
#define NETDIFF_SPECTRAL_HPP

#include <string>

#include <Eigen/Core>

#include "netdiff/graph.hpp"

namespace netdiff {

/// First eigenpair of -lap + a. phi is strictly positive and normalized to
/// int phi^2 dmu = 1; residual is ||-lap phi + a phi - lambda phi||_inf.
struct EigenPair {
    double lambda_a = 0.0;
    NodeField phi;
    double residual = 0.0;
    std::string note; // nonempty when a == 0 was accepted with a warning
};

/// Rayleigh quotient int(|grad u|^2 + a u^2)dmu / int u^2 dmu. Requires
/// u not identically zero and a >= 0.
double rayleigh_quotient(const Graph& g, const NodeField& a, const NodeField& u);

/// Principal eigenpair of -lap + a via the mu-weighted similarity transform
/// M = D^{-1/2}(K + D_a)D^{-1/2} and a cyclic Jacobi sweep. Requires a >= 0;
/// a == 0 everywhere is accepted with a note (lambda_a is then 0).
EigenPair principal_eigenpair(const Graph& g, const NodeField& a, double tol = 1e-10);

/// Constructive constants of the sup-norm small-data decay result:
/// delta = (lambda_a - sigma)^{1/(p-1)} min(phi) / (2 max(phi)),
/// C = 2 max(phi) / min(phi). Requires 0 < sigma < lambda_a and p > 1.
struct SmallDataThreshold {
    double delta;
    double C;
};
SmallDataThreshold small_data_threshold(const EigenPair& pair, double p, double sigma);

/// L^2 smallness threshold eps0 = (lambda_a^2 mu_min^{p+1} / (4 |V|))^{1/(p-1)},
/// with |V| the total measure of g.
double l2_threshold_epsilon0(const Graph& g, double lambda_a, double p);

/// Combinatorial weighted Laplacian K: K_ii = sum_j w_ij, K_ij = -w_ij.
Eigen::MatrixXd combinatorial_laplacian(const Graph& g);

/// K + diag(mu a): the matrix of u -> mu .* (-lap u + a u).
Eigen::MatrixXd stiffness_matrix(const Graph& g, const NodeField& a);

} // namespace netdiff

#endif
