#ifndef NETDIFF_GRAPH_HPP
#define NETDIFF_GRAPH_HPP

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "netdiff/errors.hpp"

namespace netdiff {

/// A real value per node, stored in the graph's node order.
using NodeField = Eigen::VectorXd;

/// Finite connected graph with positive node measure mu and symmetric
/// positive edge weights. Immutable after construction; all member data
/// is validated in the constructor.
class Graph {
public:
    struct Edge {
        int a;
        int b;
        double w;
    };

    /// Validates and builds. Throws ValidationError on: empty or duplicate
    /// node ids, non-positive measure or weight, self-loops, duplicate
    /// edges (either orientation), or a disconnected graph.
    Graph(std::vector<std::string> ids, Eigen::VectorXd mu, std::vector<Edge> edges);

    int size() const { return static_cast<int>(ids_.size()); }
    const std::vector<std::string>& ids() const { return ids_; }
    const Eigen::VectorXd& mu() const { return mu_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors of node i as (index, weight) pairs.
    const std::vector<std::pair<int, double>>& neighbors(int i) const { return adj_[i]; }

    double total_measure() const { return total_measure_; } // the domain-volume factor |V|
    double mu_min() const { return mu_min_; }

    /// Index of a node id, or -1 when absent.
    int index_of(std::string_view id) const;

private:
    std::vector<std::string> ids_;
    Eigen::VectorXd mu_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::unordered_map<std::string, int> index_;
    double total_measure_ = 0.0;
    double mu_min_ = 0.0;
};

/// Parse the JSON graph format:
///   {"nodes":[{"id":"x1","mu":1.0},...],"edges":[{"a":"x1","b":"x2","w":1.0},...]}
/// Node order is file order and fixes all vector layouts and CSV columns.
Graph parse_graph(const std::string& text);

/// mu-Laplacian: (lap u)(x) = (1/mu(x)) sum_{y~x} w_xy (u(y) - u(x)).
NodeField laplacian(const Graph& g, const NodeField& u);

/// Discrete integral over V: sum_x mu(x) f(x).
double integral(const Graph& g, const NodeField& f);

/// Gradient energy with the half-factor edge-sum convention:
///   int |grad u|^2 dmu = (1/2) sum_x sum_{y~x} w_xy (u(y)-u(x))^2
/// i.e. one w_e (u(b)-u(a))^2 term per edge.
double dirichlet_energy(const Graph& g, const NodeField& u);

/// L^q norm (int |f|^q dmu)^{1/q}, q >= 1.
double lp_norm(const Graph& g, const NodeField& f, double q);

/// Throws ValidationError unless u is defined on exactly g's node set.
void check_field(const Graph& g, const NodeField& u);

} // namespace netdiff

#endif
