#include "netdiff/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace netdiff {

Graph::Graph(std::vector<std::string> ids, Eigen::VectorXd mu, std::vector<Edge> edges)
    : ids_(std::move(ids)), mu_(std::move(mu)), edges_(std::move(edges)) {
    const int n = static_cast<int>(ids_.size());
    if (n == 0) throw ValidationError("graph has no nodes");
    if (mu_.size() != n) throw ValidationError("measure vector does not match node count");

    for (int i = 0; i < n; ++i) {
        if (ids_[i].empty()) throw ValidationError("empty node id");
        if (!index_.emplace(ids_[i], i).second)
            throw ValidationError("duplicate node id '" + ids_[i] + "'");
        if (!(mu_[i] > 0.0) || !std::isfinite(mu_[i]))
            throw ValidationError("non-positive measure at node '" + ids_[i] + "'");
    }

    adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges_) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw ValidationError("edge index out of range");
        if (e.a == e.b)
            throw ValidationError("self-loop at node '" + ids_[e.a] + "'");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw ValidationError("non-positive weight on edge '" + ids_[e.a] + "'-'" + ids_[e.b] + "'");
        auto key = std::minmax(e.a, e.b);
        if (!seen.insert(key).second)
            throw ValidationError("duplicate edge '" + ids_[e.a] + "'-'" + ids_[e.b] + "'");
        adj_[e.a].emplace_back(e.b, e.w);
        adj_[e.b].emplace_back(e.a, e.w);
    }

    // breadth-first traversal; the whole analysis assumes a connected graph
    std::vector<char> visited(n, 0);
    std::vector<int> queue{0};
    visited[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (auto [j, w] : adj_[queue[head]]) {
            if (!visited[j]) {
                visited[j] = 1;
                queue.push_back(j);
            }
        }
    }
    if (static_cast<int>(queue.size()) != n)
        throw ValidationError("disconnected graph");

    total_measure_ = mu_.sum();
    mu_min_ = mu_.minCoeff();
}

int Graph::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? -1 : it->second;
}

Graph parse_graph(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed graph file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
        throw ValidationError("malformed graph file: missing \"nodes\" array");

    std::vector<std::string> ids;
    std::vector<double> mu;
    for (const auto& node : j["nodes"]) {
        if (!node.is_object() || !node.contains("id") || !node.contains("mu") ||
            !node["id"].is_string() || !node["mu"].is_number())
            throw ValidationError("malformed graph file: node entries need \"id\" and \"mu\"");
        ids.push_back(node["id"].get<std::string>());
        mu.push_back(node["mu"].get<double>());
    }

    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) index.emplace(ids[i], i);

    std::vector<Graph::Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array())
            throw ValidationError("malformed graph file: \"edges\" must be an array");
        for (const auto& edge : j["edges"]) {
            if (!edge.is_object() || !edge.contains("a") || !edge.contains("b") ||
                !edge.contains("w") || !edge["a"].is_string() || !edge["b"].is_string() ||
                !edge["w"].is_number())
                throw ValidationError("malformed graph file: edge entries need \"a\", \"b\" and \"w\"");
            const std::string a = edge["a"].get<std::string>();
            const std::string b = edge["b"].get<std::string>();
            auto ia = index.find(a);
            auto ib = index.find(b);
            if (ia == index.end()) throw ValidationError("unknown node '" + a + "' in edge");
            if (ib == index.end()) throw ValidationError("unknown node '" + b + "' in edge");
            edges.push_back({ia->second, ib->second, edge["w"].get<double>()});
        }
    }

    return Graph(std::move(ids), Eigen::Map<Eigen::VectorXd>(mu.data(), mu.size()), std::move(edges));
}

void check_field(const Graph& g, const NodeField& u) {
    if (u.size() != g.size())
        throw ValidationError("field has " + std::to_string(u.size()) + " values for a graph of " +
                              std::to_string(g.size()) + " nodes");
}

NodeField laplacian(const Graph& g, const NodeField& u) {
    check_field(g, u);
    NodeField out = NodeField::Zero(g.size());
    for (const auto& e : g.edges()) {
        const double d = e.w * (u[e.b] - u[e.a]);
        out[e.a] += d;
        out[e.b] -= d;
    }
    out.array() /= g.mu().array();
    return out;
}

double integral(const Graph& g, const NodeField& f) {
    check_field(g, f);
    return g.mu().dot(f);
}

double dirichlet_energy(const Graph& g, const NodeField& u) {
    check_field(g, u);
    double sum = 0.0;
    for (const auto& e : g.edges()) {
        const double d = u[e.b] - u[e.a];
        sum += e.w * d * d;
    }
    return sum;
}

double lp_norm(const Graph& g, const NodeField& f, double q) {
    check_field(g, f);
    if (!(q >= 1.0)) throw ValidationError("lp_norm requires q >= 1");
    if (q == 2.0) return std::sqrt((g.mu().array() * f.array().square()).sum());
    const double s = (g.mu().array() * f.array().abs().pow(q)).sum();
    return std::pow(s, 1.0 / q);
}

} // namespace netdiff
