#include "netdiff/presets.hpp"

#include <sstream>

namespace netdiff {

namespace {

std::vector<std::pair<int, int>> g25_edge_list() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < 25; ++i) edges.emplace_back(0, i); // hub spokes
    for (int i = 1; i < 25; ++i) {                         // peripheral ring
        const int j = 1 + (i % 24);
        edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    edges.emplace_back(1, 13);
    edges.emplace_back(4, 16);
    edges.emplace_back(7, 19);
    edges.emplace_back(10, 22);
    return edges;
}

} // namespace

Graph standin_g25() {
    std::vector<std::string> ids;
    for (int i = 1; i <= 25; ++i) ids.push_back("x" + std::to_string(i));
    std::vector<Graph::Edge> edges;
    for (auto [a, b] : g25_edge_list()) edges.push_back({a, b, 1.0});
    return Graph(std::move(ids), Eigen::VectorXd::Ones(25), std::move(edges));
}

std::string standin_g25_json() {
    std::ostringstream out;
    out << "{\n  \"nodes\": [";
    for (int i = 1; i <= 25; ++i)
        out << (i > 1 ? ", " : "") << "{\"id\": \"x" << i << "\", \"mu\": 1.0}";
    out << "],\n  \"edges\": [\n";
    const auto edges = g25_edge_list();
    for (std::size_t k = 0; k < edges.size(); ++k)
        out << "    {\"a\": \"x" << edges[k].first + 1 << "\", \"b\": \"x"
            << edges[k].second + 1 << "\", \"w\": 1.0}" << (k + 1 < edges.size() ? ",\n" : "\n");
    out << "  ]\n}\n";
    return out.str();
}

ProblemFile preset_problem(const std::string& name) {
    Graph g = standin_g25();
    NodeField a = NodeField::Constant(25, 2.0);
    a[0] = 0.0;
    ProblemFile pf{ProblemSpec{std::move(g), std::move(a), 0.0, {}, 0.0}, {}, {}};
    if (name == "g25-decay") {
        pf.spec.p = 2.0;
        pf.spec.u0 = NodeField::Constant(25, 0.001);
        pf.spec.u0[0] = 0.03;
        pf.opts.t_horizon = 40.0;
    } else if (name == "g25-blowup") {
        pf.spec.p = 3.0;
        pf.spec.u0 = NodeField::Constant(25, 1.5);
        pf.spec.u0[0] = 0.5;
        pf.opts.t_horizon = 1.0;
    } else {
        throw ValidationError("unknown preset '" + name + "'");
    }
    validate(pf.spec);
    return pf;
}

std::vector<std::string> preset_names() { return {"g25-decay", "g25-blowup", "single-node-suite"}; }

} // namespace netdiff
