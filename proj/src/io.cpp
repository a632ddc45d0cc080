#include "netdiff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace netdiff {

namespace {

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

NodeField field_from_map(const Graph& g, const ordered_json& map, const std::string& what) {
    NodeField f(g.size());
    std::vector<char> set(g.size(), 0);
    for (auto it = map.begin(); it != map.end(); ++it) {
        const int i = g.index_of(it.key());
        if (i < 0) throw ValidationError(what + ": unknown node '" + it.key() + "'");
        if (!it.value().is_number())
            throw ValidationError(what + ": value for '" + it.key() + "' is not a number");
        f[i] = it.value().get<double>();
        set[i] = 1;
    }
    for (int i = 0; i < g.size(); ++i)
        if (!set[i]) throw ValidationError(what + ": no value for node '" + g.ids()[i] + "'");
    return f;
}

} // namespace

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Graph load_graph_file(const std::filesystem::path& path) {
    return parse_graph(slurp(path));
}

NodeField parse_field_spec(const Graph& g, const ordered_json& spec,
                           const std::string& what) {
    if (spec.is_number())
        return NodeField::Constant(g.size(), spec.get<double>());
    if (!spec.is_object())
        throw ValidationError(what + ": expected a number or an object");
    if (spec.contains("const")) {
        if (!spec["const"].is_number())
            throw ValidationError(what + ": \"const\" is not a number");
        NodeField f = NodeField::Constant(g.size(), spec["const"].get<double>());
        if (spec.contains("except")) {
            for (auto it = spec["except"].begin(); it != spec["except"].end(); ++it) {
                const int i = g.index_of(it.key());
                if (i < 0) throw ValidationError(what + ": unknown node '" + it.key() + "'");
                f[i] = it.value().get<double>();
            }
        }
        return f;
    }
    if (spec.contains("map")) return field_from_map(g, spec["map"], what);
    if (spec.contains("preset")) {
        const std::string name = spec["preset"].get<std::string>();
        // Hub patterns from the network scenarios: a distinguished first node
        // against a uniform background.
        if (name == "hub-decay") {
            NodeField f = NodeField::Constant(g.size(), 0.001);
            f[0] = 0.03;
            return f;
        }
        if (name == "hub-blowup") {
            NodeField f = NodeField::Constant(g.size(), 1.5);
            f[0] = 0.5;
            return f;
        }
        throw ValidationError(what + ": unknown preset '" + name + "'");
    }
    throw ValidationError(what + ": needs \"const\", \"map\" or \"preset\"");
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
    ordered_json j;
    try {
        j = ordered_json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed problem file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("graph") || !j.contains("p") || !j.contains("a") ||
        !j.contains("u0"))
        throw ValidationError("problem file needs \"graph\", \"p\", \"a\" and \"u0\"");

    std::filesystem::path gpath = j["graph"].get<std::string>();
    if (gpath.is_relative()) gpath = path.parent_path() / gpath;

    ProblemFile pf{ProblemSpec{load_graph_file(gpath), {}, 0.0, {}, 0.0}, {}, {}};
    pf.spec.p = j["p"].get<double>();
    pf.spec.a = parse_field_spec(pf.spec.graph, j["a"], "potential a");
    pf.spec.u0 = parse_field_spec(pf.spec.graph, j["u0"], "initial data u0");
    if (j.contains("ubar")) pf.spec.ubar = j["ubar"].get<double>();
    if (j.contains("equilibrium"))
        pf.equilibrium = parse_field_spec(pf.spec.graph, j["equilibrium"], "equilibrium");

    if (j.contains("integrator")) {
        const auto& o = j["integrator"];
        auto get = [&](const char* key, double dflt) {
            return o.contains(key) ? o[key].get<double>() : dflt;
        };
        pf.opts.rtol = get("rtol", pf.opts.rtol);
        pf.opts.atol = get("atol", pf.opts.atol);
        pf.opts.t_horizon = get("t_horizon", pf.opts.t_horizon);
        pf.opts.u_max = get("u_max", pf.opts.u_max);
        pf.opts.h_min = get("h_min", pf.opts.h_min);
        pf.opts.conv_tol = get("conv_tol", pf.opts.conv_tol);
        pf.opts.sync_dt = get("sync_dt", pf.opts.sync_dt);
        if (o.contains("record_every")) pf.opts.record_every = o["record_every"].get<int>();
    }
    validate(pf.spec);
    return pf;
}

std::string trajectory_csv(const Graph& g, const Trajectory& traj,
                           std::optional<double> envelope_lambda) {
    std::ostringstream out;
    out << "t";
    for (const auto& id : g.ids()) out << ",u_" << id;
    out << ",max_abs_u,l2_norm,J,N";
    if (envelope_lambda) out << ",envelope";
    out << "\n";

    double amp = 0.0;
    if (envelope_lambda && !traj.states.empty())
        amp = lp_norm(g, traj.states.front(), 2.0) / std::sqrt(g.mu_min());

    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << full(traj.times[k]);
        for (int i = 0; i < g.size(); ++i) out << ',' << full(traj.states[k][i]);
        const auto& tr = traj.traces[k];
        out << ',' << full(tr.max_abs_u) << ',' << full(tr.l2_norm) << ',' << full(tr.J)
            << ',' << full(tr.N);
        if (envelope_lambda)
            out << ',' << full(amp * std::exp(-0.5 * *envelope_lambda * traj.times[k]));
        out << "\n";
    }
    return out.str();
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw ValidationError("empty CSV");
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ValidationError("non-numeric CSV cell '" + cell + "'");
            }
        }
        if (row.size() != table.header.size())
            throw ValidationError("ragged CSV row");
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ValidationError("CSV has no data rows");
    return table;
}

ordered_json run_report_json(const Graph& g, const Trajectory& traj) {
    ordered_json j;
    j["status"] = to_string(traj.status);
    j["t_detect"] = traj.t_detect;
    j["bracket"] = traj.bracket;
    const auto& last = traj.traces.back();
    j["final"] = {{"t", traj.times.back()},
                  {"max_abs_u", last.max_abs_u},
                  {"l2_norm", last.l2_norm},
                  {"J", last.J},
                  {"N", last.N}};
    j["samples"] = traj.times.size();
    j["accepted_steps"] = traj.n_accepted;
    j["rejected_steps"] = traj.n_rejected;
    return j;
}

ordered_json bound_to_json(const BoundResult& b) {
    ordered_json j;
    j["applicable"] = b.applicable;
    j["threshold"] = b.threshold;
    j["witness"] = b.witness;
    if (b.t_bound)
        j["t_bound"] = *b.t_bound;
    else
        j["t_bound"] = nullptr;
    j["note"] = b.note;
    return j;
}

BoundResult bound_from_json(const ordered_json& j) {
    BoundResult b;
    b.applicable = j.at("applicable").get<bool>();
    b.threshold = j.at("threshold").get<double>();
    b.witness = j.at("witness").get<double>();
    if (!j.at("t_bound").is_null()) b.t_bound = j["t_bound"].get<double>();
    b.note = j.at("note").get<std::string>();
    return b;
}

ordered_json report_to_json(const AnalysisReport& rep, const Graph& g) {
    ordered_json j;
    ordered_json phi;
    for (int i = 0; i < g.size(); ++i) phi[g.ids()[i]] = rep.eigen.phi[i];
    j["eigen"] = {{"lambda_a", rep.eigen.lambda_a},
                  {"phi", phi},
                  {"residual", rep.eigen.residual},
                  {"note", rep.eigen.note}};
    j["thresholds"] = {{"epsilon0", rep.epsilon0},
                       {"sigma", rep.sigma},
                       {"delta", rep.delta},
                       {"C", rep.C}};
    j["well"] = {{"J0", rep.well.J0},
                 {"N0", rep.well.N0},
                 {"Lambda", rep.well.Lambda},
                 {"r", rep.well.depth_r},
                 {"norm_1a", rep.well.norm_1a},
                 {"classification", to_string(rep.well.classification)}};
    j["criteria"] = {{"mass", bound_to_json(rep.mass)},
                     {"eigen", bound_to_json(rep.eigen_bound)},
                     {"energy", bound_to_json(rep.energy)},
                     {"equilibrium", bound_to_json(rep.equilibrium)}};
    if (rep.best_bound)
        j["best_bound"] = *rep.best_bound;
    else
        j["best_bound"] = nullptr;
    return j;
}

AnalysisReport report_from_json(const ordered_json& j) {
    AnalysisReport rep;
    const auto& e = j.at("eigen");
    rep.eigen.lambda_a = e.at("lambda_a").get<double>();
    rep.eigen.residual = e.at("residual").get<double>();
    rep.eigen.note = e.at("note").get<std::string>();
    const auto& phi = e.at("phi");
    rep.eigen.phi.resize(phi.size());
    int i = 0;
    for (auto it = phi.begin(); it != phi.end(); ++it) rep.eigen.phi[i++] = it.value();
    const auto& t = j.at("thresholds");
    rep.epsilon0 = t.at("epsilon0").get<double>();
    rep.sigma = t.at("sigma").get<double>();
    rep.delta = t.at("delta").get<double>();
    rep.C = t.at("C").get<double>();
    const auto& w = j.at("well");
    rep.well.J0 = w.at("J0").get<double>();
    rep.well.N0 = w.at("N0").get<double>();
    rep.well.Lambda = w.at("Lambda").get<double>();
    rep.well.depth_r = w.at("r").get<double>();
    rep.well.norm_1a = w.at("norm_1a").get<double>();
    const std::string cls = w.at("classification").get<std::string>();
    rep.well.classification = cls == "InWell"     ? WellClass::InWell
                              : cls == "Exterior" ? WellClass::Exterior
                                                  : WellClass::Indeterminate;
    rep.mass = bound_from_json(j.at("criteria").at("mass"));
    rep.eigen_bound = bound_from_json(j.at("criteria").at("eigen"));
    rep.energy = bound_from_json(j.at("criteria").at("energy"));
    rep.equilibrium = bound_from_json(j.at("criteria").at("equilibrium"));
    if (!j.at("best_bound").is_null()) rep.best_bound = j["best_bound"].get<double>();
    return rep;
}

} // namespace netdiff
