#ifndef NETDIFF_IO_HPP
#define NETDIFF_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netdiff/blowup.hpp"
#include "netdiff/dynamics.hpp"

namespace netdiff {

using ordered_json = nlohmann::ordered_json;

/// Read a whole file; IoError when unreadable.
std::string slurp(const std::filesystem::path& path);

/// Write a whole file; IoError when unwritable.
void spill(const std::filesystem::path& path, const std::string& content);

Graph load_graph_file(const std::filesystem::path& path);

/// A problem file bundles a graph reference, the equation parameters and
/// integrator options:
///   {"graph":"g.json","p":3.0,
///    "a":{"const":2.0,"except":{"x1":0.0}} | {"map":{...}},
///    "u0":{"const":1.5} | {"map":{...}} | {"preset":"hub-decay"|"hub-blowup"},
///    "ubar":0.0, "equilibrium":{...} (optional),
///    "integrator":{"rtol":...,"atol":...,"t_horizon":...,"u_max":...,
///                  "h_min":...,"conv_tol":...,"record_every":...,"sync_dt":...}}
/// Relative graph paths resolve against the problem file's directory.
struct ProblemFile {
    ProblemSpec spec;
    IntegratorOptions opts;
    std::optional<NodeField> equilibrium;
};

ProblemFile load_problem_file(const std::filesystem::path& path);

/// Parse a field spec ({"const":...[,"except":{...}]} or {"map":{...}} or a
/// bare number) against a graph.
NodeField parse_field_spec(const Graph& g, const ordered_json& spec,
                           const std::string& what);

/// Trajectory CSV: header t,u_<id1>,...,u_<idN>,max_abs_u,l2_norm,J,N and one
/// full-precision row per retained sample. `envelope_lambda`, when set,
/// appends an envelope column (1/sqrt(mu_min)) ||u0||_2 exp(-lambda t / 2).
std::string trajectory_csv(const Graph& g, const Trajectory& traj,
                           std::optional<double> envelope_lambda = {});

/// Numeric table read back from a CSV produced by this tool.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const; // -1 when absent
};

CsvTable parse_csv(const std::string& text);

/// Run summary for a simulation (status, detection time, bracket, final norms).
ordered_json run_report_json(const Graph& g, const Trajectory& traj);

ordered_json bound_to_json(const BoundResult& b);
BoundResult bound_from_json(const ordered_json& j);

ordered_json report_to_json(const AnalysisReport& rep, const Graph& g);
AnalysisReport report_from_json(const ordered_json& j);

} // namespace netdiff

#endif
