// netdiff: simulate and analyze semilinear diffusion on finite weighted graphs.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "netdiff/blowup.hpp"
#include "netdiff/io.hpp"
#include "netdiff/presets.hpp"
#include "netdiff/svg.hpp"

namespace fs = std::filesystem;
using namespace netdiff;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitConvergence = 4;

struct IntegratorFlags {
    std::optional<double> rtol, atol, tmax, umax, hmin, ubar, sync_dt;
    std::optional<int> record_every;

    void attach(CLI::App* cmd) {
        cmd->add_option("--rtol", rtol, "relative local error tolerance");
        cmd->add_option("--atol", atol, "absolute local error tolerance");
        cmd->add_option("--tmax", tmax, "integration horizon");
        cmd->add_option("--umax", umax, "blow-up threshold on max|u|");
        cmd->add_option("--hmin", hmin, "smallest permitted step");
        cmd->add_option("--ubar", ubar, "equilibrium offset override");
        cmd->add_option("--sync-dt", sync_dt, "force samples at multiples of this interval");
        cmd->add_option("--record-every", record_every, "keep every k-th accepted step");
    }
    void apply(ProblemFile& pf) const {
        if (rtol) pf.opts.rtol = *rtol;
        if (atol) pf.opts.atol = *atol;
        if (tmax) pf.opts.t_horizon = *tmax;
        if (umax) pf.opts.u_max = *umax;
        if (hmin) pf.opts.h_min = *hmin;
        if (sync_dt) pf.opts.sync_dt = *sync_dt;
        if (record_every) pf.opts.record_every = *record_every;
        if (ubar) pf.spec.ubar = *ubar;
    }
};

ordered_json spectrum_json(const Graph& g, const EigenPair& pair) {
    ordered_json j;
    j["lambda_a"] = pair.lambda_a;
    ordered_json phi;
    for (int i = 0; i < g.size(); ++i) phi[g.ids()[i]] = pair.phi[i];
    j["phi"] = phi;
    j["residual"] = pair.residual;
    if (!pair.note.empty()) j["note"] = pair.note;
    return j;
}

int cmd_simulate(const std::string& problem, const std::string& out,
                 const std::string& report, const IntegratorFlags& flags,
                 std::optional<double> envelope_lambda) {
    ProblemFile pf = load_problem_file(problem);
    flags.apply(pf);
    const Trajectory traj = integrate(pf.spec, pf.opts);
    spill(out, trajectory_csv(pf.spec.graph, traj, envelope_lambda));
    if (!report.empty())
        spill(report, run_report_json(pf.spec.graph, traj).dump(2) + "\n");
    std::cout << to_string(traj.status) << " t_detect=" << traj.t_detect
              << " samples=" << traj.times.size() << "\n";
    return 0;
}

int cmd_analyze(const std::string& problem, const std::string& out, double tol,
                std::optional<unsigned long long> seed) {
    ProblemFile pf = load_problem_file(problem);
    const AnalysisReport rep =
        analyze(pf.spec, pf.equilibrium, seed.value_or(kLambdaSeed));
    (void)tol;
    const std::string text = report_to_json(rep, pf.spec.graph).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        spill(out, text);
    return 0;
}

int cmd_spectrum(const std::string& graph_path, const std::string& a_spec,
                 const std::string& out, double tol) {
    const Graph g = load_graph_file(graph_path);
    ordered_json spec;
    try {
        spec = ordered_json::parse(a_spec);
    } catch (const nlohmann::json::exception&) {
        // not inline JSON; treat as a path to a JSON file
        spec = ordered_json::parse(slurp(a_spec));
    }
    const NodeField a = parse_field_spec(g, spec, "potential a");
    const EigenPair pair = principal_eigenpair(g, a, tol);
    if (!pair.note.empty()) std::cerr << "warning: " << pair.note << "\n";
    const std::string text = spectrum_json(g, pair).dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        spill(out, text);
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out,
             const std::vector<std::string>& columns, bool logy, const std::string& title) {
    const CsvTable table = parse_csv(slurp(csv_path));
    const int tcol = table.column("t");
    if (tcol < 0) throw ValidationError("CSV has no 't' column");
    std::vector<SvgSeries> series;
    for (const auto& name : columns) {
        const int c = table.column(name);
        if (c < 0) throw ValidationError("unknown column '" + name + "'");
        SvgSeries s;
        s.name = name;
        for (const auto& row : table.rows) {
            s.x.push_back(row[tcol]);
            s.y.push_back(row[c]);
        }
        series.push_back(std::move(s));
    }
    SvgOptions opts;
    opts.log_y = logy;
    opts.title = title;
    spill(out, render_line_chart(series, opts));
    return 0;
}

void summary_entry(ordered_json& entries, const std::string& name, double computed,
                   std::optional<double> reference, const std::string& source) {
    ordered_json e;
    e["name"] = name;
    e["computed"] = computed;
    if (reference) {
        e["reference"] = *reference;
        e["abs_err"] = std::abs(computed - *reference);
    }
    e["source"] = source;
    entries.push_back(e);
}

int cmd_reproduce(const std::string& preset, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    ordered_json entries = ordered_json::array();
    bool ok = true;

    if (preset == "g25-decay" || preset == "g25-blowup") {
        ProblemFile pf = preset_problem(preset);
        spill(dir / "graph.json", standin_g25_json());
        const AnalysisReport rep = analyze(pf.spec, pf.equilibrium);
        spill(dir / "report.json", report_to_json(rep, pf.spec.graph).dump(2) + "\n");
        const Trajectory traj = integrate(pf.spec, pf.opts);
        spill(dir / "runreport.json", run_report_json(pf.spec.graph, traj).dump(2) + "\n");

        if (preset == "g25-decay") {
            spill(dir / "trajectory.csv",
                  trajectory_csv(pf.spec.graph, traj, rep.eigen.lambda_a));
            const double l2 = lp_norm(pf.spec.graph, pf.spec.u0, 2.0);
            summary_entry(entries, "l2_norm_u0", l2, 0.0304, "reference");
            summary_entry(entries, "epsilon0_at_lambda_1.9116",
                          l2_threshold_epsilon0(pf.spec.graph, 1.9116, pf.spec.p), 0.0365,
                          "reference");
            summary_entry(entries, "lambda_a_standin", rep.eigen.lambda_a, {}, "stand-in");
            summary_entry(entries, "epsilon0_standin", rep.epsilon0, {}, "stand-in");
            const EnvelopeReport env = decay_envelope_check(pf.spec, traj, rep.eigen);
            summary_entry(entries, "envelope_max_ratio", env.max_ratio, {}, "stand-in");
            ok = ok && env.applicable && env.pass && traj.status == Status::Converged;

            const CsvTable table = parse_csv(trajectory_csv(pf.spec.graph, traj, rep.eigen.lambda_a));
            std::vector<SvgSeries> series;
            for (const std::string name : {"u_x1", "u_x2", "envelope"}) {
                SvgSeries s;
                s.name = name;
                const int c = table.column(name), tc = table.column("t");
                for (const auto& row : table.rows) {
                    s.x.push_back(row[tc]);
                    s.y.push_back(row[c]);
                }
                series.push_back(std::move(s));
            }
            SvgOptions so;
            so.title = "g25-decay: node states and decay envelope";
            spill(dir / "plot.svg", render_line_chart(series, so));
        } else {
            spill(dir / "trajectory.csv", trajectory_csv(pf.spec.graph, traj));
            summary_entry(entries, "c1", rep.mass.threshold, 35.3553, "reference");
            summary_entry(entries, "mass_integral_u0", rep.mass.witness, 36.5, "reference");
            summary_entry(entries, "t_bound_mass",
                          rep.mass.t_bound ? *rep.mass.t_bound : -1.0, 0.6962, "reference");
            summary_entry(entries, "t_detect", traj.t_detect, {}, "stand-in");
            ok = ok && traj.status == Status::BlowUp && rep.mass.applicable &&
                 traj.t_detect <= *rep.mass.t_bound + traj.bracket;
            const RateFit fit = fit_blowup_rate(traj, pf.spec.p);
            summary_entry(entries, "rate_limit_estimate", fit.limit_estimate,
                          1.0 / (pf.spec.p - 1.0), "stand-in");

            const CsvTable table = parse_csv(trajectory_csv(pf.spec.graph, traj));
            std::vector<SvgSeries> series;
            for (const std::string name : {"u_x1", "u_x9", "max_abs_u"}) {
                SvgSeries s;
                s.name = name;
                const int c = table.column(name), tc = table.column("t");
                for (const auto& row : table.rows) {
                    s.x.push_back(row[tc]);
                    s.y.push_back(row[c]);
                }
                series.push_back(std::move(s));
            }
            SvgOptions so;
            so.log_y = true;
            so.title = "g25-blowup: node states (log scale)";
            spill(dir / "plot.svg", render_line_chart(series, so));
        }
    } else if (preset == "single-node-suite") {
        const Graph g1({"x1"}, Eigen::VectorXd::Ones(1), {});

        // u' = u^2 - u, u0 = 1/2: exact solution 1/(1+e^t), decays.
        {
            ProblemSpec ps{g1, NodeField::Ones(1), 2.0, NodeField::Constant(1, 0.5), 0.0};
            IntegratorOptions o;
            o.t_horizon = 40.0;
            const Trajectory traj = integrate(ps, o);
            spill(dir / "logistic.csv", trajectory_csv(g1, traj));
            double max_err = 0.0;
            for (std::size_t k = 0; k < traj.times.size(); ++k) {
                if (traj.times[k] > 5.0) break;
                max_err = std::max(max_err, std::abs(traj.states[k][0] -
                                                     1.0 / (1.0 + std::exp(traj.times[k]))));
            }
            summary_entry(entries, "logistic_max_err_on_[0,5]", max_err, {}, "closed-form");
            ok = ok && max_err < 1e-6 && traj.status == Status::Converged;
        }
        // u' = u^2, u0 = 1: blows up at exactly t = 1.
        {
            ProblemSpec ps{g1, NodeField::Zero(1), 2.0, NodeField::Ones(1), 0.0};
            IntegratorOptions o;
            o.t_horizon = 2.0;
            const Trajectory traj = integrate(ps, o);
            spill(dir / "riccati.csv", trajectory_csv(g1, traj));
            summary_entry(entries, "riccati_t_detect", traj.t_detect, 1.0, "closed-form");
            const RateFit fit = fit_blowup_rate(traj, ps.p);
            summary_entry(entries, "riccati_t_hat", fit.t_hat, 1.0, "closed-form");
            ok = ok && traj.status == Status::BlowUp && traj.t_detect > 0.99 &&
                 traj.t_detect < 1.0;
        }
        // u' = u^3 - u, u0 = 2: blows up at exactly (1/2) ln(4/3).
        {
            ProblemSpec ps{g1, NodeField::Ones(1), 3.0, NodeField::Constant(1, 2.0), 0.0};
            IntegratorOptions o;
            o.t_horizon = 1.0;
            const Trajectory traj = integrate(ps, o);
            spill(dir / "cubic.csv", trajectory_csv(g1, traj));
            const double T = 0.5 * std::log(4.0 / 3.0);
            const RateFit fit = fit_blowup_rate(traj, ps.p);
            summary_entry(entries, "cubic_t_hat", fit.t_hat, T, "closed-form");
            summary_entry(entries, "cubic_rate_limit", fit.limit_estimate, 0.5, "closed-form");
            ok = ok && std::abs(fit.t_hat - T) < 0.01 * T &&
                 std::abs(fit.limit_estimate - 0.5) < 0.05 * 0.5;
        }
    } else {
        throw ValidationError("unknown preset '" + preset + "'");
    }

    ordered_json summary;
    summary["preset"] = preset;
    summary["pass"] = ok;
    summary["entries"] = entries;
    spill(dir / "summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semilinear diffusion on finite weighted graphs: simulation, "
                 "spectral thresholds, potential-well classification and "
                 "blow-up bounds"};
    app.require_subcommand(1);

    std::string problem, out, report, graph_path, a_spec, csv_path, preset, out_dir, title;
    std::vector<std::string> columns;
    bool logy = false;
    double tol = 1e-10;
    std::optional<double> envelope_lambda;
    std::optional<unsigned long long> seed;
    IntegratorFlags flags;

    auto* sim = app.add_subcommand("simulate", "integrate a problem file and write a trajectory CSV");
    sim->add_option("problem", problem, "problem JSON file")->required();
    sim->add_option("--out", out, "trajectory CSV path")->required();
    sim->add_option("--report", report, "run report JSON path");
    sim->add_option("--envelope-lambda", envelope_lambda,
                    "append an exponential envelope column for this lambda_a");
    flags.attach(sim);

    auto* ana = app.add_subcommand("analyze", "write the full analysis report for a problem file");
    ana->add_option("problem", problem, "problem JSON file")->required();
    ana->add_option("--out", out, "report JSON path (stdout when omitted)");
    ana->add_option("--tol", tol, "solver tolerance");
    ana->add_option("--seed", seed, "seed for the variational minimizer restarts");

    auto* spec = app.add_subcommand("spectrum", "principal eigenpair of -lap + a");
    spec->add_option("graph", graph_path, "graph JSON file")->required();
    spec->add_option("--a", a_spec, "potential spec: inline JSON or a path")->required();
    spec->add_option("--out", out, "output JSON path (stdout when omitted)");
    spec->add_option("--tol", tol, "eigen-residual tolerance");

    auto* plot = app.add_subcommand("plot", "render columns of a trajectory CSV as SVG");
    plot->add_option("csv", csv_path, "trajectory CSV")->required();
    plot->add_option("--out", out, "SVG path")->required();
    plot->add_option("--cols", columns, "column names")->required()->delimiter(',');
    plot->add_flag("--logy", logy, "log10 y axis");
    plot->add_option("--title", title, "chart title");

    auto* rep = app.add_subcommand("reproduce", "run a named scenario end to end");
    rep->add_option("preset", preset, "g25-decay | g25-blowup | single-node-suite")->required();
    rep->add_option("--out-dir", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (sim->parsed()) return cmd_simulate(problem, out, report, flags, envelope_lambda);
        if (ana->parsed()) return cmd_analyze(problem, out, tol, seed);
        if (spec->parsed()) return cmd_spectrum(graph_path, a_spec, out, tol);
        if (plot->parsed()) return cmd_plot(csv_path, out, columns, logy, title);
        if (rep->parsed()) return cmd_reproduce(preset, out_dir);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
