// tecopt: steady-state solves, sweeps, loss-ratio optimization, and
// closed-loop simulation for a thermoelectric cooler, with CSV output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tec/calibration.h"
#include "tec/config.h"
#include "tec/csv.h"
#include "tec/errors.h"
#include "tec/exergy.h"
#include "tec/optimize.h"
#include "tec/presets.h"
#include "tec/simulate.h"
#include "tec/steady_state.h"

namespace {

// Writes to the chosen sink and flushes before exit so a truncated file never
// looks complete.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw tec::ValidationError("cannot open output file \"" + path + "\"");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() { stream().flush(); }

private:
    std::ofstream file_;
};

std::string summary_number(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

int cmd_solve(const tec::RunConfig& cfg, std::optional<double> current,
              const std::string& out_path) {
    if (!cfg.environment)
        throw tec::ValidationError("solve: config lacks an \"environment\" section");
    if (!current && !cfg.I)
        throw tec::ValidationError("solve: no current given (--current or config \"I\")");
    const double I = current ? *current : *cfg.I;

    const tec::OperatingPoint op = tec::operating_point(cfg.module, *cfg.environment, I);
    std::optional<tec::ExergyReport> report;
    try {
        report = tec::gamma_report(op);
    } catch (const tec::ModelError&) {
        // Loss ratio undefined at this point; the row carries NA markers.
    }

    Output out(out_path);
    tec::csv::write_current_sweep(out.stream(), {tec::CurrentSweepRow{I, op, report}});
    out.finish();

    std::cerr << "I=" << summary_number(I) << " A: Q_C=" << summary_number(op.Q_C)
              << " W, Q_H=" << summary_number(op.Q_H) << " W, W=" << summary_number(op.W)
              << " W";
    if (op.COP) std::cerr << ", COP=" << summary_number(*op.COP);
    if (report) std::cerr << ", gamma=" << summary_number(report->gamma);
    std::cerr << "\n";
    return 0;
}

int cmd_sweep(const tec::RunConfig& cfg, const std::optional<std::string>& grid_flag,
              const std::string& out_path) {
    if (!cfg.environment)
        throw tec::ValidationError("sweep: config lacks an \"environment\" section");

    Output out(out_path);
    if (grid_flag || cfg.grid) {
        const std::vector<double> grid =
            grid_flag ? tec::csv::parse_grid(*grid_flag) : *cfg.grid;
        const auto rows = tec::sweep_current(cfg.module, *cfg.environment, grid);
        tec::csv::write_current_sweep(out.stream(), rows);
        out.finish();
        std::cerr << "current sweep: " << rows.size() << " rows\n";
        return 0;
    }
    if (cfg.vary) {
        const auto rows =
            tec::sweep_environment(cfg.module, *cfg.environment, cfg.vary->parameter,
                                   cfg.vary->values, cfg.effective_bounds());
        tec::csv::write_env_sweep(out.stream(), tec::env_parameter_name(cfg.vary->parameter),
                                  rows);
        out.finish();
        std::cerr << "environment sweep over " << tec::env_parameter_name(cfg.vary->parameter)
                  << ": " << rows.size() << " rows\n";
        return 0;
    }
    throw tec::ValidationError("sweep: config needs a \"grid\" or a \"vary\" section");
}

int cmd_optimize(const tec::RunConfig& cfg, const std::string& out_path) {
    if (!cfg.environment)
        throw tec::ValidationError("optimize: config lacks an \"environment\" section");
    const tec::OptimizationResult r =
        tec::minimize_gamma(cfg.module, *cfg.environment, cfg.effective_bounds());

    Output out(out_path);
    tec::csv::write_optimization(out.stream(), r);
    out.finish();

    std::cerr << "I_star=" << summary_number(r.I_star)
              << " A, gamma_star=" << summary_number(r.gamma_star) << " (" << r.evaluations
              << " evaluations, " << (r.converged ? "converged" : "not converged") << ")\n";
    return 0;
}

void summarize_trace(const tec::SimTrace& trace) {
    const auto& last = trace.records.back();
    std::cerr << trace.records.size() << " records over " << summary_number(last.t)
              << " s; final T_C=" << summary_number(last.env.T_C)
              << " K, T_H=" << summary_number(last.env.T_H) << " K";
    if (last.report) std::cerr << ", gamma=" << summary_number(last.report->gamma);
    std::cerr << "\n";
}

int cmd_simulate(const tec::RunConfig& cfg, const std::string& out_path) {
    if (!cfg.simulation)
        throw tec::ValidationError("simulate: config lacks a \"simulation\" section");
    const tec::SimulationConfig& sim = *cfg.simulation;
    tec::ControllerConfig ctrl = sim.controller;
    if (!ctrl.bounds && cfg.bounds) ctrl.bounds = cfg.bounds;
    const tec::SimTrace trace = tec::run_closed_loop(cfg.module, sim.plant, ctrl, sim.initial,
                                                     sim.duration, sim.dt);

    Output out(out_path);
    tec::csv::write_trace(out.stream(), trace);
    out.finish();
    summarize_trace(trace);
    return 0;
}

// Loss-ratio curves at each value of one varied environment parameter, with
// the minimizing current alongside: <param>,I,gamma,I_star.
void write_gamma_curves(std::ostream& out, const tec::ModuleParams& m,
                        const tec::Environment& base, tec::EnvParameter param,
                        const std::vector<double>& values, const std::vector<double>& grid) {
    const tec::CurrentBounds bounds = tec::default_bounds(m);
    out << tec::env_parameter_name(param) << ",I,gamma,I_star\n";
    for (const double value : values) {
        tec::Environment env = base;
        switch (param) {
            case tec::EnvParameter::T_C: env.T_C = value; break;
            case tec::EnvParameter::T_H: env.T_H = value; break;
            case tec::EnvParameter::L_C: env.L_C = value; break;
            case tec::EnvParameter::L_H: env.L_H = value; break;
        }
        const tec::OptimizationResult r = tec::minimize_gamma(m, env, bounds);
        for (const double I : grid) {
            out << tec::csv::field(value) << ',' << tec::csv::field(I) << ','
                << tec::csv::field(tec::try_gamma(m, env, I)) << ','
                << tec::csv::field(r.I_star) << '\n';
        }
    }
}

int cmd_reproduce(const std::string& figure, const std::string& out_path) {
    const tec::ModuleParams m = tec::tec1_12704();
    const tec::Environment base = tec::presets::base_environment();
    Output out(out_path);

    if (figure == "fig2") {
        const auto grid = tec::csv::parse_grid("0.3:4:0.05");
        const auto rows = tec::sweep_current(m, base, grid);
        tec::csv::write_current_sweep(out.stream(), rows);
        out.finish();
        std::cerr << "fig2: heat flows, power, and COP vs current; " << rows.size()
                  << " rows\n";
        return 0;
    }
    if (figure == "fig3") {
        const auto grid = tec::csv::parse_grid("0.3:4:0.05");
        out.stream() << "T_H,I,COP,gamma\n";
        for (const double T_H : {305.0, 310.0, 315.0, 320.0}) {
            tec::Environment env = base;
            env.T_H = T_H;
            for (const auto& row : tec::sweep_current(m, env, grid)) {
                out.stream() << tec::csv::field(T_H) << ',' << tec::csv::field(row.I) << ',';
                if (row.op) {
                    out.stream() << tec::csv::field(row.op->COP);
                } else {
                    out.stream() << "NA";
                }
                out.stream() << ',';
                out.stream() << (row.report ? tec::csv::field(row.report->gamma) : "NA");
                out.stream() << '\n';
            }
        }
        out.finish();
        std::cerr << "fig3: COP vs current at four hot-space temperatures\n";
        return 0;
    }
    if (figure == "fig4a" || figure == "fig4b" || figure == "fig4c" || figure == "fig4d") {
        const auto grid = tec::csv::parse_grid("0.05:4:0.05");
        if (figure == "fig4a") {
            write_gamma_curves(out.stream(), m, base, tec::EnvParameter::T_H,
                               {310.0, 315.0, 320.0, 325.0}, grid);
        } else if (figure == "fig4b") {
            write_gamma_curves(out.stream(), m, base, tec::EnvParameter::T_C,
                               {285.0, 290.0, 295.0, 300.0}, grid);
        } else {
            tec::Environment hot = base;
            hot.T_H = 330.0;
            const std::vector<double> conductances{0.85, 1.5, 2.5, 3.5, 4.75};
            write_gamma_curves(out.stream(), m, hot,
                               figure == "fig4c" ? tec::EnvParameter::L_H
                                                 : tec::EnvParameter::L_C,
                               conductances, grid);
        }
        out.finish();
        std::cerr << figure << ": loss-ratio curves with the minimizing current\n";
        return 0;
    }
    if (figure == "fig6" || figure == "fig7") {
        const tec::SimTrace trace = tec::run_closed_loop(
            m, tec::presets::converging_plant(), tec::presets::converging_controller(),
            tec::presets::converging_initial(), tec::presets::converging_duration(),
            tec::presets::converging_dt());
        if (figure == "fig6") {
            tec::csv::write_trace(out.stream(), trace);
        } else {
            out.stream() << "t,Q_C,Q_C_loss,gamma\n";
            for (const auto& rec : trace.records) {
                out.stream() << tec::csv::field(rec.t) << ',' << tec::csv::field(rec.op.Q_C)
                             << ',';
                if (rec.report) {
                    out.stream() << tec::csv::field(rec.report->Q_C_loss) << ','
                                 << tec::csv::field(rec.report->gamma);
                } else {
                    out.stream() << "NA,NA";
                }
                out.stream() << '\n';
            }
        }
        out.finish();
        std::cerr << figure << ": ";
        summarize_trace(trace);
        return 0;
    }
    throw tec::ValidationError(
        "reproduce: unknown figure \"" + figure +
        "\" (expected fig2, fig3, fig4a, fig4b, fig4c, fig4d, fig6, or fig7)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermoelectric cooler performance, loss-ratio optimization, and "
                 "closed-loop simulation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "-";
    std::optional<double> current;
    std::optional<std::string> grid_flag;
    std::string figure;

    CLI::App* solve = app.add_subcommand("solve", "Operating point at one current");
    solve->add_option("--config", config_path, "JSON configuration file")->required();
    solve->add_option("--out", out_path, "Output CSV path, or - for stdout");
    solve->add_option("--current", current, "Drive current (A), overrides config \"I\"");

    CLI::App* sweep = app.add_subcommand("sweep", "Current or environment sweep");
    sweep->add_option("--config", config_path, "JSON configuration file")->required();
    sweep->add_option("--out", out_path, "Output CSV path, or - for stdout");
    sweep->add_option("--grid", grid_flag, "Current grid start:stop:step, overrides config");

    CLI::App* optimize = app.add_subcommand("optimize", "Minimize the loss ratio");
    optimize->add_option("--config", config_path, "JSON configuration file")->required();
    optimize->add_option("--out", out_path, "Output CSV path, or - for stdout");

    CLI::App* simulate = app.add_subcommand("simulate", "Closed-loop plant simulation");
    simulate->add_option("--config", config_path, "JSON configuration file")->required();
    simulate->add_option("--out", out_path, "Output CSV path, or - for stdout");

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "Emit a bundled reference dataset");
    reproduce
        ->add_option("figure", figure,
                     "One of fig2, fig3, fig4a, fig4b, fig4c, fig4d, fig6, fig7")
        ->required();
    reproduce->add_option("--out", out_path, "Output CSV path, or - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (reproduce->parsed()) return cmd_reproduce(figure, out_path);
        const tec::RunConfig cfg = tec::load_config(config_path);
        if (solve->parsed()) return cmd_solve(cfg, current, out_path);
        if (sweep->parsed()) return cmd_sweep(cfg, grid_flag, out_path);
        if (optimize->parsed()) return cmd_optimize(cfg, out_path);
        if (simulate->parsed()) return cmd_simulate(cfg, out_path);
    } catch (const tec::ValidationError& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 2;
    } catch (const tec::InfeasibleProblem& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 4;
    } catch (const tec::ModelError& e) {
        std::cerr << e.name() << ": " << e.what() << "\n";
        return 3;
    }
    return 0;
}
