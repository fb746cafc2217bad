#include "tec/simulate.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tec/errors.h"

namespace tec {

void PlantModel::validate() const {
    auto positive = [](double v, const char* field) {
        if (!std::isfinite(v) || v <= 0.0)
            throw ValidationError(std::string(field) + ": must be finite and > 0");
    };
    auto non_negative = [](double v, const char* field) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError(std::string(field) + ": must be finite and >= 0");
    };
    positive(C_c, "PlantModel.C_c");
    positive(C_h, "PlantModel.C_h");
    non_negative(U_c_amb, "PlantModel.U_c_amb");
    non_negative(U_h_amb, "PlantModel.U_h_amb");
    if (!std::isfinite(Q_int))
        throw ValidationError("PlantModel.Q_int: must be finite");
    positive(T_amb, "PlantModel.T_amb");
    positive(L_C, "PlantModel.L_C");
    positive(L_H, "PlantModel.L_H");
}

double PlantModel::max_stable_dt() const {
    // Conductance each node sees: ambient leak plus its exchanger.
    const double g_cold = U_c_amb + L_C;
    const double g_hot = U_h_amb + L_H;
    return 0.5 * std::min(C_c, C_h) / std::max(g_cold, g_hot);
}

void PlantState::validate() const {
    if (!std::isfinite(t))
        throw ValidationError("PlantState.t: must be finite");
    if (!std::isfinite(T_C) || T_C <= 0.0)
        throw ValidationError("PlantState.T_C: must be finite and > 0");
    if (!std::isfinite(T_H) || T_H <= 0.0)
        throw ValidationError("PlantState.T_H: must be finite and > 0");
}

void ControllerConfig::validate() const {
    if (!std::isfinite(update_period) || update_period <= 0.0)
        throw ValidationError("ControllerConfig.update_period: must be finite and > 0");
    if (bounds) bounds->validate();
    if (!std::isfinite(sensor_noise_std) || sensor_noise_std < 0.0)
        throw ValidationError("ControllerConfig.sensor_noise_std: must be finite and >= 0");
    if (!std::isfinite(hold_on_infeasible))
        throw ValidationError("ControllerConfig.hold_on_infeasible: must be finite");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw ValidationError("ControllerConfig.tol: must be finite and > 0");
}

PlantState step_plant(const PlantModel& plant, const PlantState& state,
                      const OperatingPoint& op, double dt) {
    plant.validate();
    state.validate();
    if (!std::isfinite(dt) || dt <= 0.0)
        throw ValidationError("step_plant: dt must be finite and > 0");
    const double dt_max = plant.max_stable_dt();
    if (dt > dt_max)
        throw UnstableStep("step_plant: dt=" + std::to_string(dt) +
                           " s exceeds the stability limit " +
                           std::to_string(dt_max) + " s");

    PlantState next;
    next.t = state.t + dt;
    next.T_C = state.T_C + dt / plant.C_c *
                               (plant.U_c_amb * (plant.T_amb - state.T_C) +
                                plant.Q_int - op.Q_C);
    next.T_H = state.T_H + dt / plant.C_h *
                               (op.Q_H - plant.U_h_amb * (state.T_H - plant.T_amb));
    if (next.T_C <= 0.0 || next.T_H <= 0.0)
        throw NonPhysicalTemperature("step_plant: temperature fell to or below 0 K");
    return next;
}

namespace {

struct Controller {
    const ModuleParams& m;
    const ControllerConfig& cfg;
    CurrentBounds bounds;
    std::mt19937_64 rng;
    std::normal_distribution<double> noise;

    Controller(const ModuleParams& m_, const ControllerConfig& cfg_)
        : m(m_), cfg(cfg_), bounds(cfg_.bounds ? *cfg_.bounds : default_bounds(m_)),
          rng(cfg_.noise_seed), noise(0.0, 1.0) {}

    double perturb(double T) {
        if (cfg.sensor_noise_std <= 0.0) return T;
        return T + cfg.sensor_noise_std * noise(rng);
    }

    // Current the controller commands for these readings.
    double decide(const Environment& readings) {
        try {
            return minimize_gamma(m, readings, bounds, cfg.tol).I_star;
        } catch (const InfeasibleProblem&) {
            return cfg.hold_on_infeasible;
        }
    }
};

TraceRecord make_record(const ModuleParams& m, const Environment& env, double t,
                        double I, bool tick) {
    TraceRecord rec;
    rec.t = t;
    rec.I_applied = I;
    rec.env = env;
    rec.op = operating_point(m, env, I);
    rec.tick = tick;
    try {
        rec.report = gamma_report(rec.op);
    } catch (const ModelError&) {
        // Loss ratio undefined here; the record keeps its marker.
    }
    return rec;
}

} // namespace

SimTrace run_closed_loop(const ModuleParams& m, const PlantModel& plant,
                         const ControllerConfig& cfg, const PlantState& initial,
                         double duration, double dt) {
    m.validate();
    plant.validate();
    cfg.validate();
    initial.validate();
    if (!std::isfinite(duration) || duration < 0.0)
        throw ValidationError("run_closed_loop: duration must be finite and >= 0");
    if (!std::isfinite(dt) || dt <= 0.0)
        throw ValidationError("run_closed_loop: dt must be finite and > 0");
    if (dt > cfg.update_period)
        throw ValidationError("run_closed_loop: dt must not exceed the update period");

    const long long steps = std::llround(duration / dt);
    const long long steps_per_tick =
        std::max(1LL, std::llround(cfg.update_period / dt));

    Controller controller(m, cfg);
    PlantState state = initial;
    double I_held = cfg.hold_on_infeasible;

    SimTrace trace;
    trace.records.reserve(static_cast<std::size_t>(steps) + 1);
    for (long long k = 0; k <= steps; ++k) {
        const Environment env{state.T_C, state.T_H, plant.L_C, plant.L_H};
        const bool tick = (k % steps_per_tick == 0);
        if (tick) {
            const Environment readings{controller.perturb(state.T_C),
                                       controller.perturb(state.T_H), plant.L_C,
                                       plant.L_H};
            I_held = controller.decide(readings);
        }
        TraceRecord rec = make_record(m, env, state.t, I_held, tick);
        trace.records.push_back(rec);
        if (k < steps) state = step_plant(plant, state, rec.op, dt);
    }
    return trace;
}

SimTrace replay_environment(const ModuleParams& m, const ControllerConfig& cfg,
                            const std::vector<Reading>& readings) {
    m.validate();
    cfg.validate();
    for (std::size_t i = 0; i < readings.size(); ++i) {
        const Reading& r = readings[i];
        if (!std::isfinite(r.t) || !std::isfinite(r.T_C) || !std::isfinite(r.T_H) ||
            !std::isfinite(r.L_C) || !std::isfinite(r.L_H))
            throw ValidationError("replay_environment: non-finite value in row " +
                                  std::to_string(i));
        if (r.T_C <= 0.0 || r.T_H <= 0.0 || r.L_C <= 0.0 || r.L_H <= 0.0)
            throw ValidationError(
                "replay_environment: non-positive temperature or conductance in row " +
                std::to_string(i));
        if (i > 0 && r.t <= readings[i - 1].t)
            throw ValidationError(
                "replay_environment: time must be strictly increasing at row " +
                std::to_string(i));
    }

    Controller controller(m, cfg);
    SimTrace trace;
    trace.records.reserve(readings.size());
    for (const Reading& r : readings) {
        const Environment env{r.T_C, r.T_H, r.L_C, r.L_H};
        const Environment perturbed{controller.perturb(r.T_C),
                                    controller.perturb(r.T_H), r.L_C, r.L_H};
        const double I = controller.decide(perturbed);
        trace.records.push_back(make_record(m, env, r.t, I, true));
    }
    return trace;
}

} // namespace tec
