#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tec/exergy.h"
#include "tec/module.h"
#include "tec/optimize.h"
#include "tec/steady_state.h"

namespace tec {

// Two-node lumped-capacitance plant: a cold space and a hot space, each
// exchanging heat with ambient and coupled to the device through the
// heat exchangers L_C and L_H.
struct PlantModel {
    double C_c;     // cold-space thermal capacitance (J/K)
    double C_h;     // hot-space thermal capacitance (J/K)
    double U_c_amb; // cold-space leak conductance to ambient (W/K)
    double U_h_amb; // hot-side exhaust conductance to ambient (W/K)
    double Q_int;   // internal heat load in the cold space (W)
    double T_amb;   // ambient temperature (K)
    double L_C;     // cold-side exchanger conductance (W/K)
    double L_H;     // hot-side exchanger conductance (W/K)

    void validate() const;

    // Largest explicit-Euler step the node time constants allow.
    double max_stable_dt() const;
};

struct PlantState {
    double t;   // time (s)
    double T_C; // cold-space temperature (K)
    double T_H; // hot-space temperature (K)

    void validate() const;
};

struct ControllerConfig {
    double update_period = 1.0;              // seconds between re-optimizations
    std::optional<CurrentBounds> bounds;     // defaults to [0, module I_max]
    double sensor_noise_std = 0.0;           // Gaussian noise on readings (K)
    double hold_on_infeasible = 0.0;         // current applied when no feasible I exists (A)
    double tol = 1e-4;                       // optimizer current tolerance (A)
    std::uint64_t noise_seed = 1;            // RNG seed for sensor noise

    void validate() const;
};

// One record per simulation step. `env` snapshots what the solver saw
// (plant state plus exchanger conductances); `report` stays empty where the
// loss ratio is undefined.
struct TraceRecord {
    double t;
    double I_applied;
    Environment env;
    OperatingPoint op;
    std::optional<ExergyReport> report;
    bool tick; // true when the controller re-optimized at this step
};

struct SimTrace {
    std::vector<TraceRecord> records;
};

// One measured environment sample for replay.
struct Reading {
    double t;
    double T_C;
    double T_H;
    double L_C;
    double L_H;
};

// Advance the plant one explicit-Euler step under the device heat flows held
// constant across the step:
//   T_C' = T_C + dt/C_c * (U_c_amb*(T_amb - T_C) + Q_int - Q_C)
//   T_H' = T_H + dt/C_h * (Q_H - U_h_amb*(T_H - T_amb))
// Throws UnstableStep when dt exceeds the stability guard.
PlantState step_plant(const PlantModel& plant, const PlantState& state,
                      const OperatingPoint& op, double dt);

// Closed loop: every update period the controller re-optimizes the current
// for the instantaneous (optionally noise-perturbed) readings; between ticks
// the current is held and the plant advances with step_plant.
SimTrace run_closed_loop(const ModuleParams& m, const PlantModel& plant,
                         const ControllerConfig& cfg, const PlantState& initial,
                         double duration, double dt);

// Evaluate what the controller would command on each measured reading; no
// plant integration. Readings must be strictly increasing in t.
SimTrace replay_environment(const ModuleParams& m, const ControllerConfig& cfg,
                            const std::vector<Reading>& readings);

} // namespace tec
