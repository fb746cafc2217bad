#pragma once

// Independent reference computations used only by tests. Each routine takes a
// deliberately different path from the library code it checks: iteration
// instead of elimination, exhaustive grids instead of line search, algebraic
// root solves instead of time stepping.

#include <optional>
#include <utility>

#include "tec/module.h"
#include "tec/optimize.h"
#include "tec/simulate.h"
#include "tec/steady_state.h"

namespace tec::oracle {

struct FixedPointResult {
    double Q_C = 0.0;
    double Q_H = 0.0;
    double T_Cj = 0.0;
    double T_Hj = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Damped fixed-point iteration of the junction balances: starting from the
// reservoir temperatures, alternately evaluate the balance heat flows and the
// exchanger drops, under-relaxing the junction-temperature update until both
// junction temperatures are stationary to 1e-12 K. Retries with stronger
// damping if the iteration diverges.
FixedPointResult fixed_point_heat_flows(const ModuleParams& m,
                                        const Environment& env, double I);

// Closed-form series conduction through exchanger / device / exchanger at
// zero current: Q = -(T_H - T_C) / (1/K + 1/L_C + 1/L_H).
double conduction_heat_flow(const ModuleParams& m, const Environment& env);

struct GridArgmin {
    double I = 0.0;
    double gamma = 0.0;
    double spacing = 0.0;
    bool found = false;
};

// Exhaustive scan of gamma over `points` evenly spaced currents spanning the
// bounds (endpoints included); undefined points are skipped.
GridArgmin grid_argmin_gamma(const ModuleParams& m, const Environment& env,
                             const CurrentBounds& bounds, int points);

struct PlantFixedPoint {
    double T_C = 0.0;
    double T_H = 0.0;
    double I = 0.0;
    bool converged = false;
};

// Algebraic steady state of the closed loop: solve
//   U_c_amb*(T_amb - T_C) + Q_int = Q_C(I*)
//   Q_H(I*) = U_h_amb*(T_H - T_amb)
// with I* the gamma argmin at (T_C, T_H), by nested bisection with a
// high-resolution independent argmin at each iterate. Searches only below
// ambient (the cooling branch); plants that settle at or above ambient are
// reported as not converged.
PlantFixedPoint plant_fixed_point(const ModuleParams& m, const PlantModel& plant,
                                  const CurrentBounds& bounds);

} // namespace tec::oracle
