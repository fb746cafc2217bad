#pragma once

#include <optional>
#include <utility>

#include "tec/module.h"

namespace tec {

// Reservoir temperatures and the heat-exchanger conductances that couple them
// to the device junctions.
struct Environment {
    double T_C; // cold-space temperature (K)
    double T_H; // hot-space temperature (K)
    double L_C; // cold-side exchanger thermal conductance (W/K)
    double L_H; // hot-side exchanger thermal conductance (W/K)

    void validate() const;
};

// Full steady-state solution at one drive current.
// Sign convention: Q_C > 0 removes heat from the cold space; Q_C < 0 means
// back-leak through the device exceeds the pumping.
struct OperatingPoint {
    double I;    // drive current (A)
    double Q_C;  // cold-side heat flow (W)
    double Q_H;  // hot-side heat flow (W)
    double T_Cj; // cold-junction temperature (K)
    double T_Hj; // hot-junction temperature (K)
    double W;    // electrical power, Q_H - Q_C (W)
    std::optional<double> V;   // terminal voltage W/I, undefined at I = 0
    std::optional<double> COP; // Q_C/W, undefined unless W > 0
};

// Solve the coupled junction balances for (Q_C, Q_H) at fixed current by
// direct elimination of the 2x2 linear system. Throws SingularSystem when the
// determinant magnitude falls below 1e-12 times the coefficient scale.
std::pair<double, double> solve_heat_flows(const ModuleParams& m,
                                           const Environment& env, double I);

// Junction temperatures implied by the exchanger drops:
//   T_Cj = T_C - Q_C/L_C, T_Hj = T_H + Q_H/L_H.
// Throws NonPhysicalTemperature if either falls to or below 0 K.
std::pair<double, double> junction_temperatures(const Environment& env,
                                                double Q_C, double Q_H);

// Compose the heat-flow solve and junction temperatures into a full
// OperatingPoint with W, V, and COP.
OperatingPoint operating_point(const ModuleParams& m, const Environment& env,
                               double I);

} // namespace tec
