#pragma once

#include "tec/steady_state.h"

namespace tec {

// Second-law bookkeeping for one operating point.
// eta_II here is COP_rev/COP (>= 1), the reciprocal of the common textbook
// second-law efficiency; gamma = eta_II - 1 holds under this convention.
struct ExergyReport {
    double s_gen;    // entropy generation rate (W/K)
    double COP_rev;  // reversible COP at the junction temperatures
    double Q_C_max;  // reversible cooling for the same electrical power (W)
    double Q_C_loss; // cooling shortfall Q_C_max - Q_C (W)
    double eta_II;   // COP_rev / COP
    double gamma;    // Q_C_loss / Q_C, the loss ratio
    double T_Cj;     // junction temperatures the entropy sum uses (K)
    double T_Hj;
};

// Steady-state entropy generation rate: Q_H/T_Hj - Q_C/T_Cj.
double entropy_generation(const OperatingPoint& op);

// Reversible COP at the junction temperatures: T_Cj / (T_Hj - T_Cj).
// Throws DegenerateGradient when T_Hj <= T_Cj.
double reversible_cop(double T_Cj, double T_Hj);

// Reversible cooling limit for electrical power W: W * T_Cj / (T_Hj - T_Cj).
double max_cooling(double W, double T_Cj, double T_Hj);

// Cooling shortfall against the reversible limit: Q_C_max - Q_C.
double cooling_loss(const OperatingPoint& op);

// Full report for an operating point with useful cooling (Q_C > 0) and
// positive drive (W > 0). Throws NoUsefulCooling, NoDrive, or
// DegenerateGradient otherwise.
ExergyReport gamma_report(const OperatingPoint& op);

} // namespace tec
