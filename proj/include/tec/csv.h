#pragma once

// CSV interchange: comma separator, '.' decimal point, one header row, "NA"
// for undefined values, '\n' line endings. Numbers print with 17 significant
// digits so a written value reads back bit-identical.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tec/optimize.h"
#include "tec/simulate.h"

namespace tec::csv {

std::string field(double v);
std::string field(std::optional<double> v);

// Columns: I,Q_C,Q_H,T_Cj,T_Hj,W,V,COP,s_gen,COP_rev,Q_C_max,Q_C_loss,eta_II,gamma
void write_current_sweep(std::ostream& out, const std::vector<CurrentSweepRow>& rows);

// Columns: <param>,I_star,gamma_star,Q_C,Q_H,W,COP,T_Cj,T_Hj,
//          feasible_lo,feasible_hi,evaluations,converged,status
void write_env_sweep(std::ostream& out, const std::string& param_name,
                     const std::vector<EnvSweepRow>& rows);

// Columns: I_star,gamma_star,Q_C,Q_H,W,COP,T_Cj,T_Hj,
//          feasible_lo,feasible_hi,evaluations,converged,grid_fallback
void write_optimization(std::ostream& out, const OptimizationResult& r);

// Columns: t,I,T_C,T_H,L_C,L_H,Q_C,Q_H,T_Cj,T_Hj,W,V,COP,
//          s_gen,COP_rev,Q_C_max,Q_C_loss,eta_II,gamma,tick
void write_trace(std::ostream& out, const SimTrace& trace);

// Parse environment readings from CSV with at least the columns
// t,T_C,T_H,L_C,L_H (extra columns are ignored, so a written trace replays
// directly). Malformed input is rejected with its line number.
std::vector<Reading> read_readings(std::istream& in);

// Expand "start:stop:step" into an ascending grid including both endpoints
// (the last point lands on stop up to roundoff in the step count).
std::vector<double> parse_grid(const std::string& spec);

} // namespace tec::csv
