#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tec/exergy.h"
#include "tec/steady_state.h"

namespace tec {

// Search bounds for the drive current.
struct CurrentBounds {
    double I_min;
    double I_max;

    void validate() const;
};

// Default bounds for a module: [0, rated maximum current].
CurrentBounds default_bounds(const ModuleParams& m);

// Closed sub-interval of the bounds where the loss ratio is defined.
struct CurrentInterval {
    double lo;
    double hi;
};

struct OptimizationResult {
    double I_star;     // minimizing current (A)
    double gamma_star; // loss ratio at I_star
    OperatingPoint operating_point;
    ExergyReport report;
    CurrentInterval feasible_interval;
    std::size_t evaluations; // objective evaluations performed
    bool converged;          // bracket width reached the requested tolerance
    bool grid_fallback;      // pre-scan saw multiple local minima; used a dense grid
};

// Evaluate the loss ratio at one current; empty when the operating point or
// its exergy report is undefined there.
std::optional<double> try_gamma(const ModuleParams& m, const Environment& env,
                                double I);

// Maximal sub-interval of the bounds where the solve yields useful cooling
// (Q_C > 0), positive drive (W > 0), and a defined reversible limit, located
// by a coarse scan plus bisection on each edge to 1e-6 A. Empty when no
// feasible current exists.
std::optional<CurrentInterval> feasible_interval(const ModuleParams& m,
                                                 const Environment& env,
                                                 const CurrentBounds& bounds);

// Minimize the loss ratio over the feasible interval. Golden-section search
// seeded by a 64-point pre-scan; if the pre-scan sees more than one strict
// local minimum the search falls back to a dense grid and flags it. Throws
// InfeasibleProblem when the feasible interval is empty.
OptimizationResult minimize_gamma(const ModuleParams& m, const Environment& env,
                                  const CurrentBounds& bounds, double tol = 1e-4);

// One row of a current sweep; undefined quantities stay empty instead of the
// row being dropped, so curves show their domain edges.
struct CurrentSweepRow {
    double I;
    std::optional<OperatingPoint> op;
    std::optional<ExergyReport> report;
};

// Evaluate every current in the (sorted) grid. Rows are independent and run
// in parallel, capped by the TEC_OPT_THREADS environment variable.
std::vector<CurrentSweepRow> sweep_current(const ModuleParams& m,
                                           const Environment& env,
                                           const std::vector<double>& grid);

// Environment parameter that an environment sweep varies.
enum class EnvParameter { T_C, T_H, L_C, L_H };

EnvParameter parse_env_parameter(const std::string& name);
std::string env_parameter_name(EnvParameter p);

// One row of an environment sweep; empty result marks an infeasible row.
struct EnvSweepRow {
    double value;
    std::optional<OptimizationResult> result;
};

// Optimize at each value of the varied parameter, all other environment
// fields held at `base`. Rows run in parallel; input order is preserved.
std::vector<EnvSweepRow> sweep_environment(const ModuleParams& m,
                                           const Environment& base,
                                           EnvParameter varying,
                                           const std::vector<double>& values,
                                           const CurrentBounds& bounds);

// Thread cap for sweeps: TEC_OPT_THREADS, else hardware concurrency.
unsigned sweep_thread_cap();

} // namespace tec
