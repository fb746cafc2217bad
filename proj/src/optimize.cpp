#include "tec/optimize.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "tec/errors.h"

namespace tec {

void CurrentBounds::validate() const {
    if (!std::isfinite(I_min) || !std::isfinite(I_max))
        throw ValidationError("CurrentBounds: bounds must be finite");
    if (I_min > I_max)
        throw ValidationError("CurrentBounds: I_min must be <= I_max");
}

CurrentBounds default_bounds(const ModuleParams& m) {
    m.validate();
    return {0.0, m.I_max};
}

std::optional<double> try_gamma(const ModuleParams& m, const Environment& env,
                                double I) {
    try {
        return gamma_report(operating_point(m, env, I)).gamma;
    } catch (const ModelError&) {
        return std::nullopt;
    }
}

namespace {

// Loss ratio is defined here: useful cooling, positive drive, and a junction
// gradient for the reversible limit.
bool feasible_at(const ModuleParams& m, const Environment& env, double I) {
    try {
        const OperatingPoint op = operating_point(m, env, I);
        return op.Q_C > 0.0 && op.W > 0.0 && op.T_Hj > op.T_Cj;
    } catch (const ModelError&) {
        return false;
    }
}

// Shrink [inside, outside] onto the feasibility edge; returns the feasible end.
double bisect_edge(const ModuleParams& m, const Environment& env,
                   double feasible, double infeasible) {
    for (int it = 0; it < 200 && std::fabs(feasible - infeasible) > 1e-6; ++it) {
        const double mid = 0.5 * (feasible + infeasible);
        if (feasible_at(m, env, mid))
            feasible = mid;
        else
            infeasible = mid;
    }
    return feasible;
}

unsigned parse_thread_cap(const char* s) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || v < 1) return 0;
    return static_cast<unsigned>(std::min(v, 512L));
}

// Run fn(i) for i in [0, n) on up to sweep_thread_cap() threads, rethrowing
// the first exception after all workers join.
template <typename Fn>
void parallel_rows(std::size_t n, Fn fn) {
    const std::size_t cap = std::min<std::size_t>(sweep_thread_cap(), n);
    if (cap <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(cap);
    for (std::size_t i = 0; i < cap; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

unsigned sweep_thread_cap() {
    if (const char* s = std::getenv("TEC_OPT_THREADS")) {
        if (const unsigned v = parse_thread_cap(s)) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

std::optional<CurrentInterval> feasible_interval(const ModuleParams& m,
                                                 const Environment& env,
                                                 const CurrentBounds& bounds) {
    m.validate();
    env.validate();
    bounds.validate();

    if (bounds.I_min == bounds.I_max) {
        if (feasible_at(m, env, bounds.I_min))
            return CurrentInterval{bounds.I_min, bounds.I_max};
        return std::nullopt;
    }

    const int scan = 256;
    const double span = bounds.I_max - bounds.I_min;
    int first = -1;
    int last = -1;
    for (int i = 0; i < scan; ++i) {
        const double I = bounds.I_min + span * i / (scan - 1);
        if (feasible_at(m, env, I)) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) return std::nullopt;

    const auto at = [&](int i) { return bounds.I_min + span * i / (scan - 1); };
    double lo = at(first);
    double hi = at(last);
    if (first > 0) lo = bisect_edge(m, env, lo, at(first - 1));
    if (last < scan - 1) hi = bisect_edge(m, env, hi, at(last + 1));
    return CurrentInterval{lo, hi};
}

OptimizationResult minimize_gamma(const ModuleParams& m, const Environment& env,
                                  const CurrentBounds& bounds, double tol) {
    if (!std::isfinite(tol) || tol <= 0.0)
        throw ValidationError("minimize_gamma: tol must be finite and > 0");

    const auto interval = feasible_interval(m, env, bounds);
    if (!interval)
        throw InfeasibleProblem("minimize_gamma: no feasible current in [" +
                                std::to_string(bounds.I_min) + ", " +
                                std::to_string(bounds.I_max) + "] A");

    std::size_t evaluations = 0;
    double best_I = interval->lo;
    double best_g = std::numeric_limits<double>::infinity();
    const auto eval = [&](double I) {
        ++evaluations;
        const auto g = try_gamma(m, env, I);
        const double v = g ? *g : std::numeric_limits<double>::infinity();
        if (v < best_g) {
            best_g = v;
            best_I = I;
        }
        return v;
    };

    bool grid_fallback = false;
    const double width = interval->hi - interval->lo;
    if (width > 0.0) {
        // Coarse pre-scan: locate the incumbent and check unimodality.
        const int scan = 64;
        std::vector<double> g(scan);
        int k = 0;
        for (int i = 0; i < scan; ++i) {
            g[i] = eval(interval->lo + width * i / (scan - 1));
            if (g[i] < g[k]) k = i;
        }
        int local_minima = 0;
        for (int i = 1; i + 1 < scan; ++i)
            if (g[i] < g[i - 1] && g[i] < g[i + 1]) ++local_minima;

        const auto grid_point = [&](int i) {
            return interval->lo + width * i / (scan - 1);
        };
        double a = grid_point(std::max(0, k - 1));
        double b = grid_point(std::min(scan - 1, k + 1));

        if (local_minima > 1) {
            // Multiple dips: refine exhaustively instead of trusting a bracket.
            grid_fallback = true;
            const int dense = 200001;
            int kd = 0;
            double gd_best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < dense; ++i) {
                const double I = interval->lo + width * i / (dense - 1);
                const auto gi = try_gamma(m, env, I);
                ++evaluations;
                if (gi && *gi < gd_best) {
                    gd_best = *gi;
                    kd = i;
                }
            }
            a = interval->lo + width * std::max(0, kd - 1) / (dense - 1);
            b = interval->lo + width * std::min(dense - 1, kd + 1) / (dense - 1);
        }

        // Golden-section refinement of the bracket. The stop width runs well
        // below the requested tolerance so the reported optimum sits at the
        // bottom of the valley, not just inside a tol-wide bracket.
        const double gr = (std::sqrt(5.0) + 1.0) / 2.0;
        const double stop = std::min(tol, 1e-8);
        double xl = b - (b - a) / gr;
        double xr = a + (b - a) / gr;
        double gl = eval(xl);
        double gxr = eval(xr);
        while (b - a > stop) {
            if (gl < gxr) {
                b = xr;
                xr = xl;
                gxr = gl;
                xl = b - (b - a) / gr;
                gl = eval(xl);
            } else {
                a = xl;
                xl = xr;
                gl = gxr;
                xr = a + (b - a) / gr;
                gxr = eval(xr);
            }
        }
        eval(0.5 * (a + b));
    } else {
        eval(interval->lo);
    }

    // Evaluate the full point at the incumbent so the stored gamma_star and
    // report come from one operating point.
    const OperatingPoint op = operating_point(m, env, best_I);
    const ExergyReport report = gamma_report(op);

    OptimizationResult result;
    result.I_star = best_I;
    result.gamma_star = report.gamma;
    result.operating_point = op;
    result.report = report;
    result.feasible_interval = *interval;
    result.evaluations = evaluations;
    result.converged = true;
    result.grid_fallback = grid_fallback;
    return result;
}

std::vector<CurrentSweepRow> sweep_current(const ModuleParams& m,
                                           const Environment& env,
                                           const std::vector<double>& grid) {
    m.validate();
    env.validate();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]))
            throw ValidationError("sweep_current: grid point " + std::to_string(i) +
                                  " is not finite");
        if (i > 0 && grid[i] < grid[i - 1])
            throw ValidationError("sweep_current: grid must be sorted ascending");
    }

    std::vector<CurrentSweepRow> rows(grid.size());
    parallel_rows(grid.size(), [&](std::size_t i) {
        rows[i].I = grid[i];
        try {
            const OperatingPoint op = operating_point(m, env, grid[i]);
            rows[i].op = op;
            rows[i].report = gamma_report(op);
        } catch (const ModelError&) {
            // Undefined rows keep their marker; curves show their domain edges.
        }
    });
    return rows;
}

EnvParameter parse_env_parameter(const std::string& name) {
    if (name == "T_C") return EnvParameter::T_C;
    if (name == "T_H") return EnvParameter::T_H;
    if (name == "L_C") return EnvParameter::L_C;
    if (name == "L_H") return EnvParameter::L_H;
    throw ValidationError("parse_env_parameter: unknown parameter '" + name +
                          "' (expected T_C, T_H, L_C, or L_H)");
}

std::string env_parameter_name(EnvParameter p) {
    switch (p) {
        case EnvParameter::T_C: return "T_C";
        case EnvParameter::T_H: return "T_H";
        case EnvParameter::L_C: return "L_C";
        case EnvParameter::L_H: return "L_H";
    }
    return "";
}

std::vector<EnvSweepRow> sweep_environment(const ModuleParams& m,
                                           const Environment& base,
                                           EnvParameter varying,
                                           const std::vector<double>& values,
                                           const CurrentBounds& bounds) {
    m.validate();
    base.validate();
    bounds.validate();

    std::vector<EnvSweepRow> rows(values.size());
    parallel_rows(values.size(), [&](std::size_t i) {
        rows[i].value = values[i];
        Environment env = base;
        switch (varying) {
            case EnvParameter::T_C: env.T_C = values[i]; break;
            case EnvParameter::T_H: env.T_H = values[i]; break;
            case EnvParameter::L_C: env.L_C = values[i]; break;
            case EnvParameter::L_H: env.L_H = values[i]; break;
        }
        try {
            rows[i].result = minimize_gamma(m, env, bounds);
        } catch (const InfeasibleProblem&) {
            // Row-level marker; the sweep continues.
        }
    });
    return rows;
}

} // namespace tec
