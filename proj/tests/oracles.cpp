#include "oracles.h"

#include <cmath>

#include "tec/errors.h"
#include "tec/exergy.h"

namespace tec::oracle {

FixedPointResult fixed_point_heat_flows(const ModuleParams& m,
                                        const Environment& env, double I) {
    FixedPointResult out;
    for (double omega : {0.5, 0.25, 0.1, 0.02}) {
        double T_Cj = env.T_C;
        double T_Hj = env.T_H;
        bool diverged = false;
        const int max_iter = 400000;
        for (int it = 0; it < max_iter; ++it) {
            const double dTj = T_Hj - T_Cj;
            const double Q_C = m.A * I * T_Cj - 0.5 * m.R * I * I - m.K * dTj;
            const double Q_H = m.A * I * T_Hj + 0.5 * m.R * I * I - m.K * dTj;
            const double T_Cj_next = env.T_C - Q_C / env.L_C;
            const double T_Hj_next = env.T_H + Q_H / env.L_H;
            const double step_c = T_Cj_next - T_Cj;
            const double step_h = T_Hj_next - T_Hj;
            if (!std::isfinite(step_c) || !std::isfinite(step_h) ||
                std::fabs(step_c) > 1e8 || std::fabs(step_h) > 1e8) {
                diverged = true;
                break;
            }
            if (std::fabs(step_c) < 1e-12 && std::fabs(step_h) < 1e-12) {
                out.T_Cj = T_Cj;
                out.T_Hj = T_Hj;
                out.Q_C = env.L_C * (env.T_C - T_Cj);
                out.Q_H = env.L_H * (T_Hj - env.T_H);
                out.converged = true;
                out.iterations = it + 1;
                return out;
            }
            T_Cj += omega * step_c;
            T_Hj += omega * step_h;
        }
        if (!diverged) break; // hit the iteration cap; stronger damping won't help
    }
    return out;
}

double conduction_heat_flow(const ModuleParams& m, const Environment& env) {
    return -(env.T_H - env.T_C) / (1.0 / m.K + 1.0 / env.L_C + 1.0 / env.L_H);
}

GridArgmin grid_argmin_gamma(const ModuleParams& m, const Environment& env,
                             const CurrentBounds& bounds, int points) {
    GridArgmin out;
    if (points < 2) return out;
    const double span = bounds.I_max - bounds.I_min;
    out.spacing = span / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double I = bounds.I_min + span * i / (points - 1);
        const auto g = try_gamma(m, env, I);
        if (!g) continue;
        if (!out.found || *g < out.gamma) {
            out.found = true;
            out.gamma = *g;
            out.I = I;
        }
    }
    return out;
}

namespace {

// Independent high-resolution argmin: coarse scan, then repeated 16x zoom
// around the incumbent until the spacing drops below 1e-9 A.
std::optional<double> zoomed_argmin(const ModuleParams& m, const Environment& env,
                                    double lo, double hi) {
    double best_I = 0.0;
    bool found = false;
    for (;;) {
        const int points = 1024;
        const double spacing = (hi - lo) / (points - 1);
        double best_g = 0.0;
        bool any = false;
        for (int i = 0; i < points; ++i) {
            const double I = lo + spacing * i;
            const auto g = try_gamma(m, env, I);
            if (!g) continue;
            if (!any || *g < best_g) {
                any = true;
                best_g = *g;
                best_I = I;
            }
        }
        if (!any) return std::nullopt;
        found = true;
        if (spacing < 1e-9) break;
        const double new_lo = std::max(lo, best_I - 8.0 * spacing);
        const double new_hi = std::min(hi, best_I + 8.0 * spacing);
        lo = new_lo;
        hi = new_hi;
    }
    return found ? std::optional<double>(best_I) : std::nullopt;
}

} // namespace

namespace {

// Operating point at the gamma argmin for a given pair of space temperatures;
// empty when no feasible current exists there.
std::optional<std::pair<double, OperatingPoint>> argmin_op(
    const ModuleParams& m, const PlantModel& plant, const CurrentBounds& bounds,
    double T_C, double T_H) {
    const Environment env{T_C, T_H, plant.L_C, plant.L_H};
    const auto I = zoomed_argmin(m, env, bounds.I_min, bounds.I_max);
    if (!I) return std::nullopt;
    return std::make_pair(*I, operating_point(m, env, *I));
}

} // namespace

PlantFixedPoint plant_fixed_point(const ModuleParams& m, const PlantModel& plant,
                                  const CurrentBounds& bounds) {
    // Nested bisection. The hot-node residual Q_H - U_h_amb*(T_H - T_amb) is
    // strictly decreasing in T_H and the cold-node residual
    // U_c_amb*(T_amb - T_C) + Q_int - Q_C is strictly decreasing in T_C, so
    // each balance has a unique root found by bisection; the cold solve nests
    // the hot solve.
    PlantFixedPoint out;

    auto hot_balance = [&](double T_C) -> std::optional<std::pair<double, double>> {
        double lo = plant.T_amb;
        double hi = plant.T_amb;
        double r_hi = 1.0;
        for (int k = 0; k < 64 && r_hi > 0.0; ++k) {
            hi += 5.0;
            const auto at = argmin_op(m, plant, bounds, T_C, hi);
            if (!at) return std::nullopt;
            r_hi = at->second.Q_H - plant.U_h_amb * (hi - plant.T_amb);
        }
        if (r_hi > 0.0) return std::nullopt;
        double I_mid = 0.0;
        for (int k = 0; k < 80 && hi - lo > 1e-10; ++k) {
            const double mid = 0.5 * (lo + hi);
            const auto at = argmin_op(m, plant, bounds, T_C, mid);
            if (!at) return std::nullopt;
            I_mid = at->first;
            const double r = at->second.Q_H - plant.U_h_amb * (mid - plant.T_amb);
            (r > 0.0 ? lo : hi) = mid;
        }
        return std::make_pair(0.5 * (lo + hi), I_mid);
    };

    auto cold_residual = [&](double T_C) -> std::optional<double> {
        const auto th = hot_balance(T_C);
        if (!th) return std::nullopt;
        const auto at = argmin_op(m, plant, bounds, T_C, th->first);
        if (!at) return std::nullopt;
        return plant.U_c_amb * (plant.T_amb - T_C) + plant.Q_int - at->second.Q_C;
    };

    // The cold residual is not monotone over all temperatures (a second
    // balance point exists near ambient where the controller commands almost
    // no cooling), so the search stays inside the below-ambient basin.
    double hi = plant.T_amb - 2.0;
    {
        const auto r_hi = cold_residual(hi);
        if (!r_hi || *r_hi > 0.0) return out;
    }
    double lo = hi;
    double r_lo = -1.0;
    for (int k = 0; k < 16 && r_lo < 0.0; ++k) {
        lo -= 5.0;
        const auto r = cold_residual(lo);
        if (!r) return out;
        r_lo = *r;
    }
    if (r_lo < 0.0) return out;
    for (int k = 0; k < 80 && hi - lo > 1e-10; ++k) {
        const double mid = 0.5 * (lo + hi);
        const auto r = cold_residual(mid);
        if (!r) return out;
        (*r > 0.0 ? lo : hi) = mid;
    }
    const double T_C = 0.5 * (lo + hi);
    const auto th = hot_balance(T_C);
    if (!th) return out;
    out.T_C = T_C;
    out.T_H = th->first;
    out.I = th->second;
    out.converged = true;
    return out;
}

} // namespace tec::oracle
