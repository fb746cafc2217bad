#include "tec/steady_state.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "tec/errors.h"

namespace tec {

void Environment::validate() const {
    auto check = [](double v, const char* field) {
        if (!std::isfinite(v) || v <= 0.0)
            throw ValidationError(std::string(field) + ": must be finite and > 0");
    };
    check(T_C, "Environment.T_C");
    check(T_H, "Environment.T_H");
    check(L_C, "Environment.L_C");
    check(L_H, "Environment.L_H");
}

std::pair<double, double> solve_heat_flows(const ModuleParams& m,
                                           const Environment& env, double I) {
    m.validate();
    env.validate();
    if (!std::isfinite(I))
        throw ValidationError("solve_heat_flows: I must be finite");

    // Junction balances with the exchanger drops substituted give a linear
    // system in (Q_C, Q_H):
    //   a11*Q_C + a12*Q_H = b1   (cold junction)
    //   a21*Q_C + a22*Q_H = b2   (hot junction)
    const double dT = env.T_H - env.T_C;
    const double joule = 0.5 * m.R * I * I;
    const double a11 = -(m.A * I + m.K) / env.L_C - 1.0;
    const double a12 = -m.K / env.L_H;
    const double a21 = -m.K / env.L_C;
    const double a22 = (m.A * I - m.K) / env.L_H - 1.0;
    const double b1 = -m.A * I * env.T_C + joule + m.K * dT;
    const double b2 = -m.A * I * env.T_H - joule + m.K * dT;

    const double det = a11 * a22 - a12 * a21;
    const double scale = std::max({std::fabs(a11), std::fabs(a12),
                                   std::fabs(a21), std::fabs(a22)});
    if (std::fabs(det) < 1e-12 * scale)
        throw SingularSystem("solve_heat_flows: degenerate system, determinant " +
                                 std::to_string(det),
                             det);

    const double Q_C = (b1 * a22 - b2 * a12) / det;
    const double Q_H = (a11 * b2 - a21 * b1) / det;
    return {Q_C, Q_H};
}

std::pair<double, double> junction_temperatures(const Environment& env,
                                                double Q_C, double Q_H) {
    env.validate();
    const double T_Cj = env.T_C - Q_C / env.L_C;
    const double T_Hj = env.T_H + Q_H / env.L_H;
    if (!(T_Cj > 0.0) || !(T_Hj > 0.0))
        throw NonPhysicalTemperature(
            "junction_temperatures: T_Cj=" + std::to_string(T_Cj) +
            " K, T_Hj=" + std::to_string(T_Hj) + " K");
    return {T_Cj, T_Hj};
}

OperatingPoint operating_point(const ModuleParams& m, const Environment& env,
                               double I) {
    const auto [Q_C, Q_H] = solve_heat_flows(m, env, I);
    const auto [T_Cj, T_Hj] = junction_temperatures(env, Q_C, Q_H);
    OperatingPoint op;
    op.I = I;
    op.Q_C = Q_C;
    op.Q_H = Q_H;
    op.T_Cj = T_Cj;
    op.T_Hj = T_Hj;
    op.W = Q_H - Q_C;
    if (I != 0.0) op.V = op.W / I;
    if (op.W > 0.0) op.COP = Q_C / op.W;
    return op;
}

} // namespace tec
