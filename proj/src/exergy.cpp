#include "tec/exergy.h"

#include <cmath>
#include <string>

#include "tec/errors.h"

namespace tec {

namespace {

void require_junctions(double T_Cj, double T_Hj, const char* func) {
    if (!std::isfinite(T_Cj) || T_Cj <= 0.0 || !std::isfinite(T_Hj) || T_Hj <= 0.0)
        throw ValidationError(std::string(func) +
                              ": junction temperatures must be finite and > 0");
}

} // namespace

double entropy_generation(const OperatingPoint& op) {
    require_junctions(op.T_Cj, op.T_Hj, "entropy_generation");
    return op.Q_H / op.T_Hj - op.Q_C / op.T_Cj;
}

double reversible_cop(double T_Cj, double T_Hj) {
    require_junctions(T_Cj, T_Hj, "reversible_cop");
    if (T_Hj <= T_Cj)
        throw DegenerateGradient("reversible_cop: T_Hj=" + std::to_string(T_Hj) +
                                 " K <= T_Cj=" + std::to_string(T_Cj) + " K");
    return T_Cj / (T_Hj - T_Cj);
}

double max_cooling(double W, double T_Cj, double T_Hj) {
    require_junctions(T_Cj, T_Hj, "max_cooling");
    if (!std::isfinite(W) || W < 0.0)
        throw ValidationError("max_cooling: W must be finite and >= 0");
    if (T_Hj <= T_Cj)
        throw DegenerateGradient("max_cooling: T_Hj=" + std::to_string(T_Hj) +
                                 " K <= T_Cj=" + std::to_string(T_Cj) + " K");
    return W * T_Cj / (T_Hj - T_Cj);
}

double cooling_loss(const OperatingPoint& op) {
    return max_cooling(op.W, op.T_Cj, op.T_Hj) - op.Q_C;
}

ExergyReport gamma_report(const OperatingPoint& op) {
    require_junctions(op.T_Cj, op.T_Hj, "gamma_report");
    if (!(op.Q_C > 0.0))
        throw NoUsefulCooling("gamma_report: Q_C=" + std::to_string(op.Q_C) +
                              " W is not positive");
    if (!(op.W > 0.0))
        throw NoDrive("gamma_report: W=" + std::to_string(op.W) +
                      " W is not positive");
    ExergyReport r;
    r.T_Cj = op.T_Cj;
    r.T_Hj = op.T_Hj;
    r.s_gen = entropy_generation(op);
    r.COP_rev = reversible_cop(op.T_Cj, op.T_Hj);
    r.Q_C_max = max_cooling(op.W, op.T_Cj, op.T_Hj);
    r.Q_C_loss = r.Q_C_max - op.Q_C;
    r.gamma = r.Q_C_loss / op.Q_C;
    r.eta_II = r.COP_rev / (op.Q_C / op.W);
    return r;
}

} // namespace tec
