#include "tec/calibration.h"

namespace tec {

ModuleParams tec1_12704() {
    // Derived from the rating envelope, not measured: at the zero-load maximum
    // temperature difference the constant-property relations give
    //   A = V_max / T_h
    //   R = A * (T_h - dT_max) / I_max
    //   K = A^2 * (T_h - dT_max)^2 / (2 * dT_max * R)
    // with dT_max = 68 K quoted at hot-side temperature T_h = 300 K.
    const double T_h = 300.0;
    const double dT_max = 68.0;
    const double I_max = 4.0;
    const double V_max = 12.0;

    const double A = V_max / T_h;
    const double T_c = T_h - dT_max;
    const double R = A * T_c / I_max;
    const double K = A * A * T_c * T_c / (2.0 * dT_max * R);
    return ModuleParams{A, R, K, I_max, V_max};
}

} // namespace tec
