#include "tec/module.h"

#include <cmath>
#include <string>

#include "tec/errors.h"

namespace tec {

namespace {

void require_positive_finite(double v, const char* field) {
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(std::string(field) + ": must be finite and > 0");
}

} // namespace

void LegMaterial::validate() const {
    require_positive_finite(rho, "LegMaterial.rho");
    require_positive_finite(alpha, "LegMaterial.alpha");
    require_positive_finite(kappa, "LegMaterial.kappa");
}

void ModuleGeometry::validate() const {
    require_positive_finite(l, "ModuleGeometry.l");
    require_positive_finite(S, "ModuleGeometry.S");
    if (N < 1)
        throw ValidationError("ModuleGeometry.N: must be >= 1");
}

void Ratings::validate() const {
    require_positive_finite(I_max, "Ratings.I_max");
    require_positive_finite(V_max, "Ratings.V_max");
}

void ModuleParams::validate() const {
    require_positive_finite(A, "ModuleParams.A");
    require_positive_finite(R, "ModuleParams.R");
    require_positive_finite(K, "ModuleParams.K");
    require_positive_finite(I_max, "ModuleParams.I_max");
    require_positive_finite(V_max, "ModuleParams.V_max");
}

ModuleParams lump_from_materials(const LegMaterial& p, const LegMaterial& n,
                                 const ModuleGeometry& g, const Ratings& r) {
    p.validate();
    n.validate();
    g.validate();
    r.validate();
    ModuleParams m;
    m.A = (p.alpha + n.alpha) * g.N;
    m.R = (p.rho + n.rho) * (g.l / g.S) * g.N;
    m.K = (p.kappa + n.kappa) * (g.S / g.l) * g.N;
    m.I_max = r.I_max;
    m.V_max = r.V_max;
    return m;
}

double figure_of_merit(const ModuleParams& m, double T) {
    m.validate();
    if (!std::isfinite(T) || T <= 0.0)
        throw ValidationError("figure_of_merit: T must be finite and > 0");
    return m.A * m.A / (m.K * m.R) * T;
}

} // namespace tec
