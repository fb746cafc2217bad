#pragma once

namespace tec {

// Per-leg material properties (magnitudes; the p/n signs are absorbed into the
// lumped sums).
struct LegMaterial {
    double rho;   // electrical resistivity (ohm*m)
    double alpha; // Seebeck coefficient magnitude (V/K)
    double kappa; // thermal conductivity (W/(m*K))

    void validate() const;
};

// Leg geometry shared by every couple in the module.
struct ModuleGeometry {
    double l; // effective leg length (m)
    double S; // leg cross-sectional area (m^2)
    int N;    // number of n-p couples

    void validate() const;
};

// Electrical rating envelope printed on the device label.
struct Ratings {
    double I_max; // rated maximum current (A)
    double V_max; // rated maximum voltage (V)

    void validate() const;
};

// Lumped device constants used by every downstream computation.
struct ModuleParams {
    double A;     // lumped Seebeck coefficient (V/K)
    double R;     // lumped electrical resistance (ohm)
    double K;     // lumped thermal conductance (W/K)
    double I_max; // rated maximum current (A)
    double V_max; // rated maximum voltage (V)

    void validate() const;
};

// Lump per-leg properties and geometry into device constants:
//   A = (alpha_p + alpha_n) * N
//   R = (rho_p + rho_n) * (l/S) * N
//   K = (kappa_p + kappa_n) * (S/l) * N
ModuleParams lump_from_materials(const LegMaterial& p, const LegMaterial& n,
                                 const ModuleGeometry& g, const Ratings& r);

// Dimensionless figure of merit (A^2 / (K*R)) * T at reference temperature T.
double figure_of_merit(const ModuleParams& m, double T);

} // namespace tec
