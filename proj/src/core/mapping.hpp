#ifndef LLLAB_CORE_MAPPING_HPP
#define LLLAB_CORE_MAPPING_HPP

#include "grid.hpp"

namespace lllab {

// Sphere-valued magnetization samples (m1, m2, m3).
struct Magnetization {
    GridPtr grid;
    std::vector<double> m1;
    std::vector<double> m2;
    std::vector<double> m3;
};

// Complex wavefield samples (Psi, Psi_eps, Upsilon_eps, W).
struct WaveField {
    GridPtr grid;
    std::vector<cplx> psi;
};

// Anisotropy scaling lambda_1 = lambda_3 = 1/eps.
struct EpsParam {
    double eps;
};

inline constexpr double kDefaultValiditySigma = 0.9;

EpsParam make_eps(double eps);  // requires 0 < eps < 1

Magnetization make_magnetization(GridPtr grid);
WaveField make_wavefield(GridPtr grid);

ComplexField wavefield_as_field(const WaveField& psi);
WaveField wavefield_from_values(GridPtr grid, std::vector<cplx> values);

// m_check = m1 + i m3 as a complex field.
ComplexField m_check(const Magnetization& m);

// eps^{1/2} ||psi||_inf; must stay below sigma for the change of variables.
double validity_margin(const WaveField& psi, EpsParam eps);
void require_valid(const WaveField& psi, EpsParam eps,
                   double sigma = kDefaultValiditySigma);

// m = (eps^{1/2} Re(e^{-it/eps} psi), (1 - eps|psi|^2)^{1/2},
//      eps^{1/2} Im(e^{-it/eps} psi)); the positive m2 branch.
Magnetization magnetization_from_wavefield(const WaveField& psi, EpsParam eps, double t,
                                           double sigma = kDefaultValiditySigma);

// Exact inverse: psi = eps^{-1/2} (m1 + i m3) e^{it/eps}. Requires m2 > 0.
WaveField wavefield_from_magnetization(const Magnetization& m, EpsParam eps, double t);

// Max pointwise gap between |grad m|^2 + (m1^2 + m3^2)/eps and
// |psi|^2 + eps|grad psi|^2 + eps^2 <psi, grad psi>^2 / (1 - eps|psi|^2).
double scaled_energy_identity_residual(const Magnetization& m, const WaveField& psi,
                                       EpsParam eps);

// max |m.m - 1| over nodes.
double check_sphere_constraint(const Magnetization& m);

// Pointwise projection back to the unit sphere; errors if any norm < 0.5.
Magnetization renormalize(const Magnetization& m);

}  // namespace lllab

#endif
