#ifndef LLLAB_CORE_SOLITONS_HPP
#define LLLAB_CORE_SOLITONS_HPP

#include "grid.hpp"
#include "mapping.hpp"

#include <utility>

namespace lllab {

// Traveling-wave family selector. The two families have different
// admissibility logic, so the choice is always explicit.
enum class SolitonCase { case_i, case_ii };

// (lambda, c, omega, delta) for the Landau-Lifshitz traveling waves;
// delta in {-1, +1} is the limit of m2 at +infinity.
struct SolitonParams {
    double lambda;
    double c;
    double omega;
    int delta;
};

// (c, omega) with 4*omega > c^2 for the cubic Schrodinger bright soliton.
struct CsSolitonParams {
    double c;
    double omega;
};

// Throws std::invalid_argument naming the violated inequality.
void require_admissible(SolitonCase which, const SolitonParams& p);
void require_admissible(const CsSolitonParams& p);
bool is_admissible(SolitonCase which, const SolitonParams& p);

// Box half-width needed to push truncated tails below ~1e-14
// (40 decay lengths of the slowest-decaying component).
double required_half_width(SolitonCase which, const SolitonParams& p);
double required_half_width(const CsSolitonParams& p);
double upsilon_required_half_width(double c, double omega);

// Pointwise profile values (m_check, m2) of the static traveling-wave
// profiles V; evaluated with overflow-safe hyperbolic expressions.
std::pair<cplx, double> soliton_profile_value(SolitonCase which, const SolitonParams& p,
                                              double x);

// Closed-form m2(0) of the homoclinic family.
double soliton_center_m2(const SolitonParams& p);

WaveField cs_bright_soliton(const CsSolitonParams& p, double t, GridPtr grid);

Magnetization ll_soliton_case_i(double lambda, int delta, GridPtr grid);
Magnetization ll_soliton_case_ii(const SolitonParams& p, GridPtr grid);

// Phase lift of the case (ii) profile; requires c != 0. phase(0) = 0.
double ll_soliton_phase(const SolitonParams& p, double x);

// Profile translated by c*t with m_check rotated by e^{i omega t}.
Magnetization ll_traveling_wave(SolitonCase which, const SolitonParams& p, double t,
                                GridPtr grid);

// Scaled soliton Upsilon_eps(x, t); requires 4*omega > c^2, c >= 0,
// omega > 0 and eps < 1/omega.
WaveField upsilon_eps(double c, double omega, EpsParam eps, double t, GridPtr grid);

// First-order coefficient W_{c, omega} of the expansion of Upsilon_eps
// around the bright soliton.
WaveField first_order_correction(double c, double omega, GridPtr grid);

// L^2 norms of the two traveling-wave equation residuals, evaluated with
// spectral derivatives on the given profile samples.
std::pair<double, double> tw_residual(const Magnetization& profile, const SolitonParams& p);

// Max pointwise residuals of the first-integral identities of the
// traveling-wave system, plus the gap of m2(0) against its closed form.
struct AppendixResiduals {
    double derivative_identity;   // |v'|^2 = lambda(1 - v2^2) - 2 omega (v2 - delta)
    double momentum_identity;     // <i v, v'> = c (delta - v2)
    double v2_derivative_identity;  // (v2')^2 quartic identity
    double center_value_gap;      // |v2(0) - closed form| (case ii families)
};

AppendixResiduals appendix_identity_residuals(const Magnetization& profile,
                                              const SolitonParams& p);

}  // namespace lllab

#endif
