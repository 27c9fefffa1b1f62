#include "energetics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lllab {

namespace {

void require_order(int order) {
    if (order < 2 || order > 8)
        throw std::invalid_argument("hierarchy order must lie in [2, 8], got " +
                                    std::to_string(order));
}

// <z1, z2>_C = Re(z1 conj(z2)).
double re_inner(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

// <i z1, z2>_C = Im(conj(z1) z2).
double sym_inner(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

// d_t (1 - eps|psi|^2)^{1/2} = eps * d_x <i psi, d_x psi>_C along the flow.
RealField rho_time_derivative(const WaveField& psi, double e) {
    ComplexField p = wavefield_as_field(psi);
    ComplexField dp = spectral_derivative(p, 1);
    ComplexField flux = make_complex_field(psi.grid);
    for (size_t j = 0; j < flux.values.size(); ++j)
        flux.values[j] = cplx(sym_inner(p.values[j], dp.values[j]), 0.0);
    ComplexField div = spectral_derivative(flux, 1);
    RealField out = make_real_field(psi.grid);
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] = e * div.values[j].real();
    return out;
}

}  // namespace

AnisotropyParams make_anisotropy(double lambda1, double lambda3) {
    if (!(lambda1 >= 0.0 && lambda3 >= 0.0))
        throw std::invalid_argument("anisotropy constants must be non-negative");
    return AnisotropyParams{lambda1, lambda3};
}

double sobolev_norm_real(const RealField& f, int s, bool homogeneous) {
    return sobolev_norm(to_complex(f), s, homogeneous);
}

double landau_lifshitz_energy(const Magnetization& m, const AnisotropyParams& a) {
    RealField d1 = spectral_derivative_ramp(RealField{m.grid, m.m1}, 1);
    RealField d2 = spectral_derivative_ramp(RealField{m.grid, m.m2}, 1);
    RealField d3 = spectral_derivative_ramp(RealField{m.grid, m.m3}, 1);
    std::vector<double> density(m.m1.size());
    for (size_t j = 0; j < density.size(); ++j)
        density[j] = d1.values[j] * d1.values[j] + d2.values[j] * d2.values[j] +
                     d3.values[j] * d3.values[j] + a.lambda1 * m.m1[j] * m.m1[j] +
                     a.lambda3 * m.m3[j] * m.m3[j];
    return 0.5 * quadrature(*m.grid, density);
}

double e_ll_k(const Magnetization& m, const TangentField& dtm, int order,
              const AnisotropyParams& a) {
    require_order(order);
    const int s = order - 2;
    if (!same_grid(*m.grid, *dtm.grid))
        throw std::invalid_argument("magnetization and tangent grids differ");

    auto hnorm2 = [s](const RealField& f) {
        const double v = sobolev_norm_real(f, s, true);
        return v * v;
    };

    RealField lap1 = spectral_derivative_ramp(RealField{m.grid, m.m1}, 2);
    RealField lap2 = spectral_derivative_ramp(RealField{m.grid, m.m2}, 2);
    RealField lap3 = spectral_derivative_ramp(RealField{m.grid, m.m3}, 2);
    RealField g1 = spectral_derivative_ramp(RealField{m.grid, m.m1}, 1);
    RealField g3 = spectral_derivative_ramp(RealField{m.grid, m.m3}, 1);

    const double dt_part = hnorm2(RealField{m.grid, dtm.v1}) +
                           hnorm2(RealField{m.grid, dtm.v2}) +
                           hnorm2(RealField{m.grid, dtm.v3});
    const double lap_part = hnorm2(lap1) + hnorm2(lap2) + hnorm2(lap3);
    const double grad_part = hnorm2(g1) + hnorm2(g3);
    const double low_part =
        hnorm2(RealField{m.grid, m.m1}) + hnorm2(RealField{m.grid, m.m3});

    return 0.5 * (dt_part + lap_part + (a.lambda1 + a.lambda3) * grad_part +
                  a.lambda1 * a.lambda3 * low_part);
}

double nls_energy_eps(const WaveField& psi, EpsParam eps, double sigma) {
    require_valid(psi, eps, sigma);
    const double e = eps.eps;
    ComplexField p = wavefield_as_field(psi);
    ComplexField dp = spectral_derivative(p, 1);
    std::vector<double> density(p.values.size());
    for (size_t j = 0; j < density.size(); ++j) {
        const double inner = re_inner(p.values[j], dp.values[j]);
        density[j] = std::norm(p.values[j]) + e * std::norm(dp.values[j]) +
                     e * e * inner * inner / (1.0 - e * std::norm(p.values[j]));
    }
    return 0.5 * quadrature(*psi.grid, density);
}

double frak_e_k(const WaveField& psi, const WaveField& dtpsi, EpsParam eps, int order) {
    require_order(order);
    if (!same_grid(*psi.grid, *dtpsi.grid))
        throw std::invalid_argument("wavefield and time-derivative grids differ");
    const double e = eps.eps;
    const int s = order - 2;

    auto hnorm2c = [s](const ComplexField& f) {
        const double v = sobolev_norm(f, s, true);
        return v * v;
    };
    auto hnorm2r = [s](const RealField& f) {
        const double v = sobolev_norm_real(f, s, true);
        return v * v;
    };

    ComplexField p = wavefield_as_field(psi);
    ComplexField dp = spectral_derivative(p, 1);
    ComplexField lap = spectral_derivative(p, 2);

    ComplexField shifted = make_complex_field(psi.grid);
    for (size_t j = 0; j < shifted.values.size(); ++j)
        shifted.values[j] = e * dtpsi.psi[j] - cplx(0.0, 1.0) * p.values[j];

    RealField rho = make_real_field(psi.grid);
    for (size_t j = 0; j < rho.values.size(); ++j)
        rho.values[j] = std::sqrt(1.0 - e * std::norm(p.values[j]));
    RealField rho_t = rho_time_derivative(psi, e);
    RealField rho_lap = spectral_derivative_ramp(rho, 2);

    return 0.5 * (hnorm2c(p) + hnorm2c(shifted) + e * e * hnorm2c(lap) +
                  e * (hnorm2r(rho_t) + hnorm2r(rho_lap) + 2.0 * hnorm2c(dp)));
}

BoundRecord norm_equivalence_check(const WaveField& psi, const WaveField& dtpsi,
                                   EpsParam eps, int order) {
    require_order(order);
    const double e = eps.eps;
    const int s = order - 2;
    ComplexField p = wavefield_as_field(psi);
    const double a = sobolev_norm(p, s, true);
    const double b = sobolev_norm(spectral_derivative(p, 1), s, true);
    const double c = sobolev_norm(spectral_derivative(p, 2), s, true);
    BoundRecord rec;
    rec.lower_combo = 0.5 * (a * a + e * b * b + e * e * c * c);
    rec.frak_e_l = frak_e_k(psi, dtpsi, eps, order);
    rec.ratio = rec.lower_combo > 0.0 ? rec.frak_e_l / rec.lower_combo : 0.0;
    return rec;
}

// Reported invariant pair (M2, E_CS) with E_CS = 1/2 |grad|^2 - 1/4 |psi|^4.
// Note the half-strength cubic flow conserves the Hamiltonian with the
// quartic weight 1/8 instead; the integrators monitor that one for drift.
std::pair<double, double> cs_invariants(const WaveField& psi) {
    ComplexField p = wavefield_as_field(psi);
    ComplexField dp = spectral_derivative(p, 1);
    std::vector<double> mass(p.values.size()), energy(p.values.size());
    for (size_t j = 0; j < mass.size(); ++j) {
        mass[j] = std::norm(p.values[j]);
        energy[j] = std::norm(dp.values[j]) - 0.5 * mass[j] * mass[j];
    }
    return {quadrature(*psi.grid, mass), 0.5 * quadrature(*psi.grid, energy)};
}

KEpsReport k_eps_0(const WaveField& psi0, const WaveField& psi_eps0, EpsParam eps, int k,
                   double a_const) {
    if (k < 3) throw std::invalid_argument("regularity index must satisfy k >= 3");
    if (!(a_const > 0.0)) throw std::invalid_argument("horizon constant must be positive");
    const double e = eps.eps;
    ComplexField p0 = wavefield_as_field(psi0);
    ComplexField pe = wavefield_as_field(psi_eps0);
    KEpsReport rep;
    rep.k_eps_0 = sobolev_norm(p0, k, false) + sobolev_norm(pe, k, false) +
                  std::sqrt(e) * sobolev_norm(spectral_derivative(pe, 1), k, true) +
                  e * sobolev_norm(spectral_derivative(pe, 2), k, true);
    rep.condition_lhs = a_const * std::sqrt(e) * rep.k_eps_0;
    if (rep.k_eps_0 > 0.0) {
        rep.t_eps_lower = 1.0 / (a_const * rep.k_eps_0 * rep.k_eps_0);
    } else {
        rep.t_eps_lower = std::numeric_limits<double>::infinity();
        rep.unbounded = true;
    }
    return rep;
}

}  // namespace lllab
