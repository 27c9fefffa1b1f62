#include "mapping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lllab {

EpsParam make_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("eps must lie in (0, 1), got " + std::to_string(eps));
    return EpsParam{eps};
}

Magnetization make_magnetization(GridPtr grid) {
    const size_t n = static_cast<size_t>(grid->n);
    return Magnetization{grid, std::vector<double>(n), std::vector<double>(n, 1.0),
                         std::vector<double>(n)};
}

WaveField make_wavefield(GridPtr grid) {
    return WaveField{grid, std::vector<cplx>(static_cast<size_t>(grid->n))};
}

ComplexField wavefield_as_field(const WaveField& psi) {
    return ComplexField{psi.grid, psi.psi};
}

WaveField wavefield_from_values(GridPtr grid, std::vector<cplx> values) {
    if (values.size() != static_cast<size_t>(grid->n))
        throw std::invalid_argument("wavefield sample count does not match grid");
    return WaveField{grid, std::move(values)};
}

ComplexField m_check(const Magnetization& m) {
    ComplexField out = make_complex_field(m.grid);
    for (size_t j = 0; j < out.values.size(); ++j) out.values[j] = cplx(m.m1[j], m.m3[j]);
    return out;
}

double validity_margin(const WaveField& psi, EpsParam eps) {
    return std::sqrt(eps.eps) * linf_norm(wavefield_as_field(psi));
}

void require_valid(const WaveField& psi, EpsParam eps, double sigma) {
    const double margin = validity_margin(psi, eps);
    if (margin >= sigma)
        throw std::domain_error("validity condition violated: eps^{1/2}||psi||_inf = " +
                                std::to_string(margin) + " >= " + std::to_string(sigma));
}

Magnetization magnetization_from_wavefield(const WaveField& psi, EpsParam eps, double t,
                                           double sigma) {
    require_valid(psi, eps, sigma);
    const double e = eps.eps;
    const double sq = std::sqrt(e);
    const cplx phase = std::exp(cplx(0.0, -t / e));
    Magnetization m = make_magnetization(psi.grid);
    for (size_t j = 0; j < psi.psi.size(); ++j) {
        const cplx w = phase * psi.psi[j];
        m.m1[j] = sq * w.real();
        m.m3[j] = sq * w.imag();
        m.m2[j] = std::sqrt(1.0 - e * std::norm(psi.psi[j]));
    }
    return m;
}

WaveField wavefield_from_magnetization(const Magnetization& m, EpsParam eps, double t) {
    double m2_min = 1.0;
    for (double v : m.m2) m2_min = std::min(m2_min, v);
    if (!(m2_min > 0.0))
        throw std::domain_error("lift requires m2 > 0 everywhere; min m2 = " +
                                std::to_string(m2_min));
    const double e = eps.eps;
    const cplx phase = std::exp(cplx(0.0, t / e));
    WaveField psi = make_wavefield(m.grid);
    const double inv_sq = 1.0 / std::sqrt(e);
    for (size_t j = 0; j < psi.psi.size(); ++j)
        psi.psi[j] = inv_sq * phase * cplx(m.m1[j], m.m3[j]);
    return psi;
}

double scaled_energy_identity_residual(const Magnetization& m, const WaveField& psi,
                                       EpsParam eps) {
    const double e = eps.eps;
    const Grid& g = *m.grid;
    RealField m1{m.grid, m.m1}, m2{m.grid, m.m2}, m3{m.grid, m.m3};
    RealField d1 = spectral_derivative_ramp(m1, 1);
    RealField d2 = spectral_derivative_ramp(m2, 1);
    RealField d3 = spectral_derivative_ramp(m3, 1);
    ComplexField p = wavefield_as_field(psi);
    ComplexField dp = spectral_derivative(p, 1);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const size_t k = static_cast<size_t>(j);
        const double lhs = d1.values[k] * d1.values[k] + d2.values[k] * d2.values[k] +
                           d3.values[k] * d3.values[k] +
                           (m.m1[k] * m.m1[k] + m.m3[k] * m.m3[k]) / e;
        const double inner = p.values[k].real() * dp.values[k].real() +
                             p.values[k].imag() * dp.values[k].imag();
        const double rhs = std::norm(p.values[k]) + e * std::norm(dp.values[k]) +
                           e * e * inner * inner / (1.0 - e * std::norm(p.values[k]));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double check_sphere_constraint(const Magnetization& m) {
    double worst = 0.0;
    for (size_t j = 0; j < m.m1.size(); ++j) {
        const double s = m.m1[j] * m.m1[j] + m.m2[j] * m.m2[j] + m.m3[j] * m.m3[j];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

Magnetization renormalize(const Magnetization& m) {
    Magnetization out = m;
    for (size_t j = 0; j < m.m1.size(); ++j) {
        const double norm =
            std::sqrt(m.m1[j] * m.m1[j] + m.m2[j] * m.m2[j] + m.m3[j] * m.m3[j]);
        if (norm < 0.5)
            throw std::runtime_error("norm collapse during renormalization: |m| = " +
                                     std::to_string(norm) + " at node " + std::to_string(j));
        out.m1[j] = m.m1[j] / norm;
        out.m2[j] = m.m2[j] / norm;
        out.m3[j] = m.m3[j] / norm;
    }
    return out;
}

}  // namespace lllab
