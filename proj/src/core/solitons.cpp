#include "solitons.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lllab {

namespace {

double sech(double z) {
    const double u = std::exp(-std::abs(z));
    return 2.0 * u / (1.0 + u * u);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

void require_box(const Grid& g, double half_width, double shift, const char* what) {
    if (g.length / 2.0 < half_width + std::abs(shift))
        throw std::invalid_argument(std::string(what) + ": box half-width " +
                                    std::to_string(g.length / 2.0) + " below required " +
                                    std::to_string(half_width + std::abs(shift)));
}

// Shared coefficients of the Theorem-style homoclinic profile.
struct CaseTwoCoeffs {
    double beta;   // inner hyperbolic rate; outer rate is 2*beta
    double bigD;   // 4(lambda + delta*omega) - c^2
    double bigB;   // 2*lambda + delta*omega
    double bigC;   // sqrt(lambda c^2 + omega^2)
    double a;      // cosh coefficient
    double b;      // sinh coefficient magnitude
    int sgn;       // sign(c) * delta, with sign(0) = 0
};

CaseTwoCoeffs case_two_coeffs(const SolitonParams& p) {
    const double d = static_cast<double>(p.delta);
    CaseTwoCoeffs k;
    k.bigD = 4.0 * (p.lambda + d * p.omega) - p.c * p.c;
    k.beta = 0.5 * std::sqrt(k.bigD);
    k.bigB = 2.0 * p.lambda + d * p.omega;
    k.bigC = std::sqrt(p.lambda * p.c * p.c + p.omega * p.omega);
    k.a = std::sqrt(2.0 * k.bigC + p.c * p.c - 2.0 * d * p.omega);
    k.b = std::sqrt(std::max(0.0, 2.0 * k.bigC - p.c * p.c + 2.0 * d * p.omega));
    k.sgn = sign_of(p.c) * p.delta;
    return k;
}

}  // namespace

bool is_admissible(SolitonCase which, const SolitonParams& p) {
    if (!(p.lambda > 0.0) || (p.delta != 1 && p.delta != -1)) return false;
    const double wd = p.omega * p.delta;
    if (which == SolitonCase::case_i) return p.c == 0.0 && p.omega == 0.0;
    const bool branch_a = (0.0 < -wd) && (-wd < p.lambda) &&
                          (p.c * p.c < 4.0 * (p.lambda + wd));
    const bool branch_b = (wd >= 0.0) && (0.0 < p.c * p.c) &&
                          (p.c * p.c < 4.0 * (p.lambda + wd));
    return branch_a || branch_b;
}

void require_admissible(SolitonCase which, const SolitonParams& p) {
    if (!(p.lambda > 0.0)) throw std::invalid_argument("soliton requires lambda > 0");
    if (p.delta != 1 && p.delta != -1)
        throw std::invalid_argument("soliton requires delta in {-1, +1}");
    if (which == SolitonCase::case_i) {
        if (p.c != 0.0 || p.omega != 0.0)
            throw std::invalid_argument("case (i) requires c = omega = 0");
        return;
    }
    if (is_admissible(SolitonCase::case_ii, p)) return;
    const double wd = p.omega * p.delta;
    if (!(p.c * p.c < 4.0 * (p.lambda + wd)))
        throw std::invalid_argument("case (ii) requires c^2 < 4(lambda + omega*delta); c^2 = " +
                                    std::to_string(p.c * p.c) + ", bound = " +
                                    std::to_string(4.0 * (p.lambda + wd)));
    if (wd < 0.0)
        throw std::invalid_argument(
            "case (ii) requires 0 < -omega*delta < lambda; -omega*delta = " +
            std::to_string(-wd) + ", lambda = " + std::to_string(p.lambda));
    throw std::invalid_argument("case (ii) with omega*delta >= 0 requires c != 0");
}

void require_admissible(const CsSolitonParams& p) {
    if (!(4.0 * p.omega > p.c * p.c))
        throw std::invalid_argument("bright soliton requires 4*omega > c^2; got 4*omega = " +
                                    std::to_string(4.0 * p.omega) + ", c^2 = " +
                                    std::to_string(p.c * p.c));
}

double required_half_width(SolitonCase which, const SolitonParams& p) {
    if (which == SolitonCase::case_i) return 40.0 / std::sqrt(p.lambda);
    return 40.0 / case_two_coeffs(p).beta;
}

double required_half_width(const CsSolitonParams& p) {
    return 40.0 / (0.5 * std::sqrt(4.0 * p.omega - p.c * p.c));
}

double upsilon_required_half_width(double c, double omega) {
    return 40.0 / std::sqrt(omega - 0.25 * c * c);
}

std::pair<cplx, double> soliton_profile_value(SolitonCase which, const SolitonParams& p,
                                              double x) {
    const double d = static_cast<double>(p.delta);
    if (which == SolitonCase::case_i) {
        const double r = std::sqrt(p.lambda) * x;
        return {cplx(sech(r), 0.0), d * std::tanh(r)};
    }
    const CaseTwoCoeffs k = case_two_coeffs(p);
    const double u = std::exp(-k.beta * std::abs(x));
    const double s = (x >= 0.0) ? 1.0 : -1.0;
    const double u2 = u * u;
    const double denom = 2.0 * k.bigB * u2 + k.bigC * (1.0 + u2 * u2);
    const cplx phase = std::exp(cplx(0.0, 0.5 * p.c * d * x));
    const cplx bracket(k.a * (1.0 + u2), k.sgn * k.b * s * (1.0 - u2));
    const cplx mc = std::sqrt(k.bigD) * phase * u * bracket / denom;
    const double m2 = d * (1.0 - 2.0 * k.bigD * u2 / denom);
    return {mc, m2};
}

double soliton_center_m2(const SolitonParams& p) {
    const double d = static_cast<double>(p.delta);
    if (p.c == 0.0 && p.omega == 0.0) return 0.0;  // heteroclinic kink crosses zero
    return (d * std::sqrt(p.omega * p.omega + p.c * p.c * p.lambda) - p.omega - p.lambda * d) /
           p.lambda;
}

WaveField cs_bright_soliton(const CsSolitonParams& p, double t, GridPtr grid) {
    require_admissible(p);
    require_box(*grid, required_half_width(p), p.c * t, "cs_bright_soliton");
    const double mu = std::sqrt(4.0 * p.omega - p.c * p.c);
    WaveField out = make_wavefield(grid);
    const cplx rot = std::exp(cplx(0.0, p.omega * t));
    for (int j = 0; j < grid->n; ++j) {
        const double z = grid->nodes[static_cast<size_t>(j)] - p.c * t;
        out.psi[static_cast<size_t>(j)] =
            mu * std::exp(cplx(0.0, 0.5 * p.c * z)) * sech(0.5 * mu * z) * rot;
    }
    return out;
}

Magnetization ll_soliton_case_i(double lambda, int delta, GridPtr grid) {
    return ll_traveling_wave(SolitonCase::case_i, SolitonParams{lambda, 0.0, 0.0, delta}, 0.0,
                             grid);
}

Magnetization ll_soliton_case_ii(const SolitonParams& p, GridPtr grid) {
    return ll_traveling_wave(SolitonCase::case_ii, p, 0.0, grid);
}

double ll_soliton_phase(const SolitonParams& p, double x) {
    require_admissible(SolitonCase::case_ii, p);
    if (p.c == 0.0)
        throw std::invalid_argument("phase lift requires c != 0 (m_check is real for c = 0)");
    const double d = static_cast<double>(p.delta);
    const CaseTwoCoeffs k = case_two_coeffs(p);
    const double ratio = k.b / k.a;
    return 0.5 * p.c * d * x +
           sign_of(p.c) * d * std::atan(ratio * std::tanh(k.beta * x));
}

Magnetization ll_traveling_wave(SolitonCase which, const SolitonParams& p, double t,
                                GridPtr grid) {
    require_admissible(which, p);
    require_box(*grid, required_half_width(which, p), p.c * t, "ll_traveling_wave");
    Magnetization m = make_magnetization(grid);
    const cplx rot = std::exp(cplx(0.0, p.omega * t));
    for (int j = 0; j < grid->n; ++j) {
        const size_t jj = static_cast<size_t>(j);
        auto [mc, m2] = soliton_profile_value(which, p, grid->nodes[jj] - p.c * t);
        mc *= rot;
        m.m1[jj] = mc.real();
        m.m3[jj] = mc.imag();
        m.m2[jj] = m2;
    }
    return m;
}

WaveField upsilon_eps(double c, double omega, EpsParam eps, double t, GridPtr grid) {
    if (!(omega > 0.0) || c < 0.0 || !(4.0 * omega > c * c))
        throw std::invalid_argument("upsilon_eps requires omega > 0, c >= 0 and 4*omega > c^2");
    if (!(eps.eps < 1.0 / omega))
        throw std::invalid_argument("upsilon_eps requires eps < 1/omega");
    require_box(*grid, upsilon_required_half_width(c, omega), c * t, "upsilon_eps");
    const double e = eps.eps;
    const double beta = std::sqrt(omega - 0.25 * c * c);
    const double bigD = 4.0 * omega - c * c;
    // S = sqrt(1 + (c^2 - 2 omega) eps + omega^2 eps^2), rearranged so the
    // sinh coefficient (an O(eps) quantity) keeps full relative accuracy.
    const double s2m1 = (c * c - 2.0 * omega) * e + omega * omega * e * e;
    const double S = std::sqrt(1.0 + s2m1);
    const double a = std::sqrt(2.0 * S + 2.0 + (c * c - 2.0 * omega) * e);
    const double one_minus_S = -s2m1 / (1.0 + S);
    const double b2 = (c * c - 2.0 * omega) * e * one_minus_S / (1.0 + S) +
                      2.0 * omega * omega * e * e / (1.0 + S);
    const double b = sign_of(c) * std::sqrt(std::max(0.0, b2));
    WaveField out = make_wavefield(grid);
    const cplx rot = std::exp(cplx(0.0, omega * t));
    for (int j = 0; j < grid->n; ++j) {
        const double z = grid->nodes[static_cast<size_t>(j)] - c * t;
        const double u = std::exp(-beta * std::abs(z));
        const double sg = (z >= 0.0) ? 1.0 : -1.0;
        const double u2 = u * u;
        const double denom = 2.0 * (1.0 + omega * e) * u2 + S * (1.0 + u2 * u2);
        const cplx bracket(a * (1.0 + u2), b * sg * (1.0 - u2));
        out.psi[static_cast<size_t>(j)] =
            std::sqrt(bigD) * std::exp(cplx(0.0, 0.5 * c * z)) * u * bracket / denom * rot;
    }
    return out;
}

WaveField first_order_correction(double c, double omega, GridPtr grid) {
    if (!(4.0 * omega > c * c))
        throw std::invalid_argument("first_order_correction requires 4*omega > c^2");
    require_box(*grid, upsilon_required_half_width(c, omega), 0.0, "first_order_correction");
    const double alpha = std::sqrt(omega - 0.25 * c * c);
    WaveField out = make_wavefield(grid);
    for (int j = 0; j < grid->n; ++j) {
        const double x = grid->nodes[static_cast<size_t>(j)];
        const double sh = sech(alpha * x);
        const double th = std::tanh(alpha * x);
        const cplx bracket(0.25 * (4.0 * alpha * alpha - c * c) * sh -
                               2.0 * alpha * alpha * sh * sh * sh,
                           c * alpha * th * sh);
        out.psi[static_cast<size_t>(j)] = alpha * std::exp(cplx(0.0, 0.5 * c * x)) * bracket;
    }
    return out;
}

std::pair<double, double> tw_residual(const Magnetization& profile, const SolitonParams& p) {
    const Grid& g = *profile.grid;
    const ComplexField v = m_check(profile);
    const ComplexField dv = spectral_derivative(v, 1);
    const ComplexField ddv = spectral_derivative(v, 2);
    const RealField v2{profile.grid, profile.m2};
    const RealField dv2 = spectral_derivative_ramp(v2, 1);
    const RealField ddv2 = spectral_derivative_ramp(v2, 2);
    double acc1 = 0.0, acc2 = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const size_t jj = static_cast<size_t>(j);
        const cplx vj = v.values[jj];
        const cplx dvj = dv.values[jj];
        const double v2j = v2.values[jj];
        const double grad2 = std::norm(dvj) + dv2.values[jj] * dv2.values[jj];
        const cplx r1 = -ddv.values[jj] +
                        cplx(0.0, p.c) * (v2j * dvj - dv2.values[jj] * vj) -
                        (grad2 + p.lambda * std::norm(vj)) * vj + p.lambda * vj +
                        p.omega * v2j * vj;
        const double inner = vj.real() * dvj.imag() - vj.imag() * dvj.real();  // <i v, v'>
        const double r2 = -ddv2.values[jj] + p.c * inner -
                          (grad2 + p.lambda * std::norm(vj)) * v2j -
                          p.omega * std::norm(vj);
        acc1 += std::norm(r1);
        acc2 += r2 * r2;
    }
    return {std::sqrt(g.spacing * acc1), std::sqrt(g.spacing * acc2)};
}

AppendixResiduals appendix_identity_residuals(const Magnetization& profile,
                                              const SolitonParams& p) {
    const Grid& g = *profile.grid;
    const double d = static_cast<double>(p.delta);
    const ComplexField v = m_check(profile);
    const ComplexField dv = spectral_derivative(v, 1);
    const RealField v2{profile.grid, profile.m2};
    const RealField dv2 = spectral_derivative_ramp(v2, 1);
    AppendixResiduals out{0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < g.n; ++j) {
        const size_t jj = static_cast<size_t>(j);
        const cplx vj = v.values[jj];
        const cplx dvj = dv.values[jj];
        const double v2j = v2.values[jj];
        const double dv2j = dv2.values[jj];
        const double grad2 = std::norm(dvj) + dv2j * dv2j;
        out.derivative_identity = std::max(
            out.derivative_identity,
            std::abs(grad2 - p.lambda * (1.0 - v2j * v2j) + 2.0 * p.omega * (v2j - d)));
        const double inner = vj.real() * dvj.imag() - vj.imag() * dvj.real();
        out.momentum_identity =
            std::max(out.momentum_identity, std::abs(inner - p.c * (d - v2j)));
        const double quad = p.lambda * (v2j + d) * (v2j + d) + 2.0 * p.omega * (v2j + d) -
                            p.c * p.c;
        out.v2_derivative_identity =
            std::max(out.v2_derivative_identity,
                     std::abs(dv2j * dv2j - (v2j - d) * (v2j - d) * quad));
    }
    out.center_value_gap =
        std::abs(profile.m2[static_cast<size_t>(g.n / 2)] - soliton_center_m2(p));
    return out;
}

}  // namespace lllab
