#include "dynamics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lllab {

namespace {

using CVec = std::vector<cplx>;

// Linear-stability margin of classical RK4 on the imaginary axis (2.828..),
// taken with a small safety factor.
constexpr double kRk4ImaginaryRadius = 2.8;

double kappa_max(const Grid& g) { return M_PI * g.n / g.length; }

int step_count(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("dt and t_end must be positive");
    int n = static_cast<int>(std::ceil(t_end / dt - 1e-9));
    return n < 1 ? 1 : n;
}

bool record_step(int step, int nsteps, int stride) {
    if (step == 0 || step == nsteps) return true;
    return stride > 0 && step % stride == 0;
}

double rel_drift(double value, double reference) {
    const double scale = std::max(std::abs(reference), 1e-12);
    return std::abs(value - reference) / scale;
}

// sqrt(1 - eps|z|^2); throws when the argument leaves the sphere chart.
double rho_of(double e, cplx z) {
    const double arg = 1.0 - e * std::norm(z);
    if (!(arg > 0.0))
        throw std::domain_error("field amplitude reached the chart boundary, "
                                "eps|psi|^2 >= 1");
    return std::sqrt(arg);
}

double sym_inner(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }
double re_inner(cplx a, cplx b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Nonlinear part of the eps-scaled flow (everything except i*Lap).
CVec nls_eps_nonlinear(const Grid& g, GridPtr grid, const CVec& psi, double e) {
    ComplexField p{grid, psi};
    ComplexField dp = spectral_derivative(p, 1);
    ComplexField lap = spectral_derivative(p, 2);
    const size_t n = psi.size();
    ComplexField flux = make_complex_field(grid);
    std::vector<double> rho(n);
    for (size_t j = 0; j < n; ++j) {
        rho[j] = rho_of(e, psi[j]);
        flux.values[j] = cplx(re_inner(psi[j], dp.values[j]) / rho[j], 0.0);
    }
    ComplexField div = spectral_derivative(flux, 1);
    CVec out(n);
    const cplx iu(0.0, 1.0);
    for (size_t j = 0; j < n; ++j) {
        const cplx stiff = (rho[j] - 1.0) * lap.values[j];
        const cplx cubic = std::norm(psi[j]) / (1.0 + rho[j]) * psi[j];
        const cplx drift = e * div.values[j].real() * psi[j];
        out[j] = iu * (stiff + cubic + drift);
    }
    return out;
}

CVec cs_nonlinear(const CVec& psi) {
    CVec out(psi.size());
    const cplx iu(0.0, 1.0);
    for (size_t j = 0; j < psi.size(); ++j) out[j] = iu * 0.5 * std::norm(psi[j]) * psi[j];
    return out;
}

CVec add_lap(const Grid& g, GridPtr grid, const CVec& psi, const CVec& nonlinear) {
    ComplexField lap = spectral_derivative(ComplexField{grid, psi}, 2);
    CVec out(psi.size());
    const cplx iu(0.0, 1.0);
    for (size_t j = 0; j < psi.size(); ++j) out[j] = iu * lap.values[j] + nonlinear[j];
    return out;
}

struct IfPropagator {
    std::vector<cplx> half;  // exp(-i kappa^2 dt / 2)
    std::vector<cplx> full;
};

IfPropagator make_propagator(const Grid& g, double dt) {
    IfPropagator p;
    p.half.resize(static_cast<size_t>(g.n));
    p.full.resize(static_cast<size_t>(g.n));
    for (size_t j = 0; j < p.half.size(); ++j) {
        const double k2 = g.wavenumbers[j] * g.wavenumbers[j];
        p.half[j] = std::exp(cplx(0.0, -k2 * dt / 2.0));
        p.full[j] = std::exp(cplx(0.0, -k2 * dt));
    }
    return p;
}

using NonlinearFn = std::function<CVec(const CVec&)>;

// One integrating-factor RK4 step on Fourier coefficients.
CVec ifrk4_step(const Grid& g, const IfPropagator& pr, double dt, const CVec& vhat,
                const NonlinearFn& nfn) {
    const size_t n = vhat.size();
    auto to_phys = [&](const CVec& coeffs) { return fft_inverse(g, coeffs); };
    auto eval = [&](const CVec& coeffs) { return fft_forward(g, nfn(to_phys(coeffs))); };

    const CVec na = eval(vhat);
    CVec b(n), c(n), d(n);
    for (size_t j = 0; j < n; ++j) b[j] = pr.half[j] * (vhat[j] + 0.5 * dt * na[j]);
    const CVec nb = eval(b);
    for (size_t j = 0; j < n; ++j) c[j] = pr.half[j] * vhat[j] + 0.5 * dt * nb[j];
    const CVec nc = eval(c);
    for (size_t j = 0; j < n; ++j) d[j] = pr.full[j] * vhat[j] + dt * pr.half[j] * nc[j];
    const CVec nd = eval(d);

    CVec out(n);
    for (size_t j = 0; j < n; ++j)
        out[j] = pr.full[j] * vhat[j] +
                 dt / 6.0 *
                     (pr.full[j] * na[j] + 2.0 * pr.half[j] * (nb[j] + nc[j]) + nd[j]);
    return out;
}

using RhsFn = std::function<CVec(const CVec&)>;

CVec rk4_step(double dt, const CVec& v, const RhsFn& rhs) {
    const size_t n = v.size();
    const CVec k1 = rhs(v);
    CVec tmp(n);
    for (size_t j = 0; j < n; ++j) tmp[j] = v[j] + 0.5 * dt * k1[j];
    const CVec k2 = rhs(tmp);
    for (size_t j = 0; j < n; ++j) tmp[j] = v[j] + 0.5 * dt * k2[j];
    const CVec k3 = rhs(tmp);
    for (size_t j = 0; j < n; ++j) tmp[j] = v[j] + dt * k3[j];
    const CVec k4 = rhs(tmp);
    CVec out(n);
    for (size_t j = 0; j < n; ++j)
        out[j] = v[j] + dt / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);
    return out;
}

enum class WaveKind { nls_eps, cs };

WaveTrajectory evolve_wave(const WaveField& psi0, WaveKind kind, EpsParam eps,
                           const IntegratorConfig& cfg) {
    const Grid& g = *psi0.grid;
    GridPtr grid = psi0.grid;
    const double e = eps.eps;
    const double drift_tol = cfg.energy_drift_tol > 0.0 ? cfg.energy_drift_tol : 1e-6;

    WaveTrajectory traj;
    traj.stability_dt = stability_dt_wave(g);
    if (cfg.scheme == Scheme::rk4 && cfg.dt > traj.stability_dt)
        throw std::invalid_argument("dt " + std::to_string(cfg.dt) +
                                    " exceeds the explicit stability bound " +
                                    std::to_string(traj.stability_dt));

    NonlinearFn nfn;
    if (kind == WaveKind::nls_eps) {
        nfn = [&g, grid, e](const CVec& v) { return nls_eps_nonlinear(g, grid, v, e); };
    } else {
        nfn = [](const CVec& v) { return cs_nonlinear(v); };
    }
    RhsFn rhs = [&g, grid, &nfn](const CVec& v) { return add_lap(g, grid, v, nfn(v)); };

    const int nsteps = step_count(cfg.t_end, cfg.dt);
    const double dt = cfg.t_end / nsteps;
    const IfPropagator pr = make_propagator(g, dt);

    // For cs, drift is monitored on the conserved Hamiltonian of the
    // half-strength cubic flow (quartic weight 1/8), not the reported E_CS.
    auto energy_of = [&](const WaveField& psi) {
        if (kind == WaveKind::nls_eps) return nls_energy_eps(psi, eps, cfg.validity_sigma);
        ComplexField p = wavefield_as_field(psi);
        ComplexField dp = spectral_derivative(p, 1);
        std::vector<double> density(p.values.size());
        for (size_t j = 0; j < density.size(); ++j) {
            const double m = std::norm(p.values[j]);
            density[j] = std::norm(dp.values[j]) - 0.25 * m * m;
        }
        return 0.5 * quadrature(g, density);
    };
    auto mass_of = [&](const WaveField& psi) { return cs_invariants(psi).first; };

    auto record = [&](double t, const WaveField& psi, double e0, double m0) {
        DiagnosticsRow row;
        row.t = t;
        row.energy = energy_of(psi);
        row.energy_drift = rel_drift(row.energy, e0);
        row.mass = mass_of(psi);
        row.mass_drift = rel_drift(row.mass, m0);
        row.margin = kind == WaveKind::nls_eps ? validity_margin(psi, eps) : 0.0;
        traj.rows.push_back(row);
        traj.times.push_back(t);
        traj.states.push_back(psi);
        return row;
    };

    WaveField psi = psi0;
    if (kind == WaveKind::nls_eps) require_valid(psi, eps, cfg.validity_sigma);
    const double e0 = energy_of(psi);
    const double m0 = mass_of(psi);
    record(0.0, psi, e0, m0);

    CVec vhat = fft_forward(g, psi.psi);
    for (int step = 1; step <= nsteps; ++step) {
        try {
            if (cfg.scheme == Scheme::ifrk4) {
                vhat = ifrk4_step(g, pr, dt, vhat, nfn);
            } else {
                CVec v = fft_inverse(g, vhat);
                v = rk4_step(dt, v, rhs);
                vhat = fft_forward(g, v);
            }
        } catch (const std::domain_error& ex) {
            traj.status = RunStatus::halted_validity;
            traj.message = std::string("halted at t = ") +
                           std::to_string((step - 1) * dt) + ": " + ex.what();
            return traj;
        }
        if (!record_step(step, nsteps, cfg.snapshot_stride)) continue;

        psi = wavefield_from_values(grid, fft_inverse(g, vhat));
        const double t = step * dt;
        if (kind == WaveKind::nls_eps) {
            const double margin = validity_margin(psi, eps);
            if (margin >= cfg.validity_sigma) {
                traj.status = RunStatus::halted_validity;
                traj.message = "validity margin " + std::to_string(margin) +
                               " reached sigma at t = " + std::to_string(t);
                return traj;
            }
        }
        const DiagnosticsRow row = record(t, psi, e0, m0);
        if (row.energy_drift > drift_tol) {
            traj.status = RunStatus::halted_energy;
            traj.message = "energy drift " + std::to_string(row.energy_drift) +
                           " exceeded " + std::to_string(drift_tol) + " at t = " +
                           std::to_string(t) + "; reduce dt (stability bound " +
                           std::to_string(traj.stability_dt) + ")";
            return traj;
        }
    }
    return traj;
}

}  // namespace

double stability_dt_ll(const Grid& grid, const AnisotropyParams& a) {
    const double km = kappa_max(grid);
    return kRk4ImaginaryRadius / (km * km + std::max(a.lambda1, a.lambda3));
}

double stability_dt_wave(const Grid& grid) {
    const double km = kappa_max(grid);
    return kRk4ImaginaryRadius / (km * km);
}

TangentField ll_rhs(const Magnetization& m, const AnisotropyParams& a) {
    RealField lap1 = spectral_derivative_ramp(RealField{m.grid, m.m1}, 2);
    RealField lap2 = spectral_derivative_ramp(RealField{m.grid, m.m2}, 2);
    RealField lap3 = spectral_derivative_ramp(RealField{m.grid, m.m3}, 2);
    const size_t n = m.m1.size();
    TangentField out{m.grid, std::vector<double>(n), std::vector<double>(n),
                     std::vector<double>(n)};
    // Effective field Lap m - (lambda1 m1, 0, lambda3 m3): the anisotropy sign
    // is fixed by requiring the closed-form traveling waves to propagate
    // exactly (they satisfy m x d_t m = d_xx m + (...) m - lambda(m1 e1 + m3 e3)).
    for (size_t j = 0; j < n; ++j) {
        const double h1 = lap1.values[j] - a.lambda1 * m.m1[j];
        const double h2 = lap2.values[j];
        const double h3 = lap3.values[j] - a.lambda3 * m.m3[j];
        out.v1[j] = -(m.m2[j] * h3 - m.m3[j] * h2);
        out.v2[j] = -(m.m3[j] * h1 - m.m1[j] * h3);
        out.v3[j] = -(m.m1[j] * h2 - m.m2[j] * h1);
    }
    return out;
}

MagTrajectory evolve_ll(const Magnetization& m0, const AnisotropyParams& a,
                        const IntegratorConfig& cfg) {
    const Grid& g = *m0.grid;
    const size_t n = m0.m1.size();
    const double drift_tol = cfg.energy_drift_tol > 0.0 ? cfg.energy_drift_tol : 1e-3;

    MagTrajectory traj;
    traj.stability_dt = stability_dt_ll(g, a);
    if (cfg.dt > traj.stability_dt)
        throw std::invalid_argument("dt " + std::to_string(cfg.dt) +
                                    " exceeds the explicit stability bound " +
                                    std::to_string(traj.stability_dt));

    // State packed as (m1 + i m2, m3) to reuse the complex RK4 kernel would
    // obscure the cross product; step the three real vectors directly.
    auto rhs = [&](const Magnetization& m) { return ll_rhs(m, a); };
    auto step = [&](const Magnetization& m, double dt) {
        const TangentField k1 = rhs(m);
        Magnetization tmp = m;
        auto blend = [&](const Magnetization& base, const TangentField& k, double s) {
            for (size_t j = 0; j < n; ++j) {
                tmp.m1[j] = base.m1[j] + s * k.v1[j];
                tmp.m2[j] = base.m2[j] + s * k.v2[j];
                tmp.m3[j] = base.m3[j] + s * k.v3[j];
            }
        };
        blend(m, k1, 0.5 * dt);
        const TangentField k2 = rhs(tmp);
        blend(m, k2, 0.5 * dt);
        const TangentField k3 = rhs(tmp);
        blend(m, k3, dt);
        const TangentField k4 = rhs(tmp);
        Magnetization out = m;
        for (size_t j = 0; j < n; ++j) {
            out.m1[j] = m.m1[j] + dt / 6.0 * (k1.v1[j] + 2.0 * (k2.v1[j] + k3.v1[j]) + k4.v1[j]);
            out.m2[j] = m.m2[j] + dt / 6.0 * (k1.v2[j] + 2.0 * (k2.v2[j] + k3.v2[j]) + k4.v2[j]);
            out.m3[j] = m.m3[j] + dt / 6.0 * (k1.v3[j] + 2.0 * (k2.v3[j] + k3.v3[j]) + k4.v3[j]);
        }
        return out;
    };

    const int nsteps = step_count(cfg.t_end, cfg.dt);
    const double dt = cfg.t_end / nsteps;

    const double e0 = landau_lifshitz_energy(m0, a);
    auto record = [&](double t, const Magnetization& m, double gap) {
        DiagnosticsRow row;
        row.t = t;
        row.energy = landau_lifshitz_energy(m, a);
        row.energy_drift = rel_drift(row.energy, e0);
        row.margin = gap;
        traj.rows.push_back(row);
        traj.times.push_back(t);
        traj.states.push_back(m);
        return row;
    };

    Magnetization m = m0;
    record(0.0, m, check_sphere_constraint(m));

    for (int stepi = 1; stepi <= nsteps; ++stepi) {
        m = step(m, dt);
        const double gap = check_sphere_constraint(m);
        m = renormalize(m);
        if (!record_step(stepi, nsteps, cfg.snapshot_stride)) continue;
        const DiagnosticsRow row = record(stepi * dt, m, gap);
        if (row.energy_drift > drift_tol) {
            traj.status = RunStatus::halted_energy;
            traj.message = "energy drift " + std::to_string(row.energy_drift) +
                           " exceeded " + std::to_string(drift_tol) + " at t = " +
                           std::to_string(row.t) + "; reduce dt (stability bound " +
                           std::to_string(traj.stability_dt) + ")";
            return traj;
        }
    }
    return traj;
}

WaveField nls_eps_rhs(const WaveField& psi, EpsParam eps, double sigma) {
    require_valid(psi, eps, sigma);
    const Grid& g = *psi.grid;
    CVec nl = nls_eps_nonlinear(g, psi.grid, psi.psi, eps.eps);
    return wavefield_from_values(psi.grid, add_lap(g, psi.grid, psi.psi, nl));
}

WaveField cs_rhs(const WaveField& psi) {
    const Grid& g = *psi.grid;
    return wavefield_from_values(psi.grid, add_lap(g, psi.grid, psi.psi, cs_nonlinear(psi.psi)));
}

WaveTrajectory evolve_nls_eps(const WaveField& psi0, EpsParam eps,
                              const IntegratorConfig& cfg) {
    return evolve_wave(psi0, WaveKind::nls_eps, eps, cfg);
}

WaveTrajectory evolve_cs(const WaveField& psi0, const IntegratorConfig& cfg) {
    return evolve_wave(psi0, WaveKind::cs, EpsParam{0.5}, cfg);
}

WaveField remainder_R_eps(const WaveField& psi, EpsParam eps, double sigma) {
    require_valid(psi, eps, sigma);
    const double e = eps.eps;
    ComplexField p = wavefield_as_field(psi);
    ComplexField dp = spectral_derivative(p, 1);
    ComplexField lap = spectral_derivative(p, 2);
    const size_t n = p.values.size();
    ComplexField flux = make_complex_field(psi.grid);
    std::vector<double> rho(n);
    for (size_t j = 0; j < n; ++j) {
        rho[j] = rho_of(e, p.values[j]);
        flux.values[j] = cplx(re_inner(p.values[j], dp.values[j]) / rho[j], 0.0);
    }
    ComplexField div = spectral_derivative(flux, 1);
    WaveField out = make_wavefield(psi.grid);
    for (size_t j = 0; j < n; ++j) {
        const double q = std::norm(p.values[j]);
        const double opr = 1.0 + rho[j];
        out.psi[j] = q / opr * lap.values[j] -
                     q * q / (2.0 * opr * opr) * p.values[j] -
                     div.values[j].real() * p.values[j];
    }
    return out;
}

double f_eps_residual(const MagTrajectory& traj, EpsParam eps, int t_index) {
    if (t_index <= 0 || t_index + 1 >= static_cast<int>(traj.states.size()))
        throw std::invalid_argument("t_index must have neighbors on both sides");
    const double dtm1 = traj.times[t_index] - traj.times[t_index - 1];
    const double dtp1 = traj.times[t_index + 1] - traj.times[t_index];
    if (std::abs(dtm1 - dtp1) > 1e-12 * std::max(dtm1, dtp1))
        throw std::invalid_argument("centered d_tt needs uniformly spaced snapshots");
    const double dt = dtm1;
    const double e = eps.eps;
    const Magnetization& m = traj.states[t_index];
    const Magnetization& mm = traj.states[t_index - 1];
    const Magnetization& mp = traj.states[t_index + 1];
    GridPtr grid = m.grid;
    const Grid& g = *grid;
    const size_t n = m.m1.size();

    auto ramp = [&](const std::vector<double>& v, int order) {
        return spectral_derivative_ramp(RealField{grid, v}, order).values;
    };
    const auto d1 = ramp(m.m1, 1), d2 = ramp(m.m2, 1), d3 = ramp(m.m3, 1);
    const auto l1 = ramp(m.m1, 2), l2 = ramp(m.m2, 2), l3 = ramp(m.m3, 2);
    const auto b1 = ramp(m.m1, 4), b2 = ramp(m.m2, 4), b3 = ramp(m.m3, 4);

    // First force block: d_x(|d_x m|^2 d_x m) - 2 d_xx(|d_x m|^2 m).
    std::vector<double> gsq(n);
    for (size_t j = 0; j < n; ++j)
        gsq[j] = d1[j] * d1[j] + d2[j] * d2[j] + d3[j] * d3[j];
    auto deriv_plain = [&](const std::vector<double>& v, int order) {
        ComplexField f = to_complex(RealField{grid, v});
        ComplexField df = spectral_derivative(f, order);
        std::vector<double> out(n);
        for (size_t j = 0; j < n; ++j) out[j] = df.values[j].real();
        return out;
    };
    std::vector<double> p1(n), p2(n), p3(n), q1(n), q2(n), q3(n);
    for (size_t j = 0; j < n; ++j) {
        p1[j] = gsq[j] * d1[j];
        p2[j] = gsq[j] * d2[j];
        p3[j] = gsq[j] * d3[j];
        q1[j] = gsq[j] * m.m1[j];
        q2[j] = gsq[j] * m.m2[j];
        q3[j] = gsq[j] * m.m3[j];
    }
    const auto dp1 = deriv_plain(p1, 1), dp2 = deriv_plain(p2, 1), dp3 = deriv_plain(p3, 1);
    const auto lq1 = deriv_plain(q1, 2), lq2 = deriv_plain(q2, 2), lq3 = deriv_plain(q3, 2);

    // Anisotropy-coupled block, divided by eps in the force.
    std::vector<double> rsq(n), drsq(n);
    for (size_t j = 0; j < n; ++j) rsq[j] = m.m1[j] * m.m1[j] + m.m3[j] * m.m3[j];
    const auto drs = deriv_plain(rsq, 1);

    std::vector<double> density(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        const double tt1 = (mp.m1[j] - 2.0 * m.m1[j] + mm.m1[j]) / (dt * dt);
        const double tt2 = (mp.m2[j] - 2.0 * m.m2[j] + mm.m2[j]) / (dt * dt);
        const double tt3 = (mp.m3[j] - 2.0 * m.m3[j] + mm.m3[j]) / (dt * dt);

        const double f1a = dp1[j] - 2.0 * lq1[j];
        const double f2a = dp2[j] - 2.0 * lq2[j];
        const double f3a = dp3[j] - 2.0 * lq3[j];

        const double m1 = m.m1[j], m2v = m.m2[j], m3 = m.m3[j];
        const double g1 = (m1 * m1 + 3.0 * m3 * m3) * l1[j] - 2.0 * m1 * m3 * l3[j] -
                          gsq[j] * m1 + drs[j] * d1[j];
        const double g2 = rsq[j] * l2[j] + drs[j] * d2[j];
        const double g3 = (3.0 * m1 * m1 + m3 * m3) * l3[j] - 2.0 * m1 * m3 * l1[j] -
                          gsq[j] * m3 + drs[j] * d3[j];

        const double f1 = f1a - g1 / e + rsq[j] * m1 / (e * e);
        const double f2 = f2a - g2 / e;
        const double f3 = f3a - g3 / e + rsq[j] * m3 / (e * e);

        const double r1 = tt1 + b1[j] - 2.0 * l1[j] / e + m1 / (e * e) - f1;
        const double r2 = tt2 + b2[j] - f2;
        const double r3 = tt3 + b3[j] - 2.0 * l3[j] / e + m3 / (e * e) - f3;
        density[j] = r1 * r1 + r2 * r2 + r3 * r3;
    }
    return std::sqrt(quadrature(g, density));
}

}  // namespace lllab
