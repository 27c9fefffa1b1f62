#ifndef LLLAB_CORE_DYNAMICS_HPP
#define LLLAB_CORE_DYNAMICS_HPP

#include "energetics.hpp"
#include "grid.hpp"
#include "mapping.hpp"

#include <string>
#include <vector>

namespace lllab {

enum class Scheme { ifrk4, rk4 };

enum class RunStatus {
    completed,
    halted_validity,  // eps^{1/2}||psi||_inf reached sigma
    halted_energy,    // conserved quantity drifted past tolerance
};

struct IntegratorConfig {
    double dt = 0.0;
    double t_end = 0.0;
    Scheme scheme = Scheme::ifrk4;
    int snapshot_stride = 1;         // 0: keep only first and last state
    double validity_sigma = kDefaultValiditySigma;
    double energy_drift_tol = 0.0;   // 0: per-equation default
};

struct DiagnosticsRow {
    double t = 0.0;
    double energy = 0.0;        // E_LL / frak E_eps / E_CS
    double energy_drift = 0.0;  // relative to the initial value
    double mass = 0.0;          // M2 (wavefields), unused for magnetizations
    double mass_drift = 0.0;
    double margin = 0.0;        // validity margin / sphere-constraint gap
};

struct MagTrajectory {
    std::vector<double> times;
    std::vector<Magnetization> states;
    std::vector<DiagnosticsRow> rows;
    RunStatus status = RunStatus::completed;
    std::string message;
    double stability_dt = 0.0;
};

struct WaveTrajectory {
    std::vector<double> times;
    std::vector<WaveField> states;
    std::vector<DiagnosticsRow> rows;
    RunStatus status = RunStatus::completed;
    std::string message;
    double stability_dt = 0.0;
};

// Largest stable step of the explicit schemes on this grid.
double stability_dt_ll(const Grid& grid, const AnisotropyParams& a);
double stability_dt_wave(const Grid& grid);

// d_t m = -m x (Lap m - lambda1 m1 e1 - lambda3 m3 e3).
TangentField ll_rhs(const Magnetization& m, const AnisotropyParams& a);

// Explicit RK4 with per-step renormalization to the sphere.
MagTrajectory evolve_ll(const Magnetization& m0, const AnisotropyParams& a,
                        const IntegratorConfig& cfg);

// d_t psi = i[(1 - eps|psi|^2)^{1/2} Lap psi + |psi|^2/(1 + sqrt) psi
//            + eps d_x(<psi, d_x psi>_C / sqrt) psi].
WaveField nls_eps_rhs(const WaveField& psi, EpsParam eps,
                      double sigma = kDefaultValiditySigma);

WaveTrajectory evolve_nls_eps(const WaveField& psi0, EpsParam eps,
                              const IntegratorConfig& cfg);

// d_t psi = i(Lap psi + |psi|^2 psi / 2).
WaveField cs_rhs(const WaveField& psi);

WaveTrajectory evolve_cs(const WaveField& psi0, const IntegratorConfig& cfg);

// R_eps with nls_eps_rhs - cs_rhs = -i eps R_eps.
WaveField remainder_R_eps(const WaveField& psi, EpsParam eps,
                          double sigma = kDefaultValiditySigma);

// L^2 residual of the second-order form of the magnetization flow at the
// interior index t_index, with d_tt m by centered differences in time.
double f_eps_residual(const MagTrajectory& traj, EpsParam eps, int t_index);

}  // namespace lllab

#endif
