#ifndef LLLAB_CORE_ENERGETICS_HPP
#define LLLAB_CORE_ENERGETICS_HPP

#include "grid.hpp"
#include "mapping.hpp"

#include <utility>
#include <vector>

namespace lllab {

struct AnisotropyParams {
    double lambda1;
    double lambda3;
};

// Tangent vector field along a magnetization (the value of a right-hand side).
struct TangentField {
    GridPtr grid;
    std::vector<double> v1;
    std::vector<double> v2;
    std::vector<double> v3;
};

struct EnergyReport {
    double e_ll = 0.0;
    std::vector<double> e_ll_orders;    // orders 2..5
    double frak_e = 0.0;
    std::vector<double> frak_e_orders;  // orders 2..5
    double m2_mass = 0.0;
    double e_cs = 0.0;
};

struct KEpsReport {
    double k_eps_0 = 0.0;
    double condition_lhs = 0.0;  // A * eps^{1/2} * K
    double t_eps_lower = 0.0;    // 1 / (A K^2)
    bool unbounded = false;      // K == 0: horizon reported as unbounded
};

struct BoundRecord {
    double lower_combo = 0.0;
    double frak_e_l = 0.0;
    double ratio = 0.0;  // frak_e_l / lower_combo (0 when both vanish)
};

AnisotropyParams make_anisotropy(double lambda1, double lambda3);

// E_LL = 1/2 int (|grad m|^2 + lambda1 m1^2 + lambda3 m3^2).
double landau_lifshitz_energy(const Magnetization& m, const AnisotropyParams& a);

// Order-k hierarchy energy; dtm must come from the equation right-hand side.
double e_ll_k(const Magnetization& m, const TangentField& dtm, int order,
              const AnisotropyParams& a);

// Conserved energy of the eps-scaled Schrodinger flow.
double nls_energy_eps(const WaveField& psi, EpsParam eps,
                      double sigma = kDefaultValiditySigma);

// Order-k hierarchy energy on the wavefield side; dtpsi from the equation.
double frak_e_k(const WaveField& psi, const WaveField& dtpsi, EpsParam eps, int order);

BoundRecord norm_equivalence_check(const WaveField& psi, const WaveField& dtpsi,
                                   EpsParam eps, int order);

// (M2, E_CS) of the cubic Schrodinger flow.
std::pair<double, double> cs_invariants(const WaveField& psi);

KEpsReport k_eps_0(const WaveField& psi0, const WaveField& psi_eps0, EpsParam eps, int k,
                   double a_const = 1.0);

// Hdot^s (or H^s) norm of a 3-component real field, ramp-aware on m2-like
// components.
double sobolev_norm_real(const RealField& f, int s, bool homogeneous);

}  // namespace lllab

#endif
