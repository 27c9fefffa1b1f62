#ifndef LLLAB_CORE_GRID_HPP
#define LLLAB_CORE_GRID_HPP

#include <complex>
#include <memory>
#include <vector>

namespace lllab {

using cplx = std::complex<double>;

// Uniform periodic grid on [-L/2, L/2). Wavenumbers are stored in FFT
// layout: index k corresponds to the integer mode p = k for k < n/2 and
// p = k - n otherwise, with kappa_p = 2*pi*p / L. The single Nyquist mode
// (p = -n/2) is treated as real; odd-order derivatives zero it.
struct Grid {
    int n = 0;
    double length = 0.0;
    double spacing = 0.0;
    std::vector<double> nodes;
    std::vector<double> wavenumbers;
};

using GridPtr = std::shared_ptr<const Grid>;

// Throws std::invalid_argument for odd n, n < 8 or non-positive length.
GridPtr make_grid(int n, double length);

inline bool same_grid(const Grid& a, const Grid& b) {
    return a.n == b.n && a.length == b.length;
}

struct ComplexField {
    GridPtr grid;
    std::vector<cplx> values;
};

struct RealField {
    GridPtr grid;
    std::vector<double> values;
};

ComplexField make_complex_field(GridPtr grid);
RealField make_real_field(GridPtr grid);

ComplexField to_complex(const RealField& f);

// Normalized discrete Fourier transform: coefficients such that
// values = sum_p coeff_p * exp(i kappa_p x) up to a fixed per-mode phase.
std::vector<cplx> fft_forward(const Grid& grid, const std::vector<cplx>& values);
std::vector<cplx> fft_inverse(const Grid& grid, const std::vector<cplx>& coeffs);

// Fourier multiplier (i kappa)^order; order <= 8. Exact on band-limited data.
ComplexField spectral_derivative(const ComplexField& f, int order);

// Derivative of a real field whose periodization carries a constant jump
// across the box boundary (kink-like tails). The linear ramp carrying the
// jump is subtracted before transforming and its slope restored for
// order 1. For fields with equal tails this reduces to the plain spectral
// derivative.
RealField spectral_derivative_ramp(const RealField& f, int order);

// Discrete H^s / Hdot^s norm via Plancherel, s <= 8.
double sobolev_norm(const ComplexField& f, int s, bool homogeneous);
double linf_norm(const ComplexField& f);

// Real part of the L^2 quadrature inner product, h * sum Re(f conj(g)).
double l2_inner(const ComplexField& f, const ComplexField& g);

double l2_norm(const ComplexField& f);

// h * sum of samples (spectrally accurate quadrature for smooth periodic
// integrands).
double quadrature(const Grid& grid, const std::vector<double>& density);

}  // namespace lllab

#endif
