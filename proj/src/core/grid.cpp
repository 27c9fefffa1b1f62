#include "grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lllab {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<cplx> dummy(static_cast<size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(dummy.data()),
        reinterpret_cast<fftw_complex*>(dummy.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_cache.emplace(key, plan);
    return plan;
}

std::vector<cplx> run_fft(int n, int sign, const std::vector<cplx>& in) {
    fftw_plan plan = get_plan(n, sign);
    std::vector<cplx> tmp(in);
    std::vector<cplx> out(static_cast<size_t>(n));
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

void check_order(int order) {
    if (order < 0 || order > 8)
        throw std::invalid_argument("derivative order must be in [0, 8], got " +
                                    std::to_string(order));
}

}  // namespace

GridPtr make_grid(int n, double length) {
    if (n < 8) throw std::invalid_argument("grid size must be >= 8, got " + std::to_string(n));
    if (n % 2 != 0) throw std::invalid_argument("grid size must be even, got " + std::to_string(n));
    if (!(length > 0.0)) throw std::invalid_argument("box length must be positive");
    auto g = std::make_shared<Grid>();
    g->n = n;
    g->length = length;
    g->spacing = length / n;
    g->nodes.resize(static_cast<size_t>(n));
    g->wavenumbers.resize(static_cast<size_t>(n));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < n; ++j) {
        g->nodes[static_cast<size_t>(j)] = -0.5 * length + j * g->spacing;
        int p = (j < n / 2) ? j : j - n;
        g->wavenumbers[static_cast<size_t>(j)] = two_pi * p / length;
    }
    return g;
}

ComplexField make_complex_field(GridPtr grid) {
    return ComplexField{grid, std::vector<cplx>(static_cast<size_t>(grid->n))};
}

RealField make_real_field(GridPtr grid) {
    return RealField{grid, std::vector<double>(static_cast<size_t>(grid->n))};
}

ComplexField to_complex(const RealField& f) {
    ComplexField out = make_complex_field(f.grid);
    for (size_t j = 0; j < f.values.size(); ++j) out.values[j] = f.values[j];
    return out;
}

std::vector<cplx> fft_forward(const Grid& grid, const std::vector<cplx>& values) {
    auto out = run_fft(grid.n, FFTW_FORWARD, values);
    const double inv_n = 1.0 / grid.n;
    for (auto& c : out) c *= inv_n;
    return out;
}

std::vector<cplx> fft_inverse(const Grid& grid, const std::vector<cplx>& coeffs) {
    return run_fft(grid.n, FFTW_BACKWARD, coeffs);
}

ComplexField spectral_derivative(const ComplexField& f, int order) {
    check_order(order);
    const Grid& g = *f.grid;
    if (order == 0) return f;
    auto coeffs = fft_forward(g, f.values);
    for (int j = 0; j < g.n; ++j) {
        const cplx ik(0.0, g.wavenumbers[static_cast<size_t>(j)]);
        coeffs[static_cast<size_t>(j)] *= std::pow(ik, order);
    }
    if (order % 2 == 1) coeffs[static_cast<size_t>(g.n / 2)] = 0.0;
    return ComplexField{f.grid, fft_inverse(g, coeffs)};
}

RealField spectral_derivative_ramp(const RealField& f, int order) {
    check_order(order);
    const Grid& g = *f.grid;
    if (order == 0) return f;
    // Periodization jump estimated from the (flat) tails.
    const double jump = f.values.back() - f.values.front();
    const double slope = jump / g.length;
    ComplexField work = make_complex_field(f.grid);
    for (int j = 0; j < g.n; ++j)
        work.values[static_cast<size_t>(j)] =
            f.values[static_cast<size_t>(j)] - slope * g.nodes[static_cast<size_t>(j)];
    ComplexField der = spectral_derivative(work, order);
    RealField out = make_real_field(f.grid);
    for (int j = 0; j < g.n; ++j)
        out.values[static_cast<size_t>(j)] = der.values[static_cast<size_t>(j)].real();
    if (order == 1)
        for (auto& v : out.values) v += slope;
    return out;
}

double sobolev_norm(const ComplexField& f, int s, bool homogeneous) {
    if (s < 0 || s > 8) throw std::invalid_argument("Sobolev order must be in [0, 8]");
    const Grid& g = *f.grid;
    auto coeffs = fft_forward(g, f.values);
    double acc = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double kappa = std::abs(g.wavenumbers[static_cast<size_t>(j)]);
        const double mag2 = std::norm(coeffs[static_cast<size_t>(j)]);
        if (homogeneous) {
            acc += std::pow(kappa, 2 * s) * mag2;
        } else {
            double w = 0.0;
            for (int sigma = 0; sigma <= s; ++sigma) w += std::pow(kappa, 2 * sigma);
            acc += w * mag2;
        }
    }
    return std::sqrt(g.length * acc);
}

double linf_norm(const ComplexField& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double l2_inner(const ComplexField& f, const ComplexField& g) {
    if (!same_grid(*f.grid, *g.grid)) throw std::invalid_argument("fields live on different grids");
    double acc = 0.0;
    for (size_t j = 0; j < f.values.size(); ++j)
        acc += f.values[j].real() * g.values[j].real() + f.values[j].imag() * g.values[j].imag();
    return f.grid->spacing * acc;
}

double l2_norm(const ComplexField& f) {
    return std::sqrt(l2_inner(f, f));
}

double quadrature(const Grid& grid, const std::vector<double>& density) {
    double acc = 0.0;
    for (double v : density) acc += v;
    return grid.spacing * acc;
}

}  // namespace lllab
