#include "ll_lab.h"

#include "core/dynamics.hpp"
#include "core/snapshot.hpp"
#include "core/solitons.hpp"
#include "core/studies.hpp"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

using namespace lllab;

struct ll_grid {
    GridPtr grid;
};
struct ll_wavefield {
    WaveField psi;
};
struct ll_magnetization {
    Magnetization m;
};

namespace {

thread_local std::string g_last_error = "no error";

ll_status fail(ll_status code, const char* what) {
    g_last_error = what;
    return code;
}

// Exceptions cross no library boundary; every entry point funnels through here.
template <typename Fn>
ll_status guarded(Fn&& fn) {
    try {
        fn();
        return LL_OK;
    } catch (const std::invalid_argument& ex) {
        return fail(LL_ERR_INVALID_ARGUMENT, ex.what());
    } catch (const std::domain_error& ex) {
        return fail(LL_ERR_DOMAIN, ex.what());
    } catch (const std::bad_alloc&) {
        return fail(LL_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& ex) {
        return fail(LL_ERR_RUNTIME, ex.what());
    } catch (...) {
        return fail(LL_ERR_RUNTIME, "unknown error");
    }
}

ll_status require(bool ok, const char* what) {
    return ok ? LL_OK : fail(LL_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* ll_last_error(void) { return g_last_error.c_str(); }

ll_status ll_grid_create(int n, double length, ll_grid** out) {
    if (ll_status s = require(out != nullptr, "out is NULL"); s != LL_OK) return s;
    return guarded([&] { *out = new ll_grid{make_grid(n, length)}; });
}

void ll_grid_destroy(ll_grid* grid) { delete grid; }

int ll_grid_size(const ll_grid* grid) { return grid ? grid->grid->n : 0; }

double ll_grid_length(const ll_grid* grid) { return grid ? grid->grid->length : 0.0; }

ll_status ll_grid_nodes(const ll_grid* grid, double* out) {
    if (ll_status s = require(grid && out, "NULL argument"); s != LL_OK) return s;
    std::memcpy(out, grid->grid->nodes.data(), grid->grid->nodes.size() * sizeof(double));
    return LL_OK;
}

ll_status ll_wavefield_create(const ll_grid* grid, const double* re, const double* im,
                              ll_wavefield** out) {
    if (ll_status s = require(grid && re && im && out, "NULL argument"); s != LL_OK)
        return s;
    return guarded([&] {
        WaveField psi = make_wavefield(grid->grid);
        for (size_t j = 0; j < psi.psi.size(); ++j) psi.psi[j] = cplx(re[j], im[j]);
        *out = new ll_wavefield{std::move(psi)};
    });
}

ll_status ll_wavefield_samples(const ll_wavefield* psi, double* re, double* im) {
    if (ll_status s = require(psi && re && im, "NULL argument"); s != LL_OK) return s;
    for (size_t j = 0; j < psi->psi.psi.size(); ++j) {
        re[j] = psi->psi.psi[j].real();
        im[j] = psi->psi.psi[j].imag();
    }
    return LL_OK;
}

int ll_wavefield_size(const ll_wavefield* psi) {
    return psi ? static_cast<int>(psi->psi.psi.size()) : 0;
}

void ll_wavefield_destroy(ll_wavefield* psi) { delete psi; }

ll_status ll_magnetization_create(const ll_grid* grid, const double* m1,
                                  const double* m2, const double* m3,
                                  ll_magnetization** out) {
    if (ll_status s = require(grid && m1 && m2 && m3 && out, "NULL argument");
        s != LL_OK)
        return s;
    return guarded([&] {
        Magnetization m = make_magnetization(grid->grid);
        const size_t n = m.m1.size();
        m.m1.assign(m1, m1 + n);
        m.m2.assign(m2, m2 + n);
        m.m3.assign(m3, m3 + n);
        if (check_sphere_constraint(m) > 1e-10)
            throw std::invalid_argument("samples do not sit on the unit sphere");
        *out = new ll_magnetization{std::move(m)};
    });
}

ll_status ll_magnetization_samples(const ll_magnetization* m, double* m1, double* m2,
                                   double* m3) {
    if (ll_status s = require(m && m1 && m2 && m3, "NULL argument"); s != LL_OK)
        return s;
    const size_t n = m->m.m1.size();
    std::memcpy(m1, m->m.m1.data(), n * sizeof(double));
    std::memcpy(m2, m->m.m2.data(), n * sizeof(double));
    std::memcpy(m3, m->m.m3.data(), n * sizeof(double));
    return LL_OK;
}

int ll_magnetization_size(const ll_magnetization* m) {
    return m ? static_cast<int>(m->m.m1.size()) : 0;
}

void ll_magnetization_destroy(ll_magnetization* m) { delete m; }

ll_status ll_cs_soliton(const ll_grid* grid, double c, double omega, double t,
                        ll_wavefield** out) {
    if (ll_status s = require(grid && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        *out = new ll_wavefield{cs_bright_soliton(CsSolitonParams{c, omega}, t, grid->grid)};
    });
}

ll_status ll_upsilon_eps(const ll_grid* grid, double c, double omega, double eps,
                         double t, ll_wavefield** out) {
    if (ll_status s = require(grid && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        *out = new ll_wavefield{upsilon_eps(c, omega, make_eps(eps), t, grid->grid)};
    });
}

ll_status ll_first_order_correction(const ll_grid* grid, double c, double omega,
                                    ll_wavefield** out) {
    if (ll_status s = require(grid && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        *out = new ll_wavefield{first_order_correction(c, omega, grid->grid)};
    });
}

ll_status ll_traveling_wave(const ll_grid* grid, int case_one, double lambda, double c,
                            double omega, int delta, double t, ll_magnetization** out) {
    if (ll_status s = require(grid && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        const SolitonCase which = case_one ? SolitonCase::case_i : SolitonCase::case_ii;
        const SolitonParams p{lambda, c, omega, delta};
        *out = new ll_magnetization{ll_traveling_wave(which, p, t, grid->grid)};
    });
}

ll_status ll_to_magnetization(const ll_wavefield* psi, double eps, double t,
                              ll_magnetization** out) {
    if (ll_status s = require(psi && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        *out = new ll_magnetization{
            magnetization_from_wavefield(psi->psi, make_eps(eps), t)};
    });
}

ll_status ll_to_wavefield(const ll_magnetization* m, double eps, double t,
                          ll_wavefield** out) {
    if (ll_status s = require(m && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        *out = new ll_wavefield{wavefield_from_magnetization(m->m, make_eps(eps), t)};
    });
}

ll_status ll_sobolev_norm(const ll_wavefield* psi, int s, int homogeneous, double* out) {
    if (ll_status st = require(psi && out, "NULL argument"); st != LL_OK) return st;
    return guarded([&] {
        *out = sobolev_norm(wavefield_as_field(psi->psi), s, homogeneous != 0);
    });
}

ll_status ll_cs_invariants(const ll_wavefield* psi, double* m2_mass, double* e_cs) {
    if (ll_status s = require(psi && m2_mass && e_cs, "NULL argument"); s != LL_OK)
        return s;
    return guarded([&] {
        const auto [m2, ecs] = cs_invariants(psi->psi);
        *m2_mass = m2;
        *e_cs = ecs;
    });
}

ll_status ll_nls_energy(const ll_wavefield* psi, double eps, double* out) {
    if (ll_status s = require(psi && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] { *out = nls_energy_eps(psi->psi, make_eps(eps)); });
}

ll_status ll_landau_lifshitz_energy(const ll_magnetization* m, double lambda1,
                                    double lambda3, double* out) {
    if (ll_status s = require(m && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] {
        *out = landau_lifshitz_energy(m->m, make_anisotropy(lambda1, lambda3));
    });
}

ll_status ll_tw_residual(const ll_magnetization* m, double lambda, double c,
                         double omega, int delta, double* residual_1,
                         double* residual_2) {
    if (ll_status s = require(m && residual_1 && residual_2, "NULL argument");
        s != LL_OK)
        return s;
    return guarded([&] {
        const auto [r1, r2] = tw_residual(m->m, SolitonParams{lambda, c, omega, delta});
        *residual_1 = r1;
        *residual_2 = r2;
    });
}

ll_status ll_validity_margin(const ll_wavefield* psi, double eps, double* out) {
    if (ll_status s = require(psi && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] { *out = validity_margin(psi->psi, make_eps(eps)); });
}

ll_status ll_snapshot_write_wavefield(const char* path, const ll_wavefield* psi) {
    if (ll_status s = require(path && psi, "NULL argument"); s != LL_OK) return s;
    return guarded([&] { write_snapshot(path, psi->psi); });
}

ll_status ll_snapshot_read_wavefield(const char* path, ll_wavefield** out) {
    if (ll_status s = require(path && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] { *out = new ll_wavefield{read_wavefield_snapshot(path)}; });
}

ll_status ll_snapshot_write_magnetization(const char* path, const ll_magnetization* m) {
    if (ll_status s = require(path && m, "NULL argument"); s != LL_OK) return s;
    return guarded([&] { write_snapshot(path, m->m); });
}

ll_status ll_snapshot_read_magnetization(const char* path, ll_magnetization** out) {
    if (ll_status s = require(path && out, "NULL argument"); s != LL_OK) return s;
    return guarded([&] { *out = new ll_magnetization{read_magnetization_snapshot(path)}; });
}

ll_status ll_run_command_json(const char* command, const char* config_json,
                              char** report_json) {
    if (ll_status s = require(command && config_json && report_json, "NULL argument");
        s != LL_OK)
        return s;
    return guarded([&] {
        const std::string report = run_command_json(command, config_json);
        char* buf = new char[report.size() + 1];
        std::memcpy(buf, report.c_str(), report.size() + 1);
        *report_json = buf;
    });
}

void ll_string_free(char* s) { delete[] s; }

}  // extern "C"
