/* C API for the Landau-Lifshitz / Schrodinger simulation core.
 *
 * All functions return ll_status; LL_OK is 0. On failure the thread-local
 * message from ll_last_error() describes the problem. Out-parameters are
 * written only on LL_OK. Handles are opaque and freed with the matching
 * *_destroy; destroy functions accept NULL.
 */
#ifndef LL_LAB_H
#define LL_LAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ll_status {
    LL_OK = 0,
    LL_ERR_INVALID_ARGUMENT = 1, /* bad parameters, inadmissible soliton, schema */
    LL_ERR_DOMAIN = 2,           /* validity condition / sphere chart violated */
    LL_ERR_RUNTIME = 3,          /* solver abort, i/o failure, internal error */
} ll_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* ll_last_error(void);

typedef struct ll_grid ll_grid;
typedef struct ll_wavefield ll_wavefield;
typedef struct ll_magnetization ll_magnetization;

/* Uniform periodic grid on [-length/2, length/2); n even, >= 8. */
ll_status ll_grid_create(int n, double length, ll_grid** out);
void ll_grid_destroy(ll_grid* grid);
int ll_grid_size(const ll_grid* grid);
double ll_grid_length(const ll_grid* grid);
/* Writes n node coordinates. */
ll_status ll_grid_nodes(const ll_grid* grid, double* out);

/* Complex wavefield from n samples (re, im arrays of length n). */
ll_status ll_wavefield_create(const ll_grid* grid, const double* re, const double* im,
                              ll_wavefield** out);
ll_status ll_wavefield_samples(const ll_wavefield* psi, double* re, double* im);
int ll_wavefield_size(const ll_wavefield* psi);
void ll_wavefield_destroy(ll_wavefield* psi);

/* Magnetization from n samples per component; must sit on the unit sphere. */
ll_status ll_magnetization_create(const ll_grid* grid, const double* m1,
                                  const double* m2, const double* m3,
                                  ll_magnetization** out);
ll_status ll_magnetization_samples(const ll_magnetization* m, double* m1, double* m2,
                                   double* m3);
int ll_magnetization_size(const ll_magnetization* m);
void ll_magnetization_destroy(ll_magnetization* m);

/* Closed-form solutions. */
ll_status ll_cs_soliton(const ll_grid* grid, double c, double omega, double t,
                        ll_wavefield** out);
ll_status ll_upsilon_eps(const ll_grid* grid, double c, double omega, double eps,
                         double t, ll_wavefield** out);
ll_status ll_first_order_correction(const ll_grid* grid, double c, double omega,
                                    ll_wavefield** out);
/* case_one != 0 selects the static family (c = omega = 0 required). */
ll_status ll_traveling_wave(const ll_grid* grid, int case_one, double lambda, double c,
                            double omega, int delta, double t, ll_magnetization** out);

/* Change of variables between the two descriptions at time t. */
ll_status ll_to_magnetization(const ll_wavefield* psi, double eps, double t,
                              ll_magnetization** out);
ll_status ll_to_wavefield(const ll_magnetization* m, double eps, double t,
                          ll_wavefield** out);

/* Norms, energies and residuals. */
ll_status ll_sobolev_norm(const ll_wavefield* psi, int s, int homogeneous, double* out);
ll_status ll_cs_invariants(const ll_wavefield* psi, double* m2_mass, double* e_cs);
ll_status ll_nls_energy(const ll_wavefield* psi, double eps, double* out);
ll_status ll_landau_lifshitz_energy(const ll_magnetization* m, double lambda1,
                                    double lambda3, double* out);
ll_status ll_tw_residual(const ll_magnetization* m, double lambda, double c,
                         double omega, int delta, double* residual_1,
                         double* residual_2);
ll_status ll_validity_margin(const ll_wavefield* psi, double eps, double* out);

/* Field snapshots (*.field, format documented in the README). */
ll_status ll_snapshot_write_wavefield(const char* path, const ll_wavefield* psi);
ll_status ll_snapshot_read_wavefield(const char* path, ll_wavefield** out);
ll_status ll_snapshot_write_magnetization(const char* path, const ll_magnetization* m);
ll_status ll_snapshot_read_magnetization(const char* path, ll_magnetization** out);

/* Coarse entry point: run a whole study from a JSON config.
 * command: simulate | soliton | converge | soliton-converge | conserve | energy.
 * On LL_OK, *report_json holds the report (free with ll_string_free); the
 * report carries a boolean "pass". Files are written when the config names
 * an output_dir. */
ll_status ll_run_command_json(const char* command, const char* config_json,
                              char** report_json);
void ll_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LL_LAB_H */
