#ifndef LLLAB_CORE_STUDIES_HPP
#define LLLAB_CORE_STUDIES_HPP

#include "dynamics.hpp"
#include "energetics.hpp"
#include "solitons.hpp"

#include <string>
#include <vector>

namespace lllab {

struct GridSpec {
    int n = 1024;
    double length = 80.0;
};

// Initial-data recipes shared by the CLI and the studies.
struct InitialData {
    std::string kind = "sech";  // sech | cs_soliton | upsilon | ll_case_i | ll_case_ii | snapshot
    double amplitude = 2.0;     // sech recipe: amplitude * sech(x)
    double c = 0.0;
    double omega = 1.0;
    double lambda = 1.0;
    int delta = 1;
    std::string path;           // snapshot recipe
};

struct StudyConfig {
    int version = 1;
    std::string study = "converge";  // converge | soliton-converge | simulate | conserve | energy
    std::string equation = "nlse";   // ll | nlse | cs
    std::vector<double> eps_list;
    double eps = 0.1;                // single-run runs (simulate nlse, energy)
    int k = 3;
    double horizon_constant = 1.0;
    double initial_gap = 0.0;        // converge: H^{k-2} offset between the two data
    GridSpec grid;
    IntegratorConfig integrator{1e-3, 0.5};
    InitialData initial;
    AnisotropyParams anisotropy{1.0, 1.0};
    std::string output_dir;
    bool write_snapshots = false;
};

StudyConfig parse_config(const std::string& path);
StudyConfig parse_config_text(const std::string& text);  // same schema, from memory
std::string config_to_json(const StudyConfig& cfg);

WaveField build_wave_initial(const InitialData& d, GridPtr grid, double eps);
Magnetization build_mag_initial(const InitialData& d, GridPtr grid);

struct ConvergenceRow {
    double eps = 0.0;
    double error = 0.0;
    double ratio = 0.0;      // error / eps
    double runtime_s = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  // sorted by decreasing eps
    double fitted_slope = 0.0;
    double slope_stderr = 0.0;
    bool pass = false;
    double reference = 0.0;   // closed-form study: H^k norm of the limit coefficient
    bool floor_flagged = false;
    std::string norm_kind;
    std::string warning;
    std::string config_json;  // resolved config for reproducibility
};

ConvergenceReport run_convergence_study(const StudyConfig& cfg);
ConvergenceReport run_soliton_convergence(double c, double omega,
                                          const std::vector<double>& eps_list, int k);

struct TwSuiteReport {
    double deviation_l2 = 0.0;
    double energy_drift = 0.0;
    bool pass = false;
    std::string config_json;
};

TwSuiteReport run_traveling_wave_suite(const SolitonParams& p, double t_end);

struct ConservationRow {
    std::string equation;
    std::string quantity;
    double drift = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ConservationReport {
    std::vector<ConservationRow> rows;
    bool pass = false;
    std::string config_json;
};

ConservationReport run_conservation_suite(const StudyConfig& cfg);

struct SimulationReport {
    std::vector<DiagnosticsRow> rows;
    RunStatus status = RunStatus::completed;
    std::string message;
    std::string final_snapshot;  // path, empty unless snapshots requested
    std::string config_json;
};

SimulationReport run_simulation(const StudyConfig& cfg);

struct SolitonReport {
    std::vector<double> x;
    std::vector<double> m1, m2, m3;
    double residual_1 = 0.0;  // traveling-wave system residuals, L^2
    double residual_2 = 0.0;
    AppendixResiduals identities{};
    bool pass = false;
    std::string config_json;
};

// Closed-form profile plus residual checks; no time stepping.
SolitonReport run_soliton_profile(const StudyConfig& cfg);

// frak_e / e_ll blocks filled according to the field kind.
EnergyReport wave_energy_report(const WaveField& psi, EpsParam eps);
EnergyReport mag_energy_report(const Magnetization& m, const AnisotropyParams& a);
std::string energy_report_to_json(const EnergyReport& rep);

// report.json + rows.csv in dir (created if missing).
void emit_report(const ConvergenceReport& rep, const std::string& dir);
void emit_report(const ConservationReport& rep, const std::string& dir);
void emit_report(const SimulationReport& rep, const std::string& dir);
void emit_report(const TwSuiteReport& rep, const std::string& dir);
void emit_report(const SolitonReport& rep, const std::string& dir);

// Coarse entry point shared by the C API and the CLI: dispatches on
// command (simulate | soliton | converge | soliton-converge | conserve |
// energy), runs the study described by the JSON config text, writes
// report.json / rows.csv when the config names an output_dir, and returns
// the report JSON. Every report carries a top-level "pass" flag.
std::string run_command_json(const std::string& command, const std::string& config_text);

ConvergenceReport read_convergence_report(const std::string& json_path);

// Worker cap: min(jobs, hardware, LL_LAB_THREADS when set).
int worker_count(int jobs);

}  // namespace lllab

#endif
