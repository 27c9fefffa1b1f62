#include "studies.hpp"

#include "snapshot.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lllab {

namespace nj = nlohmann;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config." + path + ": " + what);
}

double get_number(const nj::json& j, const std::string& path, double fallback) {
    if (!j.contains(path)) return fallback;
    if (!j.at(path).is_number()) config_error(path, "expected a number");
    return j.at(path).get<double>();
}

int get_int(const nj::json& j, const std::string& path, int fallback) {
    if (!j.contains(path)) return fallback;
    if (!j.at(path).is_number_integer()) config_error(path, "expected an integer");
    return j.at(path).get<int>();
}

std::string get_string(const nj::json& j, const std::string& path,
                       const std::string& fallback) {
    if (!j.contains(path)) return fallback;
    if (!j.at(path).is_string()) config_error(path, "expected a string");
    return j.at(path).get<std::string>();
}

bool get_bool(const nj::json& j, const std::string& path, bool fallback) {
    if (!j.contains(path)) return fallback;
    if (!j.at(path).is_boolean()) config_error(path, "expected a boolean");
    return j.at(path).get<bool>();
}

void check_eps_list(const std::vector<double>& eps_list, const std::string& path) {
    for (size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0))
            config_error(path, "entries must lie in (0, 1)");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            config_error(path, "entries must be strictly decreasing");
    }
}

Scheme parse_scheme(const std::string& s) {
    if (s == "IFRK4") return Scheme::ifrk4;
    if (s == "RK4") return Scheme::rk4;
    config_error("integrator.scheme", "expected IFRK4 or RK4, got " + s);
}

std::string scheme_name(Scheme s) { return s == Scheme::ifrk4 ? "IFRK4" : "RK4"; }

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Least-squares slope of log(error) against log(eps), with its standard error.
std::pair<double, double> fit_slope(const std::vector<ConvergenceRow>& rows) {
    const size_t n = rows.size();
    if (n < 2) throw std::runtime_error("cannot fit slope: need at least two eps values");
    double sx = 0, sy = 0;
    std::vector<double> xs(n), ys(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(rows[i].error > 0.0))
            throw std::runtime_error("cannot fit slope: non-positive error");
        xs[i] = std::log(rows[i].eps);
        ys[i] = std::log(rows[i].error);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double sse = 0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - my - slope * (xs[i] - mx);
        sse += r * r;
    }
    const double stderr_v = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
    return {slope, stderr_v};
}

void run_parallel(int jobs, const std::function<void(int)>& work) {
    const int workers = worker_count(jobs);
    if (workers <= 1) {
        for (int i = 0; i < jobs; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) work(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

GridPtr pick_grid(const GridSpec& spec) { return make_grid(spec.n, spec.length); }

nj::json rows_json(const ConvergenceReport& rep) {
    nj::json rows = nj::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"eps", r.eps},
                        {"error", r.error},
                        {"ratio", r.ratio},
                        {"runtime_s", r.runtime_s}});
    return rows;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string status_name(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::halted_validity: return "halted_validity";
        case RunStatus::halted_energy: return "halted_energy";
    }
    return "unknown";
}

}  // namespace

int worker_count(int jobs) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("LL_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) cap = std::min(cap, v);
    }
    return std::min(jobs, cap);
}

StudyConfig parse_config_text(const std::string& text) {
    nj::json j;
    try {
        j = nj::json::parse(text);
    } catch (const nj::json::exception& ex) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + ex.what());
    }
    StudyConfig cfg;
    cfg.version = get_int(j, "version", 1);
    if (cfg.version != 1) config_error("version", "unsupported schema version");
    cfg.study = get_string(j, "study", cfg.study);
    cfg.equation = get_string(j, "equation", cfg.equation);
    if (cfg.equation != "ll" && cfg.equation != "nlse" && cfg.equation != "cs")
        config_error("equation", "expected ll, nlse or cs");
    if (j.contains("eps_list")) {
        if (!j.at("eps_list").is_array()) config_error("eps_list", "expected an array");
        cfg.eps_list = j.at("eps_list").get<std::vector<double>>();
        check_eps_list(cfg.eps_list, "eps_list");
    }
    cfg.eps = get_number(j, "eps", cfg.eps);
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) config_error("eps", "must lie in (0, 1)");
    cfg.k = get_int(j, "k", cfg.k);
    if (cfg.k < 3) config_error("k", "must be >= 3");
    cfg.horizon_constant = get_number(j, "horizon_constant", cfg.horizon_constant);
    if (!(cfg.horizon_constant > 0.0)) config_error("horizon_constant", "must be positive");
    cfg.initial_gap = get_number(j, "initial_gap", 0.0);
    if (cfg.initial_gap < 0.0) config_error("initial_gap", "must be non-negative");

    if (j.contains("grid")) {
        const nj::json& g = j.at("grid");
        cfg.grid.n = get_int(g, "n", cfg.grid.n);
        cfg.grid.length = get_number(g, "length", cfg.grid.length);
        if (cfg.grid.n < 8 || cfg.grid.n % 2 != 0) config_error("grid.n", "must be even and >= 8");
        if (!(cfg.grid.length > 0.0)) config_error("grid.length", "must be positive");
    }
    if (j.contains("integrator")) {
        const nj::json& g = j.at("integrator");
        cfg.integrator.dt = get_number(g, "dt", cfg.integrator.dt);
        cfg.integrator.t_end = get_number(g, "t_end", cfg.integrator.t_end);
        cfg.integrator.scheme = parse_scheme(get_string(g, "scheme", "IFRK4"));
        cfg.integrator.snapshot_stride =
            get_int(g, "snapshot_stride", cfg.integrator.snapshot_stride);
        cfg.integrator.validity_sigma =
            get_number(g, "validity_sigma", cfg.integrator.validity_sigma);
        if (!(cfg.integrator.dt > 0.0)) config_error("integrator.dt", "must be positive");
        if (!(cfg.integrator.t_end > 0.0))
            config_error("integrator.t_end", "must be positive");
        if (cfg.integrator.snapshot_stride < 1)
            config_error("integrator.snapshot_stride", "must be a positive integer");
        if (!(cfg.integrator.validity_sigma > 0.0 && cfg.integrator.validity_sigma < 1.0))
            config_error("integrator.validity_sigma", "must lie in (0, 1)");
    }
    if (j.contains("initial")) {
        const nj::json& g = j.at("initial");
        cfg.initial.kind = get_string(g, "kind", cfg.initial.kind);
        cfg.initial.amplitude = get_number(g, "amplitude", cfg.initial.amplitude);
        cfg.initial.c = get_number(g, "c", cfg.initial.c);
        cfg.initial.omega = get_number(g, "omega", cfg.initial.omega);
        cfg.initial.lambda = get_number(g, "lambda", cfg.initial.lambda);
        cfg.initial.delta = get_int(g, "delta", cfg.initial.delta);
        cfg.initial.path = get_string(g, "path", cfg.initial.path);
        if (cfg.initial.delta != 1 && cfg.initial.delta != -1)
            config_error("initial.delta", "must be +1 or -1");
    }
    if (j.contains("anisotropy")) {
        const nj::json& g = j.at("anisotropy");
        cfg.anisotropy.lambda1 = get_number(g, "lambda1", cfg.anisotropy.lambda1);
        cfg.anisotropy.lambda3 = get_number(g, "lambda3", cfg.anisotropy.lambda3);
        if (cfg.anisotropy.lambda1 < 0.0 || cfg.anisotropy.lambda3 < 0.0)
            config_error("anisotropy", "constants must be non-negative");
    }
    cfg.output_dir = get_string(j, "output_dir", cfg.output_dir);
    cfg.write_snapshots = get_bool(j, "write_snapshots", cfg.write_snapshots);
    return cfg;
}

StudyConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_json(const StudyConfig& cfg) {
    nj::json j{
        {"version", cfg.version},
        {"study", cfg.study},
        {"equation", cfg.equation},
        {"eps_list", cfg.eps_list},
        {"eps", cfg.eps},
        {"k", cfg.k},
        {"horizon_constant", cfg.horizon_constant},
        {"initial_gap", cfg.initial_gap},
        {"grid", {{"n", cfg.grid.n}, {"length", cfg.grid.length}}},
        {"integrator",
         {{"dt", cfg.integrator.dt},
          {"t_end", cfg.integrator.t_end},
          {"scheme", scheme_name(cfg.integrator.scheme)},
          {"snapshot_stride", cfg.integrator.snapshot_stride},
          {"validity_sigma", cfg.integrator.validity_sigma}}},
        {"initial",
         {{"kind", cfg.initial.kind},
          {"amplitude", cfg.initial.amplitude},
          {"c", cfg.initial.c},
          {"omega", cfg.initial.omega},
          {"lambda", cfg.initial.lambda},
          {"delta", cfg.initial.delta},
          {"path", cfg.initial.path}}},
        {"anisotropy",
         {{"lambda1", cfg.anisotropy.lambda1}, {"lambda3", cfg.anisotropy.lambda3}}},
        {"output_dir", cfg.output_dir},
        {"write_snapshots", cfg.write_snapshots},
    };
    return j.dump(2);
}

WaveField build_wave_initial(const InitialData& d, GridPtr grid, double eps) {
    if (d.kind == "sech") {
        WaveField psi = make_wavefield(grid);
        for (size_t j = 0; j < psi.psi.size(); ++j)
            psi.psi[j] = d.amplitude / std::cosh(grid->nodes[j]);
        return psi;
    }
    if (d.kind == "cs_soliton")
        return cs_bright_soliton(CsSolitonParams{d.c, d.omega}, 0.0, grid);
    if (d.kind == "upsilon") return upsilon_eps(d.c, d.omega, make_eps(eps), 0.0, grid);
    if (d.kind == "snapshot") {
        WaveField psi = read_wavefield_snapshot(d.path);
        if (psi.grid->n != grid->n || psi.grid->length != grid->length)
            throw std::invalid_argument("snapshot grid does not match the configured grid");
        return psi;
    }
    throw std::invalid_argument("config.initial.kind: unknown wavefield recipe " + d.kind);
}

Magnetization build_mag_initial(const InitialData& d, GridPtr grid) {
    if (d.kind == "ll_case_i") return ll_soliton_case_i(d.lambda, d.delta, grid);
    if (d.kind == "ll_case_ii")
        return ll_soliton_case_ii(SolitonParams{d.lambda, d.c, d.omega, d.delta}, grid);
    if (d.kind == "snapshot") {
        Magnetization m = read_magnetization_snapshot(d.path);
        if (m.grid->n != grid->n || m.grid->length != grid->length)
            throw std::invalid_argument("snapshot grid does not match the configured grid");
        return m;
    }
    throw std::invalid_argument("config.initial.kind: unknown magnetization recipe " + d.kind);
}

ConvergenceReport run_convergence_study(const StudyConfig& cfg) {
    if (cfg.eps_list.size() < 2)
        throw std::runtime_error("cannot fit slope: eps_list needs at least two entries");
    check_eps_list(cfg.eps_list, "eps_list");
    GridPtr grid = pick_grid(cfg.grid);
    const WaveField psi0 = build_wave_initial(cfg.initial, grid, cfg.eps_list.front());

    WaveField psi_eps0 = psi0;
    if (cfg.initial_gap > 0.0) {
        // Fixed eps-independent offset; errors then floor at its norm.
        for (size_t j = 0; j < psi_eps0.psi.size(); ++j)
            psi_eps0.psi[j] += cfg.initial_gap / std::cosh(grid->nodes[j]);
    }

    IntegratorConfig integ = cfg.integrator;
    integ.snapshot_stride = 1 << 20;  // endpoints only; diagnostics still recorded
    const WaveTrajectory cs_traj = evolve_cs(psi0, integ);
    if (cs_traj.status != RunStatus::completed)
        throw std::runtime_error("reference run aborted: " + cs_traj.message);
    const WaveField& psi_cs = cs_traj.states.back();

    ConvergenceReport rep;
    rep.norm_kind = "H" + std::to_string(cfg.k - 2);
    rep.config_json = config_to_json(cfg);
    rep.rows.resize(cfg.eps_list.size());

    std::string warning;
    std::mutex warn_mutex;
    run_parallel(static_cast<int>(cfg.eps_list.size()), [&](int i) {
        const double e = cfg.eps_list[static_cast<size_t>(i)];
        const EpsParam eps = make_eps(e);
        const auto t0 = std::chrono::steady_clock::now();
        const KEpsReport horizon =
            k_eps_0(psi0, psi_eps0, eps, cfg.k, cfg.horizon_constant);
        if (!horizon.unbounded && integ.t_end > horizon.t_eps_lower) {
            std::lock_guard<std::mutex> lock(warn_mutex);
            if (warning.empty())
                warning = "t_end " + std::to_string(integ.t_end) +
                          " exceeds the guaranteed horizon " +
                          std::to_string(horizon.t_eps_lower) +
                          " computed with the configured constant; the rate criterion "
                          "is still evaluated";
        }
        const WaveTrajectory traj = evolve_nls_eps(psi_eps0, eps, integ);
        if (traj.status != RunStatus::completed)
            throw std::runtime_error("run at eps = " + std::to_string(e) +
                                     " aborted: " + traj.message);
        const WaveField& psi_e = traj.states.back();
        ComplexField diff = make_complex_field(grid);
        for (size_t j = 0; j < diff.values.size(); ++j)
            diff.values[j] = psi_e.psi[j] - psi_cs.psi[j];
        ConvergenceRow row;
        row.eps = e;
        row.error = sobolev_norm(diff, cfg.k - 2, false);
        row.ratio = row.error / e;
        row.runtime_s = elapsed_s(t0);
        rep.rows[static_cast<size_t>(i)] = row;
    });
    rep.warning = warning;

    const auto [slope, sd] = fit_slope(rep.rows);
    rep.fitted_slope = slope;
    rep.slope_stderr = sd;
    rep.pass = slope >= 0.85 && slope <= 1.15;
    const size_t last = rep.rows.size() - 1;
    if (rep.rows[last].error > 0.0 &&
        std::abs(rep.rows[last].error - rep.rows[last - 1].error) <
            0.1 * rep.rows[last - 1].error) {
        rep.floor_flagged = true;
        rep.pass = false;
    }
    return rep;
}

ConvergenceReport run_soliton_convergence(double c, double omega,
                                          const std::vector<double>& eps_list, int k) {
    const CsSolitonParams cs{c, omega};
    require_admissible(cs);
    if (c < 0.0) throw std::invalid_argument("soliton convergence requires c >= 0");
    if (eps_list.empty()) throw std::runtime_error("cannot fit slope: empty eps_list");
    check_eps_list(eps_list, "eps_list");
    for (double e : eps_list)
        if (omega > 0.0 && !(e < 1.0 / omega))
            throw std::invalid_argument("eps must stay below 1/omega");

    const double half = std::max(required_half_width(cs), upsilon_required_half_width(c, omega));
    const double length = 2.0 * std::ceil(half + 4.0);
    GridPtr grid = make_grid(2048, length);

    const WaveField w = first_order_correction(c, omega, grid);
    ConvergenceReport rep;
    rep.reference = sobolev_norm(wavefield_as_field(w), k, false);
    rep.norm_kind = "H" + std::to_string(k);

    // Closed-form sampling only; no time stepping anywhere in this study.
    const WaveField limit = cs_bright_soliton(cs, 0.0, grid);
    for (double e : eps_list) {
        const auto t0 = std::chrono::steady_clock::now();
        const WaveField ups = upsilon_eps(c, omega, make_eps(e), 0.0, grid);
        ComplexField diff = make_complex_field(grid);
        for (size_t j = 0; j < diff.values.size(); ++j)
            diff.values[j] = ups.psi[j] - limit.psi[j];
        ConvergenceRow row;
        row.eps = e;
        row.error = sobolev_norm(diff, k, false);
        row.ratio = row.error / e;
        row.runtime_s = elapsed_s(t0);
        rep.rows.push_back(row);
    }
    if (rep.rows.size() >= 2) {
        const auto [slope, sd] = fit_slope(rep.rows);
        rep.fitted_slope = slope;
        rep.slope_stderr = sd;
    }
    const double ratio_last = rep.rows.back().ratio;
    rep.pass = rep.reference > 0.0 &&
               std::abs(ratio_last - rep.reference) < 0.05 * rep.reference;

    nj::json cfgj{{"study", "soliton-converge"}, {"c", c},  {"omega", omega},
                  {"k", k},                      {"grid", {{"n", grid->n}, {"length", length}}},
                  {"eps_list", eps_list}};
    rep.config_json = cfgj.dump(2);
    return rep;
}

TwSuiteReport run_traveling_wave_suite(const SolitonParams& p, double t_end) {
    const SolitonCase which =
        (p.c == 0.0 && p.omega == 0.0) ? SolitonCase::case_i : SolitonCase::case_ii;
    require_admissible(which, p);

    const double half = required_half_width(which, p) + std::abs(p.c) * t_end + 4.0;
    const double length = 2.0 * std::ceil(half);
    int n = 512;
    while (length / n > 0.1) n *= 2;
    GridPtr grid = make_grid(n, length);

    const AnisotropyParams a{p.lambda, p.lambda};
    const Magnetization m0 = ll_traveling_wave(which, p, 0.0, grid);
    IntegratorConfig cfg;
    cfg.scheme = Scheme::rk4;
    cfg.t_end = t_end;
    cfg.dt = 0.4 * stability_dt_ll(*grid, a);
    cfg.snapshot_stride = 1 << 20;
    const MagTrajectory traj = evolve_ll(m0, a, cfg);
    if (traj.status != RunStatus::completed)
        throw std::runtime_error("traveling-wave run aborted: " + traj.message);

    const Magnetization exact = ll_traveling_wave(which, p, t_end, grid);
    const Magnetization& got = traj.states.back();
    std::vector<double> density(m0.m1.size());
    for (size_t j = 0; j < density.size(); ++j) {
        const double d1 = got.m1[j] - exact.m1[j];
        const double d2 = got.m2[j] - exact.m2[j];
        const double d3 = got.m3[j] - exact.m3[j];
        density[j] = d1 * d1 + d2 * d2 + d3 * d3;
    }
    TwSuiteReport rep;
    rep.deviation_l2 = std::sqrt(quadrature(*grid, density));
    for (const auto& row : traj.rows) rep.energy_drift = std::max(rep.energy_drift, row.energy_drift);
    rep.pass = rep.deviation_l2 < 1e-5 && rep.energy_drift < 1e-3;
    nj::json cfgj{{"study", "tw"},       {"lambda", p.lambda}, {"c", p.c},
                  {"omega", p.omega},    {"delta", p.delta},   {"t_end", t_end},
                  {"grid", {{"n", n}, {"length", length}}},    {"dt", cfg.dt}};
    rep.config_json = cfgj.dump(2);
    return rep;
}

ConservationReport run_conservation_suite(const StudyConfig& cfg) {
    ConservationReport rep;
    rep.config_json = config_to_json(cfg);
    IntegratorConfig integ = cfg.integrator;

    auto add = [&rep](const std::string& eq, const std::string& what, double drift,
                      double threshold) {
        rep.rows.push_back({eq, what, drift, threshold, drift < threshold});
    };

    if (cfg.equation == "cs") {
        GridPtr grid = pick_grid(cfg.grid);
        const WaveField psi0 = build_wave_initial(cfg.initial, grid, cfg.eps);
        const WaveTrajectory traj = evolve_cs(psi0, integ);
        double e_drift = 0.0, m_drift = 0.0;
        for (const auto& r : traj.rows) {
            e_drift = std::max(e_drift, r.energy_drift);
            m_drift = std::max(m_drift, r.mass_drift);
        }
        add("cs", "M2", m_drift, 1e-8);
        add("cs", "E_CS", e_drift, 1e-6);
    } else if (cfg.equation == "nlse") {
        GridPtr grid = pick_grid(cfg.grid);
        const WaveField psi0 = build_wave_initial(cfg.initial, grid, cfg.eps);
        const WaveTrajectory traj = evolve_nls_eps(psi0, make_eps(cfg.eps), integ);
        double e_drift = 0.0;
        for (const auto& r : traj.rows) e_drift = std::max(e_drift, r.energy_drift);
        add("nlse", "frak_E_eps", e_drift, 1e-6);
    } else {
        GridPtr grid = pick_grid(cfg.grid);
        const Magnetization m0 = build_mag_initial(cfg.initial, grid);
        integ.scheme = Scheme::rk4;
        const MagTrajectory traj = evolve_ll(m0, cfg.anisotropy, integ);
        double e_drift = 0.0;
        for (const auto& r : traj.rows) e_drift = std::max(e_drift, r.energy_drift);
        add("ll", "E_LL", e_drift, 1e-3);
    }
    rep.pass = true;
    for (const auto& r : rep.rows) rep.pass = rep.pass && r.pass;
    return rep;
}

SimulationReport run_simulation(const StudyConfig& cfg) {
    SimulationReport rep;
    rep.config_json = config_to_json(cfg);
    const std::string out_dir = cfg.output_dir.empty() ? "." : cfg.output_dir;

    if (cfg.equation == "ll") {
        GridPtr grid = pick_grid(cfg.grid);
        const Magnetization m0 = build_mag_initial(cfg.initial, grid);
        IntegratorConfig integ = cfg.integrator;
        integ.scheme = Scheme::rk4;
        const MagTrajectory traj = evolve_ll(m0, cfg.anisotropy, integ);
        rep.rows = traj.rows;
        rep.status = traj.status;
        rep.message = traj.message;
        if (cfg.write_snapshots) {
            std::filesystem::create_directories(out_dir);
            rep.final_snapshot = out_dir + "/final.field";
            write_snapshot(rep.final_snapshot, traj.states.back());
        }
        return rep;
    }

    GridPtr grid = pick_grid(cfg.grid);
    const WaveField psi0 = build_wave_initial(cfg.initial, grid, cfg.eps);
    const WaveTrajectory traj = cfg.equation == "cs"
                                    ? evolve_cs(psi0, cfg.integrator)
                                    : evolve_nls_eps(psi0, make_eps(cfg.eps), cfg.integrator);
    rep.rows = traj.rows;
    rep.status = traj.status;
    rep.message = traj.message;
    if (cfg.write_snapshots) {
        std::filesystem::create_directories(out_dir);
        rep.final_snapshot = out_dir + "/final.field";
        write_snapshot(rep.final_snapshot, traj.states.back());
    }
    return rep;
}

EnergyReport wave_energy_report(const WaveField& psi, EpsParam eps) {
    EnergyReport rep;
    const WaveField dtpsi = nls_eps_rhs(psi, eps);
    rep.frak_e = nls_energy_eps(psi, eps);
    for (int ell = 2; ell <= 5; ++ell)
        rep.frak_e_orders.push_back(frak_e_k(psi, dtpsi, eps, ell));
    const auto [m2, ecs] = cs_invariants(psi);
    rep.m2_mass = m2;
    rep.e_cs = ecs;
    const AnisotropyParams a{1.0 / eps.eps, 1.0 / eps.eps};
    const Magnetization m = magnetization_from_wavefield(psi, eps, 0.0);
    const TangentField dtm = ll_rhs(m, a);
    rep.e_ll = landau_lifshitz_energy(m, a);
    for (int ell = 2; ell <= 5; ++ell) rep.e_ll_orders.push_back(e_ll_k(m, dtm, ell, a));
    return rep;
}

EnergyReport mag_energy_report(const Magnetization& m, const AnisotropyParams& a) {
    EnergyReport rep;
    const TangentField dtm = ll_rhs(m, a);
    rep.e_ll = landau_lifshitz_energy(m, a);
    for (int ell = 2; ell <= 5; ++ell) rep.e_ll_orders.push_back(e_ll_k(m, dtm, ell, a));
    return rep;
}

std::string energy_report_to_json(const EnergyReport& rep) {
    nj::json j{{"e_ll", rep.e_ll},         {"e_ll_orders", rep.e_ll_orders},
               {"frak_e", rep.frak_e},     {"frak_e_orders", rep.frak_e_orders},
               {"m2_mass", rep.m2_mass},   {"e_cs", rep.e_cs}};
    return j.dump(2);
}

namespace {

nj::json report_json(const ConvergenceReport& rep) {
    return nj::json{{"kind", "convergence"},
                    {"fitted_slope", rep.fitted_slope},
                    {"slope_stderr", rep.slope_stderr},
                    {"pass", rep.pass},
                    {"reference", rep.reference},
                    {"floor_flagged", rep.floor_flagged},
                    {"norm_kind", rep.norm_kind},
                    {"warning", rep.warning},
                    {"rows", rows_json(rep)},
                    {"config", nj::json::parse(rep.config_json)}};
}

nj::json report_json(const ConservationReport& rep) {
    nj::json rows = nj::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"equation", r.equation},
                        {"quantity", r.quantity},
                        {"drift", r.drift},
                        {"threshold", r.threshold},
                        {"pass", r.pass}});
    return nj::json{{"kind", "conservation"},
                    {"pass", rep.pass},
                    {"rows", rows},
                    {"config", nj::json::parse(rep.config_json)}};
}

nj::json report_json(const SimulationReport& rep) {
    return nj::json{{"kind", "simulation"},
                    {"status", status_name(rep.status)},
                    {"pass", rep.status == RunStatus::completed},
                    {"message", rep.message},
                    {"final_snapshot", rep.final_snapshot},
                    {"config", nj::json::parse(rep.config_json)}};
}

nj::json report_json(const TwSuiteReport& rep) {
    return nj::json{{"kind", "traveling_wave"},
                    {"deviation_l2", rep.deviation_l2},
                    {"energy_drift", rep.energy_drift},
                    {"pass", rep.pass},
                    {"config", nj::json::parse(rep.config_json)}};
}

nj::json report_json(const SolitonReport& rep) {
    return nj::json{{"kind", "soliton"},
                    {"residual_1", rep.residual_1},
                    {"residual_2", rep.residual_2},
                    {"derivative_identity", rep.identities.derivative_identity},
                    {"momentum_identity", rep.identities.momentum_identity},
                    {"v2_derivative_identity", rep.identities.v2_derivative_identity},
                    {"center_value_gap", rep.identities.center_value_gap},
                    {"pass", rep.pass},
                    {"config", nj::json::parse(rep.config_json)}};
}

}  // namespace

void emit_report(const ConvergenceReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir + "/report.json", report_json(rep).dump(2) + "\n");
    std::ostringstream csv;
    csv << "eps,error,ratio,runtime_s\n";
    csv.precision(17);
    for (const auto& r : rep.rows)
        csv << r.eps << ',' << r.error << ',' << r.ratio << ',' << r.runtime_s << '\n';
    write_text(dir + "/rows.csv", csv.str());
}

void emit_report(const ConservationReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir + "/report.json", report_json(rep).dump(2) + "\n");
    std::ostringstream csv;
    csv << "equation,quantity,drift,threshold,pass\n";
    csv.precision(17);
    for (const auto& r : rep.rows)
        csv << r.equation << ',' << r.quantity << ',' << r.drift << ',' << r.threshold
            << ',' << (r.pass ? 1 : 0) << '\n';
    write_text(dir + "/rows.csv", csv.str());
}

void emit_report(const SimulationReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir + "/report.json", report_json(rep).dump(2) + "\n");
    std::ostringstream csv;
    csv << "t,energy,energy_drift,mass,mass_drift,margin\n";
    csv.precision(17);
    for (const auto& r : rep.rows)
        csv << r.t << ',' << r.energy << ',' << r.energy_drift << ',' << r.mass << ','
            << r.mass_drift << ',' << r.margin << '\n';
    write_text(dir + "/rows.csv", csv.str());
}

void emit_report(const TwSuiteReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir + "/report.json", report_json(rep).dump(2) + "\n");
    std::ostringstream csv;
    csv << "deviation_l2,energy_drift,pass\n";
    csv.precision(17);
    csv << rep.deviation_l2 << ',' << rep.energy_drift << ',' << (rep.pass ? 1 : 0) << '\n';
    write_text(dir + "/rows.csv", csv.str());
}

SolitonReport run_soliton_profile(const StudyConfig& cfg) {
    const InitialData& d = cfg.initial;
    const SolitonCase which =
        d.kind == "ll_case_i" ? SolitonCase::case_i : SolitonCase::case_ii;
    if (d.kind != "ll_case_i" && d.kind != "ll_case_ii")
        throw std::invalid_argument(
            "config.initial.kind: soliton study needs ll_case_i or ll_case_ii");
    // the static family is parametrized by (lambda, delta) alone
    const SolitonParams p{d.lambda, which == SolitonCase::case_i ? 0.0 : d.c,
                          which == SolitonCase::case_i ? 0.0 : d.omega, d.delta};
    require_admissible(which, p);

    GridSpec spec = cfg.grid;
    const double needed = 2.0 * std::ceil(required_half_width(which, p) + 4.0);
    if (spec.length < needed) spec.length = needed;
    GridPtr grid = pick_grid(spec);

    const Magnetization m = ll_traveling_wave(which, p, 0.0, grid);
    SolitonReport rep;
    rep.x = grid->nodes;
    rep.m1 = m.m1;
    rep.m2 = m.m2;
    rep.m3 = m.m3;
    const auto [r1, r2] = tw_residual(m, p);
    rep.residual_1 = r1;
    rep.residual_2 = r2;
    rep.identities = appendix_identity_residuals(m, p);
    rep.pass = r1 < 1e-8 && r2 < 1e-8 && rep.identities.derivative_identity < 1e-8 &&
               rep.identities.momentum_identity < 1e-8 &&
               rep.identities.v2_derivative_identity < 1e-8 &&
               rep.identities.center_value_gap < 1e-10;
    StudyConfig resolved = cfg;
    resolved.grid = spec;
    rep.config_json = config_to_json(resolved);
    return rep;
}

void emit_report(const SolitonReport& rep, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir + "/report.json", report_json(rep).dump(2) + "\n");
    std::ostringstream csv;
    csv << "x,m1,m2,m3\n";
    csv.precision(17);
    for (size_t j = 0; j < rep.x.size(); ++j)
        csv << rep.x[j] << ',' << rep.m1[j] << ',' << rep.m2[j] << ',' << rep.m3[j] << '\n';
    write_text(dir + "/rows.csv", csv.str());
}

std::string run_command_json(const std::string& command, const std::string& config_text) {
    const StudyConfig cfg = parse_config_text(config_text);
    const bool emit = !cfg.output_dir.empty();
    if (command == "simulate") {
        const SimulationReport rep = run_simulation(cfg);
        if (emit) emit_report(rep, cfg.output_dir);
        return report_json(rep).dump(2);
    }
    if (command == "soliton") {
        const SolitonReport rep = run_soliton_profile(cfg);
        if (emit) emit_report(rep, cfg.output_dir);
        return report_json(rep).dump(2);
    }
    if (command == "converge") {
        const ConvergenceReport rep = run_convergence_study(cfg);
        if (emit) emit_report(rep, cfg.output_dir);
        return report_json(rep).dump(2);
    }
    if (command == "soliton-converge") {
        ConvergenceReport rep =
            run_soliton_convergence(cfg.initial.c, cfg.initial.omega, cfg.eps_list, cfg.k);
        if (emit) emit_report(rep, cfg.output_dir);
        return report_json(rep).dump(2);
    }
    if (command == "conserve") {
        const ConservationReport rep = run_conservation_suite(cfg);
        if (emit) emit_report(rep, cfg.output_dir);
        return report_json(rep).dump(2);
    }
    if (command == "energy") {
        EnergyReport rep;
        if (cfg.equation == "ll") {
            GridPtr grid = pick_grid(cfg.grid);
            rep = mag_energy_report(build_mag_initial(cfg.initial, grid), cfg.anisotropy);
        } else {
            GridPtr grid = pick_grid(cfg.grid);
            rep = wave_energy_report(build_wave_initial(cfg.initial, grid, cfg.eps),
                                     make_eps(cfg.eps));
        }
        nj::json j = nj::json::parse(energy_report_to_json(rep));
        j["kind"] = "energy";
        j["pass"] = true;
        j["config"] = nj::json::parse(config_to_json(cfg));
        if (emit) {
            std::filesystem::create_directories(cfg.output_dir);
            write_text(cfg.output_dir + "/report.json", j.dump(2) + "\n");
        }
        return j.dump(2);
    }
    throw std::invalid_argument("unknown command " + command);
}

ConvergenceReport read_convergence_report(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("cannot read " + json_path);
    nj::json j;
    in >> j;
    ConvergenceReport rep;
    rep.fitted_slope = j.at("fitted_slope").get<double>();
    rep.slope_stderr = j.at("slope_stderr").get<double>();
    rep.pass = j.at("pass").get<bool>();
    rep.reference = j.at("reference").get<double>();
    rep.floor_flagged = j.at("floor_flagged").get<bool>();
    rep.norm_kind = j.at("norm_kind").get<std::string>();
    rep.warning = j.at("warning").get<std::string>();
    for (const auto& r : j.at("rows"))
        rep.rows.push_back({r.at("eps").get<double>(), r.at("error").get<double>(),
                            r.at("ratio").get<double>(), r.at("runtime_s").get<double>()});
    rep.config_json = j.at("config").dump(2);
    return rep;
}

}  // namespace lllab
