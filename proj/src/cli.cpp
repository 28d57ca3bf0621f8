#include "qubath/cli.hpp"

#include "qubath/csv.hpp"
#include "qubath/experiments.hpp"
#include "qubath/operators.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace qubath {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
    std::string out_dir = ".";
    int n_max_override = 0;
    bool dh_full_rate = false;
    std::string method_override;
    double rtol_override = 0.0;
    double atol_override = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out_dir, "Output directory for CSV files");
        cmd->add_option("--n-max", n_max_override, "Override the Fock truncation");
        cmd->add_flag("--dh-full-rate", dh_full_rate,
                      "Disable the half-rate convention for the depolarizing heat bath");
        cmd->add_option("--method", method_override, "Integrator: rk45|rk4|expm")
            ->check(CLI::IsMember({"rk45", "rk4", "expm"}));
        cmd->add_option("--rtol", rtol_override, "Relative tolerance");
        cmd->add_option("--atol", atol_override, "Absolute tolerance");
    }

    void apply(Scenario& s) const {
        if (n_max_override > 0) s.cfg.n_max = n_max_override;
        if (dh_full_rate) s.cfg.dh_half_rate = false;
        if (method_override == "rk45") s.method = Method::RK45Adaptive;
        else if (method_override == "rk4") s.method = Method::RK4Fixed;
        else if (method_override == "expm") s.method = Method::ExpmOracle;
        if (rtol_override > 0.0) s.rtol = rtol_override;
        if (atol_override > 0.0) s.atol = atol_override;
    }

    std::string path(const std::string& file) const {
        fs::create_directories(out_dir);
        return (fs::path(out_dir) / file).string();
    }
};

RunConfig run_config_of(const Scenario& s) {
    RunConfig c;
    c.name = s.name;
    c.model = s.cfg;
    c.initial_qubit = s.initial_qubit;
    c.t_max = s.t_max;
    c.n_samples = s.n_samples;
    c.method = s.method;
    c.rtol = s.rtol;
    c.atol = s.atol;
    c.dt = s.dt;
    return c;
}

void report_warnings(const ModelConfig& cfg) {
    for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << "\n";
}

void run_and_write(const Scenario& s, const CommonOptions& common,
                   const KeyValues& refs = {}) {
    report_warnings(s.cfg);
    const Trajectory traj = run_scenario(s);
    const std::string file = common.path(s.name + ".csv");
    write_trajectory_csv(traj, run_config_of(s), file, refs);
    const auto& last = traj.records.back();
    std::printf("%-34s pop=%.6f coherence=%.6f trace_err=%.2e -> %s\n", s.name.c_str(),
                last.pop_excited, last.coherence, last.trace_error, file.c_str());
    double top = 0.0, min_eig = 0.0;
    for (const auto& r : traj.records) {
        top = std::max(top, r.top_fock_population);
        min_eig = std::min(min_eig, r.min_eigenvalue);
    }
    if (top > 1e-6)
        std::cerr << "warning: " << s.name
                  << ": population near the Fock truncation edge reached "
                  << format_double(top) << "; consider a larger --n-max\n";
    // Negative eigenvalues are reported, never clamped; the quadratic-friction
    // model is allowed to dip below zero transiently.
    if (min_eig < -1e-8)
        std::cerr << "note: " << s.name << ": state eigenvalue reached "
                  << format_double(min_eig) << "\n";
}

int cmd_evolve(const std::string& config_path, const CommonOptions& common) {
    RunConfig cfg = RunConfig::from_json_file(config_path);
    Scenario s = cfg.scenario();
    common.apply(s);
    s.cfg.validate();
    run_and_write(s, common);
    return 0;
}

int cmd_equilibrate(const CommonOptions& common, const std::string& prefix) {
    EquilibrationParams params;
    if (common.n_max_override > 0) params.n_max = common.n_max_override;
    if (common.rtol_override > 0) params.rtol = common.rtol_override;
    if (common.atol_override > 0) params.atol = common.atol_override;

    const EquilibrationResult result = run_equilibration(params);
    write_equilibration_csv(result.times, params.kappa, result.theory,
                            common.path(prefix + "_theory.csv"));

    for (const auto& [kind, model] : result.models) {
        Scenario s;  // echoes the parameters of the corresponding run
        s.name = prefix + "_" + to_string(kind);
        s.cfg.dissipator = kind;
        s.cfg.g = 0.0;
        s.cfg.kappa = params.kappa;
        s.cfg.nbar = params.nbar_bath;
        s.cfg.n_max = params.n_max;
        s.cfg.dh_half_rate = false;
        s.t_max = params.kappa_t_max / params.kappa;
        s.n_samples = params.n_samples;
        s.rtol = params.rtol;
        s.atol = params.atol;

        std::ofstream out(common.path(s.name + ".csv"));
        for (const auto& [k, v] : run_config_of(s).to_key_values())
            out << "# " << k << "=" << v << "\n";
        out << "# ref_nbar_start=" << format_double(params.nbar_start) << "\n";
        out << "# ref_fitted_rate=" << format_double(model.fitted_rate) << "\n";
        out << "t,kappa_t,nbar_t,nbar_theory,residual\n";
        for (size_t i = 0; i < result.times.size(); ++i)
            out << format_double(result.times[i]) << ','
                << format_double(params.kappa * result.times[i]) << ','
                << format_double(model.nbar[i]) << ',' << format_double(result.theory[i])
                << ',' << format_double(model.nbar[i] - result.theory[i]) << '\n';

        std::printf("%-22s fitted rate %.6f (nominal %.6f)  max residual %.3e  "
                    "sign changes %d\n",
                    to_string(kind).c_str(), model.fitted_rate, params.kappa,
                    model.max_residual, model.residual_sign_changes);
    }
    return 0;
}

// Figure presets are code constants so regression runs cannot drift.
int cmd_figure(int which, const CommonOptions& common) {
    const double g = 0.1;
    auto scenario = [&](const std::string& name, Coupling coupling, double gval,
                        double detuning_over_g, double nbar, double kappa_over_g,
                        DissipatorKind diss, double rate_scale, InitialQubit init,
                        double gt_max, int n_max) {
        Scenario s;
        s.name = name;
        s.cfg.coupling = coupling;
        s.cfg.dissipator = diss;
        s.cfg.delta = 1.0 + detuning_over_g * gval;
        s.cfg.g = gval;
        s.cfg.kappa = kappa_over_g * gval * rate_scale;
        s.cfg.nbar = nbar;
        s.cfg.n_max = n_max;
        s.cfg.dh_half_rate = false;  // rate_scale already states the convention
        s.initial_qubit = init;
        s.t_max = gt_max / gval;
        s.n_samples = 601;
        common.apply(s);
        return s;
    };
    const double dh_scale = common.dh_full_rate ? 1.0 : 0.5;
    auto scale_of = [&](DissipatorKind k) {
        return k == DissipatorKind::DepolarizingHeatBath ? dh_scale : 1.0;
    };
    auto label = [&](DissipatorKind k) { return to_string(k); };
    auto kg_tag = [](double kog) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%g", kog);
        return std::string(buf);
    };

    switch (which) {
        case 1: return cmd_equilibrate(common, "fig1");
        case 2:
        case 3: {
            const InitialQubit init =
                which == 2 ? InitialQubit::Excited : InitialQubit::SigmaXEigen;
            const std::string fig = which == 2 ? "fig2" : "fig3";
            for (auto [panel, dog] : {std::pair{"a", 0.8}, std::pair{"b", 0.1}})
                for (double kog : {1.0, 2.0, 10.0})
                    for (auto diss : {DissipatorKind::QuantumOptical,
                                      DissipatorKind::DepolarizingHeatBath}) {
                        const std::string name = fig + "_" + panel + "_" + label(diss) +
                                                 "_kg" + kg_tag(kog);
                        run_and_write(scenario(name, Coupling::JaynesCummings, g, dog, 0.0,
                                               kog, diss, scale_of(diss), init, 30.0, 40),
                                      common);
                    }
            return 0;
        }
        case 4: {
            const KeyValues refs = {
                {"pop_equilibrium", format_double(equilibrium_population(1.0 + 0.1 * g, 1.0))}};
            for (double kog : {1.0, 2.0, 10.0})
                for (auto diss :
                     {DissipatorKind::QuantumOptical, DissipatorKind::CaldeiraLeggett,
                      DissipatorKind::DepolarizingHeatBath}) {
                    const std::string name = "fig4_" + label(diss) + "_kg" + kg_tag(kog);
                    run_and_write(scenario(name, Coupling::JaynesCummings, g, 0.1, 1.0, kog,
                                           diss, scale_of(diss), InitialQubit::Excited, 30.0,
                                           40),
                                  common, refs);
                }
            return 0;
        }
        case 5: {
            for (auto [panel, dog] : {std::pair{"a", 0.8}, std::pair{"b", 0.1}})
                for (double kog : {1.0, 10.0, 20.0, 40.0})
                    for (auto diss : {DissipatorKind::QuantumOptical,
                                      DissipatorKind::DepolarizingHeatBath}) {
                        const std::string name = std::string("fig5_") + panel + "_" +
                                                 label(diss) + "_kg" + kg_tag(kog);
                        run_and_write(
                            scenario(name, Coupling::JaynesCummings, g, dog, 1.0, kog, diss,
                                     scale_of(diss), InitialQubit::SigmaXEigen, 30.0, 40),
                            common);
                    }
            return 0;
        }
        case 6: {
            struct Panel {
                const char* tag;
                double g, nbar;
                int n_max;
            };
            // The hottest panel needs the larger basis: at nbar = 3 the
            // truncation monitor trips for n_max = 40.
            const Panel panels[] = {{"a", 0.1, 1.0, 40}, {"b", 0.2, 1.0, 40},
                                    {"c", 0.2, 3.0, 60}};
            for (const auto& panel : panels)
                for (double kog : {1.0, 10.0, 20.0, 40.0})
                    for (auto diss : {DissipatorKind::QuantumOptical,
                                      DissipatorKind::DepolarizingHeatBath}) {
                        const std::string name = std::string("fig6_") + panel.tag + "_" +
                                                 label(diss) + "_kg" + kg_tag(kog);
                        run_and_write(scenario(name, Coupling::Dephasing, panel.g, 0.1,
                                               panel.nbar, kog, diss, scale_of(diss),
                                               InitialQubit::SigmaXEigen, 15.0, panel.n_max),
                                      common);
                    }
            return 0;
        }
        default: throw std::invalid_argument("figure: must be 1..6");
    }
}

int cmd_sweep(const CommonOptions& common, const std::string& coupling,
              const std::string& observable, std::vector<double> kappa_over_g, double gval,
              double detuning_over_g, double nbar, double gt_max, bool fit_rate,
              int n_threads) {
    StudyParams params;
    params.coupling = coupling == "dephasing" ? Coupling::Dephasing : Coupling::JaynesCummings;
    params.observable = observable == "coherence" ? QubitObservable::Coherence
                                                  : QubitObservable::Population;
    if (!kappa_over_g.empty()) params.kappa_over_g = std::move(kappa_over_g);
    params.g = gval;
    params.detuning_over_g = detuning_over_g;
    params.nbar = nbar;
    params.gt_max = gt_max;
    params.initial_qubit = params.observable == QubitObservable::Coherence
                               ? InitialQubit::SigmaXEigen
                               : InitialQubit::Excited;
    params.n_threads = n_threads;
    if (common.n_max_override > 0) params.n_max = common.n_max_override;
    if (common.rtol_override > 0) params.rtol = common.rtol_override;
    if (common.atol_override > 0) params.atol = common.atol_override;
    params.dh_rate_scale = common.dh_full_rate ? 1.0 : 0.5;

    const auto reports = convergence_study(params);
    KeyValues meta = {
        {"coupling", to_string(params.coupling)},
        {"observable", to_string(params.observable)},
        {"g", format_double(params.g)},
        {"detuning_over_g", format_double(params.detuning_over_g)},
        {"nbar", format_double(params.nbar)},
        {"n_max", std::to_string(params.n_max)},
        {"gt_max", format_double(params.gt_max)},
        {"dh_rate_scale", format_double(params.dh_rate_scale)},
    };
    write_divergence_csv(reports, meta, common.path("sweep_divergence.csv"));
    for (const auto& r : reports)
        std::printf("kappa/g = %6g   sup-norm %s divergence = %.6e\n", r.kappa_over_g,
                    to_string(r.observable).c_str(), r.sup_norm);
    std::printf("monotone decrease: %s\n", strictly_decreasing(reports) ? "yes" : "no");

    if (fit_rate) {
        const auto fit = best_fit_dh_rate(params, params.kappa_over_g.back());
        std::printf("best-fit DH rate ratio at kappa/g = %g: r* = %.3f (sup-norm %.3e)\n",
                    params.kappa_over_g.back(), fit.best_ratio, fit.best_sup_norm);
    }
    return 0;
}

int cmd_oracle_check(const CommonOptions& common, unsigned seed, double t_max) {
    int n_max = 3;
    if (common.n_max_override > 0) n_max = common.n_max_override;
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;

    auto random_state = [&](int dim) {
        Matrix a(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
        Matrix rho = a * a.adjoint();
        rho /= rho.trace();
        return rho;
    };

    double worst = 0.0;
    for (auto coupling : {Coupling::JaynesCummings, Coupling::Dephasing})
        for (auto diss : {DissipatorKind::QuantumOptical, DissipatorKind::CaldeiraLeggett,
                          DissipatorKind::DepolarizingHeatBath}) {
            ModelConfig cfg;
            cfg.coupling = coupling;
            cfg.dissipator = diss;
            cfg.delta = 1.05;
            cfg.g = 0.1;
            cfg.kappa = 0.2;
            cfg.nbar = 1.0;
            cfg.n_max = n_max;

            const Model model(cfg);
            const Matrix rho0 = random_state(cfg.dims().total_dim());
            IntegratorSpec spec;
            spec.rtol = common.rtol_override > 0 ? common.rtol_override : 1e-8;
            spec.atol = common.atol_override > 0 ? common.atol_override : 1e-10;
            spec.t_grid = IntegratorSpec::uniform_grid(t_max, 21);

            const std::vector<Matrix> rk = integrate_states(rho0, model, spec);
            const Liouvillian liou = liouvillian_matrix(cfg);
            double dev = 0.0;
            for (size_t i = 0; i < spec.t_grid.size(); ++i)
                dev = std::max(dev,
                               max_abs(rk[i] - evolve_expm(liou, rho0, spec.t_grid[i])));
            std::printf("%-10s %-3s max |rk45 - expm| = %.3e\n",
                        to_string(coupling).c_str(), to_string(diss).c_str(), dev);
            worst = std::max(worst, dev);
        }
    std::printf("overall max deviation = %.3e (tolerance 1e-08)\n", worst);
    if (worst > 1e-8)
        throw numerical_error("oracle check failed: deviation exceeds 1e-8");
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Dissipative qubit-oscillator simulator: quantum optical, "
                 "Caldeira-Leggett and depolarizing heat bath master equations"};
    app.require_subcommand(1);

    CommonOptions common;

    auto* evolve = app.add_subcommand("evolve", "Run one scenario from a JSON config");
    std::string config_path;
    evolve->add_option("--config", config_path, "JSON run configuration")->required();
    common.attach(evolve);

    auto* equilibrate =
        app.add_subcommand("equilibrate", "Mode equilibration without the qubit (g = 0)");
    common.attach(equilibrate);

    auto* figure = app.add_subcommand("figure", "Reproduce a preset study (1..6)");
    int figure_index = 0;
    figure->add_option("index", figure_index, "Preset number")->required();
    common.attach(figure);

    auto* sweep = app.add_subcommand("sweep", "Strong-dissipation convergence study");
    std::string coupling = "jc", observable = "pop";
    std::vector<double> kappa_over_g;
    double gval = 0.1, detuning_over_g = 0.1, nbar = 1.0, gt_max = 30.0;
    bool fit_rate = false;
    int n_threads = 0;
    sweep->add_option("--coupling", coupling)->check(CLI::IsMember({"jc", "dephasing"}));
    sweep->add_option("--observable", observable)
        ->check(CLI::IsMember({"pop", "coherence"}));
    sweep->add_option("--kappa-over-g", kappa_over_g, "Rates to scan (default 1 2 10 40)");
    sweep->add_option("--g", gval);
    sweep->add_option("--detuning-over-g", detuning_over_g);
    sweep->add_option("--nbar", nbar);
    sweep->add_option("--gt-max", gt_max);
    sweep->add_flag("--fit-rate", fit_rate, "Scan the best-fit DH rate ratio");
    sweep->add_option("--threads", n_threads);
    common.attach(sweep);

    auto* oracle = app.add_subcommand("oracle-check",
                                      "Adaptive integrator against matrix-exponential "
                                      "propagation at small n_max");
    unsigned seed = 1234;
    double oracle_t_max = 10.0;
    oracle->add_option("--seed", seed);
    oracle->add_option("--t-max", oracle_t_max);
    common.attach(oracle);

    try {
        app.parse(argc, argv);
        if (evolve->parsed()) return cmd_evolve(config_path, common);
        if (equilibrate->parsed()) return cmd_equilibrate(common, "equilibration");
        if (figure->parsed()) return cmd_figure(figure_index, common);
        if (sweep->parsed())
            return cmd_sweep(common, coupling, observable, kappa_over_g, gval,
                             detuning_over_g, nbar, gt_max, fit_rate, n_threads);
        if (oracle->parsed()) return cmd_oracle_check(common, seed, oracle_t_max);
        return 64;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 64;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qubath
