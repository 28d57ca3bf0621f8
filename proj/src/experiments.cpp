#include "qubath/experiments.hpp"

#include "qubath/operators.hpp"
#include "qubath/thermal.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qubath {

std::string to_string(InitialQubit q) {
    return q == InitialQubit::Excited ? "excited" : "sigma_x";
}

std::string to_string(QubitObservable o) {
    return o == QubitObservable::Population ? "pop" : "coherence";
}

Matrix qubit_state(InitialQubit q) {
    Matrix m(2, 2);
    if (q == InitialQubit::Excited)
        m << 1, 0, 0, 0;
    else
        m << 0.5, 0.5, 0.5, 0.5;
    return m;
}

std::string ComparisonEntry::label() const {
    std::string base = to_string(dissipator);
    if (rate_scale == 1.0) return base;
    if (rate_scale == 0.5) return base + "_half";
    char buf[32];
    std::snprintf(buf, sizeof buf, "_r%g", rate_scale);
    return base + buf;
}

IntegratorSpec Scenario::integrator_spec() const {
    IntegratorSpec spec;
    spec.method = method;
    spec.rtol = rtol;
    spec.atol = atol;
    spec.dt = dt;
    spec.t_grid = IntegratorSpec::uniform_grid(t_max, n_samples);
    return spec;
}

void parallel_for(int n, const std::function<void(int)>& fn, int n_threads) {
    if (n_threads <= 0) n_threads = int(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min(n_threads, n));
    if (n_threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(size_t(n_threads));
    for (int w = 0; w < n_threads; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

Trajectory run_scenario(const Scenario& s, bool keep_states, IntegrationStats* stats) {
    const Model model(s.cfg);
    const Matrix rho0 = model.initial_state(qubit_state(s.initial_qubit));
    const IntegratorSpec spec = s.integrator_spec();

    Trajectory traj;
    traj.times = spec.t_grid;
    traj.records.resize(spec.t_grid.size());
    if (keep_states) traj.states.resize(spec.t_grid.size());

    integrate(rho0, model, spec,
              [&](int i, double t, const Matrix& state) {
                  traj.records[size_t(i)] = record(state, t, s.cfg);
                  if (keep_states) traj.states[size_t(i)] = state;
              },
              stats);
    return traj;
}

std::map<std::string, Trajectory> run_comparison(const Scenario& s, int n_threads) {
    std::vector<ComparisonEntry> entries = s.comparison_set;
    if (entries.empty())
        entries.push_back({s.cfg.dissipator, 1.0});

    std::vector<Trajectory> results(entries.size());
    parallel_for(int(entries.size()),
                 [&](int i) {
                     Scenario variant = s;
                     variant.cfg.dissipator = entries[size_t(i)].dissipator;
                     variant.cfg.kappa = s.cfg.kappa * entries[size_t(i)].rate_scale;
                     variant.cfg.dh_half_rate = false;  // the entry states the rate
                     results[size_t(i)] = run_scenario(variant);
                 },
                 n_threads);

    std::map<std::string, Trajectory> out;
    for (size_t i = 0; i < entries.size(); ++i)
        out.emplace(entries[i].label(), std::move(results[i]));
    return out;
}

std::map<std::string, Trajectory> run_population_trace(Scenario s, int n_threads) {
    s.initial_qubit = InitialQubit::Excited;
    return run_comparison(s, n_threads);
}

std::map<std::string, Trajectory> run_coherence_trace(Scenario s, int n_threads) {
    s.initial_qubit = InitialQubit::SigmaXEigen;
    return run_comparison(s, n_threads);
}

double exponential_relaxation(double t, double start, double eq, double rate) {
    return eq + (start - eq) * std::exp(-rate * t);
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                      double equilibrium) {
    if (times.size() != values.size() || times.size() < 3)
        throw std::invalid_argument("fit_decay_rate: need matching series with >= 3 samples");
    const double scale = std::abs(values.front() - equilibrium);
    if (scale == 0.0) throw std::invalid_argument("fit_decay_rate: series starts at equilibrium");

    // Linear regression of log|v - eq| against t, ignoring the noise floor.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        const double dev = std::abs(values[i] - equilibrium);
        if (dev < 1e-3 * scale) continue;
        const double ly = std::log(dev);
        sx += times[i];
        sy += ly;
        sxx += times[i] * times[i];
        sxy += times[i] * ly;
        ++n;
    }
    if (n < 3) throw std::invalid_argument("fit_decay_rate: too few usable samples");
    const double slope = (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
    return -slope;
}

EquilibrationResult run_equilibration(const EquilibrationParams& params) {
    const std::vector<DissipatorKind> kinds = {DissipatorKind::QuantumOptical,
                                               DissipatorKind::CaldeiraLeggett,
                                               DissipatorKind::DepolarizingHeatBath};
    Scenario base;
    base.name = "equilibration";
    base.cfg.coupling = Coupling::JaynesCummings;
    base.cfg.delta = 1.0;
    base.cfg.g = 0.0;
    base.cfg.kappa = params.kappa;
    base.cfg.nbar = params.nbar_bath;
    base.cfg.n_max = params.n_max;
    base.cfg.dh_half_rate = false;  // kappa is the energy-decay rate in this protocol
    base.initial_qubit = InitialQubit::Excited;
    base.t_max = params.kappa_t_max / params.kappa;
    base.n_samples = params.n_samples;
    base.rtol = params.rtol;
    base.atol = params.atol;

    EquilibrationResult result;
    result.times = IntegratorSpec::uniform_grid(base.t_max, base.n_samples);
    result.theory.resize(result.times.size());
    for (size_t i = 0; i < result.times.size(); ++i)
        result.theory[i] = exponential_relaxation(result.times[i], params.nbar_start,
                                                  params.nbar_bath, params.kappa);

    std::vector<Trajectory> trajectories(kinds.size());
    parallel_for(int(kinds.size()),
                 [&](int i) {
                     Scenario s = base;
                     s.cfg.dissipator = kinds[size_t(i)];
                     // The mode starts hotter than the bath; the qubit is idle.
                     const Model model(s.cfg);
                     const Matrix rho0 = ops::kron(
                         qubit_state(InitialQubit::Excited),
                         thermal::thermal_state(params.nbar_start, params.n_max));
                     Trajectory traj;
                     const IntegratorSpec spec = s.integrator_spec();
                     traj.times = spec.t_grid;
                     traj.records.resize(spec.t_grid.size());
                     integrate(rho0, model, spec, [&](int k, double t, const Matrix& st) {
                         traj.records[size_t(k)] = record(st, t, s.cfg);
                     });
                     trajectories[size_t(i)] = std::move(traj);
                 },
                 params.n_threads);

    for (size_t i = 0; i < kinds.size(); ++i) {
        EquilibrationModelResult m;
        m.nbar = trajectories[i].column(&ObservableRecord::nbar_t);
        m.fitted_rate = fit_decay_rate(result.times, m.nbar, params.nbar_bath);
        int sign = 0;
        for (size_t k = 0; k < m.nbar.size(); ++k) {
            const double resid = m.nbar[k] - result.theory[k];
            m.max_residual = std::max(m.max_residual, std::abs(resid));
            if (std::abs(resid) > 1e-12) {
                const int s = resid > 0 ? 1 : -1;
                if (sign != 0 && s != sign) ++m.residual_sign_changes;
                sign = s;
            }
        }
        result.models.emplace(kinds[i], std::move(m));
    }
    return result;
}

double sup_norm_difference(const Trajectory& a, const Trajectory& b, QubitObservable obs) {
    if (a.records.size() != b.records.size())
        throw std::invalid_argument("sup_norm_difference: trajectories use different grids");
    const auto field = obs == QubitObservable::Population ? &ObservableRecord::pop_excited
                                                          : &ObservableRecord::coherence;
    double sup = 0.0;
    for (size_t i = 0; i < a.records.size(); ++i)
        sup = std::max(sup, std::abs(a.records[i].*field - b.records[i].*field));
    return sup;
}

namespace {

Scenario study_scenario(const StudyParams& p, double kappa_over_g) {
    Scenario s;
    s.cfg.coupling = p.coupling;
    s.cfg.delta = 1.0 + p.detuning_over_g * p.g;
    s.cfg.g = p.g;
    s.cfg.kappa = kappa_over_g * p.g;
    s.cfg.nbar = p.nbar;
    s.cfg.n_max = p.n_max;
    s.initial_qubit = p.initial_qubit;
    s.t_max = p.gt_max / p.g;
    s.n_samples = p.n_samples;
    s.rtol = p.rtol;
    s.atol = p.atol;
    return s;
}

}  // namespace

std::vector<DivergenceReport> convergence_study(const StudyParams& params) {
    const int n = int(params.kappa_over_g.size());
    std::vector<DivergenceReport> reports(static_cast<size_t>(n));
    // Two runs per rate; all of them are independent jobs.
    std::vector<Trajectory> qo(static_cast<size_t>(n)), dh(static_cast<size_t>(n));
    parallel_for(2 * n,
                 [&](int job) {
                     const int i = job / 2;
                     Scenario s = study_scenario(params, params.kappa_over_g[size_t(i)]);
                     if (job % 2 == 0) {
                         s.cfg.dissipator = DissipatorKind::QuantumOptical;
                         qo[size_t(i)] = run_scenario(s);
                     } else {
                         s.cfg.dissipator = DissipatorKind::DepolarizingHeatBath;
                         s.cfg.dh_half_rate = false;
                         s.cfg.kappa *= params.dh_rate_scale;
                         dh[size_t(i)] = run_scenario(s);
                     }
                 },
                 params.n_threads);
    for (int i = 0; i < n; ++i) {
        reports[size_t(i)].kappa_over_g = params.kappa_over_g[size_t(i)];
        reports[size_t(i)].observable = params.observable;
        reports[size_t(i)].sup_norm =
            sup_norm_difference(qo[size_t(i)], dh[size_t(i)], params.observable);
    }
    return reports;
}

bool strictly_decreasing(const std::vector<DivergenceReport>& reports) {
    for (size_t i = 1; i < reports.size(); ++i)
        if (!(reports[i].sup_norm < reports[i - 1].sup_norm)) return false;
    return true;
}

RateFitResult best_fit_dh_rate(const StudyParams& params, double kappa_over_g,
                               double ratio_min, double ratio_max, int n_scan) {
    if (n_scan < 2) throw std::invalid_argument("best_fit_dh_rate: n_scan must be >= 2");
    Scenario reference = study_scenario(params, kappa_over_g);
    reference.cfg.dissipator = DissipatorKind::QuantumOptical;
    const Trajectory qo = run_scenario(reference);

    std::vector<double> ratios(static_cast<size_t>(n_scan));
    for (int i = 0; i < n_scan; ++i)
        ratios[size_t(i)] =
            ratio_min + (ratio_max - ratio_min) * double(i) / double(n_scan - 1);

    std::vector<double> sup(static_cast<size_t>(n_scan));
    parallel_for(n_scan,
                 [&](int i) {
                     Scenario s = study_scenario(params, kappa_over_g);
                     s.cfg.dissipator = DissipatorKind::DepolarizingHeatBath;
                     s.cfg.dh_half_rate = false;
                     s.cfg.kappa *= ratios[size_t(i)];
                     sup[size_t(i)] = sup_norm_difference(qo, run_scenario(s),
                                                          params.observable);
                 },
                 params.n_threads);

    RateFitResult best{ratios[0], sup[0]};
    for (int i = 1; i < n_scan; ++i)
        if (sup[size_t(i)] < best.best_sup_norm) best = {ratios[size_t(i)], sup[size_t(i)]};
    return best;
}

ScalingCheckResult scaling_check(const ScalingParams& params) {
    auto make = [&](double g) {
        Scenario s;
        s.cfg.coupling = params.coupling;
        s.cfg.dissipator = params.dissipator;
        s.cfg.delta = 1.0 + params.detuning_over_g * g;
        s.cfg.g = g;
        s.cfg.kappa = params.kappa_over_g * g;
        s.cfg.nbar = params.nbar;
        s.cfg.n_max = params.n_max;
        s.initial_qubit = params.initial_qubit;
        s.t_max = params.gt_max / g;
        s.n_samples = params.n_samples;
        s.rtol = params.rtol;
        s.atol = params.atol;
        return run_scenario(s);
    };
    Trajectory a, b;
    parallel_for(2, [&](int i) { (i == 0 ? a : b) = make(i == 0 ? params.g_a : params.g_b); });

    ScalingCheckResult r;
    for (size_t i = 0; i < a.records.size(); ++i) {
        r.max_pop_diff = std::max(
            r.max_pop_diff, std::abs(a.records[i].pop_excited - b.records[i].pop_excited));
        r.max_coherence_diff = std::max(
            r.max_coherence_diff, std::abs(a.records[i].coherence - b.records[i].coherence));
        r.max_nbar_diff =
            std::max(r.max_nbar_diff, std::abs(a.records[i].nbar_t - b.records[i].nbar_t));
    }
    return r;
}

}  // namespace qubath
