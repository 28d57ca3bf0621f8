#pragma once

#include "qubath/integrator.hpp"
#include "qubath/observables.hpp"

#include <map>
#include <string>
#include <vector>

namespace qubath {

enum class InitialQubit { Excited, SigmaXEigen };

std::string to_string(InitialQubit q);
Matrix qubit_state(InitialQubit q);

/// One run of a comparison set: a dissipation model together with a rate
/// multiplier on kappa. An explicit rate_scale supersedes the dh_half_rate
/// flag, so comparison sets state their convention unambiguously.
struct ComparisonEntry {
    DissipatorKind dissipator;
    double rate_scale = 1.0;

    std::string label() const;
};

struct Scenario {
    std::string name = "run";
    ModelConfig cfg;
    InitialQubit initial_qubit = InitialQubit::Excited;
    double t_max = 300.0;
    int n_samples = 601;
    Method method = Method::RK45Adaptive;
    double rtol = 1e-8;
    double atol = 1e-10;
    double dt = 1e-2;
    std::vector<ComparisonEntry> comparison_set;

    IntegratorSpec integrator_spec() const;
};

/// Integrate the scenario's own config; initial state is always
/// initial_qubit (x) thermal_state(nbar).
Trajectory run_scenario(const Scenario& s, bool keep_states = false,
                        IntegrationStats* stats = nullptr);

/// Run every comparison_set entry (scenario cfg's own dissipator if the set
/// is empty) on a worker pool; keys are entry labels. n_threads = 0 picks
/// the hardware concurrency.
std::map<std::string, Trajectory> run_comparison(const Scenario& s, int n_threads = 0);

std::map<std::string, Trajectory> run_population_trace(Scenario s, int n_threads = 0);
std::map<std::string, Trajectory> run_coherence_trace(Scenario s, int n_threads = 0);

// --- mode equilibration without the qubit (g = 0) ---

struct EquilibrationParams {
    double kappa = 0.1;
    double nbar_start = 3.0;
    double nbar_bath = 1.0;
    int n_max = 40;
    double kappa_t_max = 6.0;
    int n_samples = 601;
    double rtol = 1e-8;
    double atol = 1e-10;
    int n_threads = 0;
};

struct EquilibrationModelResult {
    std::vector<double> nbar;
    double fitted_rate = 0.0;
    double max_residual = 0.0;      // against the exponential law
    int residual_sign_changes = 0;  // damped-oscillation signature
};

struct EquilibrationResult {
    std::vector<double> times;
    std::vector<double> theory;
    std::map<DissipatorKind, EquilibrationModelResult> models;
};

/// n_eq + (n_0 - n_eq) e^{-rate t}
double exponential_relaxation(double t, double start, double eq, double rate);

/// Least-squares fit of the decay rate of |values - equilibrium| on a log
/// scale, restricted to samples well above the noise floor.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                      double equilibrium);

/// All three dissipation models relax a g = 0 thermal mode from nbar_start
/// to nbar_bath; returns n(t) per model plus fits and residuals against the
/// exponential law. DH runs at full rate here (energy-decay calibration).
EquilibrationResult run_equilibration(const EquilibrationParams& params = {});

// --- model-divergence studies ---

enum class QubitObservable { Population, Coherence };

std::string to_string(QubitObservable o);

struct DivergenceReport {
    double kappa_over_g = 0.0;
    double sup_norm = 0.0;  // max over the shared grid of |obs_A - obs_B|
    QubitObservable observable = QubitObservable::Population;
};

struct StudyParams {
    Coupling coupling = Coupling::JaynesCummings;
    QubitObservable observable = QubitObservable::Population;
    std::vector<double> kappa_over_g = {1.0, 2.0, 10.0, 40.0};
    double g = 0.1;
    double detuning_over_g = 0.1;  // (delta - 1)/g
    double nbar = 1.0;
    int n_max = 22;
    InitialQubit initial_qubit = InitialQubit::Excited;
    double gt_max = 30.0;
    int n_samples = 301;
    double rtol = 1e-8;
    double atol = 1e-10;
    double dh_rate_scale = 0.5;
    int n_threads = 0;
};

double sup_norm_difference(const Trajectory& a, const Trajectory& b, QubitObservable obs);

/// Reference-model (QO) trajectories against DH at dh_rate_scale * kappa for
/// each kappa/g; the central strong-dissipation convergence measurement.
std::vector<DivergenceReport> convergence_study(const StudyParams& params);

bool strictly_decreasing(const std::vector<DivergenceReport>& reports);

struct RateFitResult {
    double best_ratio = 0.0;
    double best_sup_norm = 0.0;
};

/// One-dimensional scan of the DH rate ratio minimizing the divergence from
/// QO at a fixed kappa/g.
RateFitResult best_fit_dh_rate(const StudyParams& params, double kappa_over_g,
                               double ratio_min = 0.3, double ratio_max = 1.0,
                               int n_scan = 15);

// --- coupling-scale invariance ---

struct ScalingParams {
    Coupling coupling = Coupling::JaynesCummings;
    DissipatorKind dissipator = DissipatorKind::QuantumOptical;
    double detuning_over_g = 0.1;
    double kappa_over_g = 1.0;
    double g_a = 0.1;
    double g_b = 0.05;
    double nbar = 1.0;
    int n_max = 22;
    InitialQubit initial_qubit = InitialQubit::SigmaXEigen;
    double gt_max = 20.0;
    int n_samples = 201;
    double rtol = 1e-8;
    double atol = 1e-10;
};

struct ScalingCheckResult {
    double max_pop_diff = 0.0;
    double max_coherence_diff = 0.0;
    double max_nbar_diff = 0.0;
};

/// Two couplings with equal (delta-1)/g and kappa/g, sampled at equal g t.
/// For QO and DH the qubit observables coincide; CL carries the mode
/// frequency as an extra scale and is reported, not asserted.
ScalingCheckResult scaling_check(const ScalingParams& params);

/// Run fn(0..n-1) on a small worker pool; results must be written to
/// disjoint slots. n_threads = 0 picks the hardware concurrency.
void parallel_for(int n, const std::function<void(int)>& fn, int n_threads = 0);

}  // namespace qubath
