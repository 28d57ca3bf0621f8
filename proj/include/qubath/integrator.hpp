#pragma once

#include "qubath/model.hpp"

#include <functional>
#include <vector>

namespace qubath {

enum class Method { RK45Adaptive, RK4Fixed, ExpmOracle };

std::string to_string(Method m);

struct IntegratorSpec {
    Method method = Method::RK45Adaptive;
    double rtol = 1e-8;
    double atol = 1e-10;
    double dt = 1e-2;  // step bound for the fixed-step path
    std::vector<double> t_grid;

    void validate() const;  // t_grid[0] == 0, strictly increasing

    static std::vector<double> uniform_grid(double t_max, int n_samples);
};

struct IntegrationStats {
    long steps_accepted = 0;
    long steps_rejected = 0;
    double min_step = 0.0;
    double max_presym_defect = 0.0;  // Hermiticity defect before symmetrization
};

using SampleCallback = std::function<void(int index, double t, const Matrix& state)>;

/// Evolve rho0 under the model's master equation, invoking on_sample at every
/// grid time (the adaptive path clips steps to land exactly on grid points).
/// Each accepted step ends with rho <- (rho + rho^dag)/2; the trace is never
/// renormalized. Throws numerical_error on step underflow or NaN/Inf.
void integrate(const Matrix& rho0, const Model& model, const IntegratorSpec& spec,
               const SampleCallback& on_sample, IntegrationStats* stats = nullptr);

std::vector<Matrix> integrate_states(const Matrix& rho0, const Model& model,
                                     const IntegratorSpec& spec,
                                     IntegrationStats* stats = nullptr);

/// Propagate by the matrix exponential of the vectorized generator:
/// reshape(expm(t L) vec(rho0)).
Matrix evolve_expm(const Liouvillian& liou, const Matrix& rho0, double t);

}  // namespace qubath
