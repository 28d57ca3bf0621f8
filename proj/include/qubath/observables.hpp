#pragma once

#include "qubath/model.hpp"

#include <vector>

namespace qubath {

/// Per-sample observables of the reduced qubit state plus numerical-health
/// diagnostics of the full state.
struct ObservableRecord {
    double t = 0, gt = 0;
    double pop_excited = 0;  // <e|rho_a|e>
    double coherence = 0;    // |<e|rho_a|g>|
    double nbar_t = 0;       // <a^dag a>
    double purity = 0;       // tr(rho^2)
    double trace_error = 0;  // |tr rho - 1|
    double herm_defect = 0;
    double min_eigenvalue = 0;
    double top_fock_population = 0;  // population with n >= n_max - 2
};

ObservableRecord record(const Matrix& rho, double t, const ModelConfig& cfg);

/// Excited-state population of the qubit in thermal equilibrium at the bath
/// temperature: (1 - tanh(delta b / 2))/2 with b = 2 atanh(1/(2 nbar + 1)).
double equilibrium_population(double delta, double nbar);

/// Time grid plus per-sample records; states retained only on request.
struct Trajectory {
    std::vector<double> times;
    std::vector<ObservableRecord> records;
    std::vector<Matrix> states;

    std::vector<double> column(double ObservableRecord::* field) const;
};

}  // namespace qubath
