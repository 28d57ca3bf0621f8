#include "qubath/observables.hpp"

#include "qubath/operators.hpp"
#include "qubath/thermal.hpp"

#include <cmath>

namespace qubath {

ObservableRecord record(const Matrix& rho, double t, const ModelConfig& cfg) {
    const HilbertDims dims = cfg.dims();
    const int no = dims.osc_dim();
    ObservableRecord r;
    r.t = t;
    r.gt = cfg.g * t;

    const Matrix rho_a = ops::partial_trace_env(rho, dims);
    r.pop_excited = rho_a(0, 0).real();
    r.coherence = std::abs(rho_a(0, 1));

    double nbar_t = 0.0, top = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int n = 0; n < no; ++n) {
            const double pop = rho(dims.index(q, n), dims.index(q, n)).real();
            nbar_t += double(n) * pop;
            if (n >= dims.n_max - 2) top += pop;
        }
    r.nbar_t = nbar_t;
    r.top_fock_population = top;

    // tr(rho^2) = sum_ij rho_ij rho_ji
    r.purity = (rho.array() * rho.transpose().array()).sum().real();
    r.trace_error = std::abs(rho.trace() - Complex(1.0));
    r.herm_defect = hermiticity_defect(rho);

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    return r;
}

double equilibrium_population(double delta, double nbar) {
    const double b = thermal::inverse_temperature_from_nbar(nbar);
    return 0.5 * (1.0 - std::tanh(0.5 * delta * b));
}

std::vector<double> Trajectory::column(double ObservableRecord::* field) const {
    std::vector<double> out(records.size());
    for (size_t i = 0; i < records.size(); ++i) out[i] = records[i].*field;
    return out;
}

}  // namespace qubath
