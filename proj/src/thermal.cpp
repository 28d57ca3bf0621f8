#include "qubath/thermal.hpp"

#include <cassert>
#include <cmath>

namespace qubath::thermal {

double inverse_temperature_from_nbar(double nbar) {
    if (!(nbar > 0.0))
        throw std::invalid_argument("inverse_temperature_from_nbar: nbar must be > 0");
    return 2.0 * std::atanh(1.0 / (2.0 * nbar + 1.0));
}

double nbar_from_inverse_temperature(double b) {
    if (!(b > 0.0)) throw std::invalid_argument("nbar_from_inverse_temperature: b must be > 0");
    return 1.0 / std::expm1(b);
}

RealVector thermal_weights(double nbar, int n_max) {
    if (n_max < 1) throw std::invalid_argument("thermal_weights: n_max must be >= 1");
    if (nbar < 0.0) throw std::invalid_argument("thermal_weights: nbar must be >= 0");
    RealVector w = RealVector::Zero(n_max + 1);
    if (nbar == 0.0) {
        w(0) = 1.0;
        return w;
    }
    const double b = inverse_temperature_from_nbar(nbar);
    for (int n = 0; n <= n_max; ++n) w(n) = std::exp(-b * n);
    w /= w.sum();
    return w;
}

Matrix thermal_state(double nbar, int n_max) {
    return thermal_weights(nbar, n_max).cast<Complex>().asDiagonal();
}

double mean_occupation(const Matrix& mode_state) {
    Complex n = 0.0;
    for (int k = 0; k < mode_state.rows(); ++k) n += double(k) * mode_state(k, k);
    assert(std::abs(n.imag()) <= 1e-12);
    return n.real();
}

}  // namespace qubath::thermal
