#pragma once

#include "qubath/types.hpp"

namespace qubath::thermal {

/// Adimensional inverse temperature b from the mean occupation:
/// b = 2 atanh(1/(2 nbar + 1)), the inverse of nbar = (coth(b/2) - 1)/2.
/// nbar <= 0 is rejected (b diverges); zero temperature is handled by
/// thermal_state(0, ...) directly.
double inverse_temperature_from_nbar(double nbar);

/// Mean occupation nbar = 1/(e^b - 1) for b > 0.
double nbar_from_inverse_temperature(double b);

/// Geometric weights e^{-b n}, renormalized to sum to 1 over the truncated
/// basis so that trace preservation is exact. nbar = 0 gives the ground
/// state.
RealVector thermal_weights(double nbar, int n_max);

/// Diagonal oscillator equilibrium state on Fock levels 0..n_max.
Matrix thermal_state(double nbar, int n_max);

/// tr(a^dag a rho) for an oscillator-space state.
double mean_occupation(const Matrix& mode_state);

}  // namespace qubath::thermal
