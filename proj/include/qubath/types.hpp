#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qubath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Composite Hilbert space of a qubit and a truncated oscillator mode.
/// Basis ordering is qubit-major: index(q, n) = q*(n_max+1) + n with
/// q = 0 the excited and q = 1 the ground state, n the Fock number.
struct HilbertDims {
    int n_max;

    explicit HilbertDims(int n_max_) : n_max(n_max_) {
        if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    }
    int qubit_dim() const { return 2; }
    int osc_dim() const { return n_max + 1; }
    int total_dim() const { return 2 * (n_max + 1); }
    int index(int q, int n) const { return q * (n_max + 1) + n; }
};

/// Breakdown of the numerics themselves (NaN, step underflow, superoperator
/// size cap), as opposed to invalid configuration which throws
/// std::invalid_argument.
class numerical_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qubath
