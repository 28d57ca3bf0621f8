#pragma once

#include "qubath/types.hpp"

namespace qubath::ops {

Matrix identity(int dim);

// Qubit operators in the {|e>, |g>} basis (q = 0 excited, q = 1 ground).
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();
Matrix sigma_plus();   // |e><g|
Matrix sigma_minus();  // |g><e|

// Truncated oscillator operators on Fock levels 0..n_max.
// annihilation() has entries <n-1|a|n> = sqrt(n); everything else derives
// from it. The truncation defect is confined to the top level:
// [a, a^dag] = I - (n_max+1)|n_max><n_max|.
Matrix annihilation(int n_max);
Matrix creation(int n_max);
Matrix number_op(int n_max);  // a^dag a
Matrix position(int n_max);   // x = (a + a^dag)/sqrt(2)
Matrix momentum(int n_max);   // p = (a - a^dag)/(i sqrt(2))

/// Tensor product with the first (qubit) factor as the slow index,
/// consistent with HilbertDims basis ordering.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

template <typename DerivedA, typename DerivedB>
Matrix commutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("commutator: operands must be square with equal dims");
    return a * b - b * a;
}

template <typename DerivedA, typename DerivedB>
Matrix anticommutator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("anticommutator: operands must be square with equal dims");
    return a * b + b * a;
}

/// Trace over the oscillator mode: (rho_a)_{qq'} = sum_n rho_{(q,n),(q',n)}.
/// Linear and trace-preserving on arbitrary matrices, not only states.
Matrix partial_trace_env(const Matrix& rho, const HilbertDims& dims);

/// Trace over the qubit: the reduced oscillator state.
Matrix partial_trace_qubit(const Matrix& rho, const HilbertDims& dims);

// Embeddings into the composite space.
Matrix lift_qubit(const Matrix& op, const HilbertDims& dims);  // op (x) I
Matrix lift_mode(const Matrix& op, const HilbertDims& dims);   // I (x) op

}  // namespace qubath::ops
