#include "qubath/operators.hpp"

#include <cmath>

namespace qubath::ops {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

Matrix annihilation(int n_max) {
    if (n_max < 1) throw std::invalid_argument("annihilation: n_max must be >= 1");
    Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix creation(int n_max) { return annihilation(n_max).adjoint(); }

Matrix number_op(int n_max) {
    Matrix n = Matrix::Zero(n_max + 1, n_max + 1);
    for (int k = 0; k <= n_max; ++k) n(k, k) = double(k);
    return n;
}

Matrix position(int n_max) {
    const Matrix a = annihilation(n_max);
    return (a + a.adjoint()) / std::sqrt(2.0);
}

Matrix momentum(int n_max) {
    const Matrix a = annihilation(n_max);
    return (a - a.adjoint()) / Complex(0, std::sqrt(2.0));
}

Matrix partial_trace_env(const Matrix& rho, const HilbertDims& dims) {
    const int no = dims.osc_dim();
    if (rho.rows() != dims.total_dim() || rho.cols() != dims.total_dim())
        throw std::invalid_argument("partial_trace_env: state dimension mismatch");
    Matrix out(2, 2);
    for (int q = 0; q < 2; ++q)
        for (int qp = 0; qp < 2; ++qp) out(q, qp) = rho.block(q * no, qp * no, no, no).trace();
    return out;
}

Matrix partial_trace_qubit(const Matrix& rho, const HilbertDims& dims) {
    const int no = dims.osc_dim();
    if (rho.rows() != dims.total_dim() || rho.cols() != dims.total_dim())
        throw std::invalid_argument("partial_trace_qubit: state dimension mismatch");
    return rho.block(0, 0, no, no) + rho.block(no, no, no, no);
}

Matrix lift_qubit(const Matrix& op, const HilbertDims& dims) {
    return kron(op, identity(dims.osc_dim()));
}

Matrix lift_mode(const Matrix& op, const HilbertDims& dims) {
    return kron(identity(2), op);
}

}  // namespace qubath::ops
