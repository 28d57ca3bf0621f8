#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qubath/operators.hpp"
#include "test_support.hpp"

using namespace qubath;
namespace qt = qubath::testing;

TEST_CASE("annihilation operator entries") {
    const Matrix a = ops::annihilation(1);
    CHECK(a(0, 1) == Complex(1.0));
    CHECK(a(0, 0) == Complex(0.0));
    CHECK(a(1, 0) == Complex(0.0));
    CHECK(a(1, 1) == Complex(0.0));

    const Matrix a5 = ops::annihilation(5);
    for (int n = 1; n <= 5; ++n) CHECK(a5(n - 1, n) == Complex(std::sqrt(double(n))));
    CHECK(ops::annihilation(5).cwiseAbs().sum() ==
          doctest::Approx(a5.cwiseAbs().sum()));

    CHECK_THROWS_AS(ops::annihilation(0), std::invalid_argument);
    CHECK_THROWS_AS(ops::annihilation(-3), std::invalid_argument);
}

TEST_CASE("annihilation kills the vacuum") {
    const Matrix a = ops::annihilation(4);
    Vector vac = Vector::Zero(5);
    vac(0) = 1.0;
    CHECK((a * vac).norm() == 0.0);
}

TEST_CASE("creation is the adjoint; x and p derive from a") {
    const int n_max = 6;
    const Matrix a = ops::annihilation(n_max);
    CHECK(max_abs(ops::creation(n_max) - a.adjoint()) == 0.0);
    CHECK(max_abs(ops::number_op(n_max) - Matrix(a.adjoint() * a)) < 1e-15);
    // a == (x + i p)/sqrt(2)
    const Matrix x = ops::position(n_max), p = ops::momentum(n_max);
    CHECK(max_abs((x + Complex(0, 1) * p) / std::sqrt(2.0) - a) < 1e-15);
    CHECK(hermiticity_defect(x) < 1e-15);
    CHECK(hermiticity_defect(p) < 1e-15);
}

TEST_CASE("truncation defect of [a, a^dag] sits in the top corner") {
    // Direct evaluation of the truncated products at n_max = 3.
    const int n_max = 3;
    const Matrix a = qt::annihilation_reference(n_max);
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    Matrix expected = Matrix::Identity(4, 4);
    expected(3, 3) = -3.0;  // 1 - (n_max + 1)
    CHECK(max_abs(comm - expected) < 1e-15);

    const Matrix lib = ops::commutator(ops::annihilation(n_max), ops::creation(n_max));
    CHECK(max_abs(lib - expected) < 1e-15);
}

TEST_CASE("kron of identities and dimension law") {
    CHECK(max_abs(ops::kron(ops::identity(2), ops::identity(3)) - ops::identity(6)) == 0.0);

    std::mt19937 rng(7);
    const Matrix a = qt::random_complex(3, 2, rng);
    const Matrix b = qt::random_complex(4, 5, rng);
    const Matrix k = ops::kron(a, b);
    CHECK(k.rows() == 12);
    CHECK(k.cols() == 10);
    CHECK(max_abs(k - qt::kron_reference(a, b)) < 1e-15);
}

TEST_CASE("kron(sigma_z, I) is the block-signed identity") {
    const Matrix k = ops::kron(ops::sigma_z(), ops::identity(3));
    for (int i = 0; i < 3; ++i) {
        CHECK(k(i, i) == Complex(1.0));
        CHECK(k(3 + i, 3 + i) == Complex(-1.0));
    }
    CHECK(k.cwiseAbs().sum() == doctest::Approx(6.0));
}

TEST_CASE("trace is multiplicative under kron") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix a = qt::random_complex(2, 2, rng);
        const Matrix b = qt::random_complex(3, 3, rng);
        const Complex lhs = ops::kron(a, b).trace();
        const Complex rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("partial trace over the mode recovers the qubit factor") {
    std::mt19937 rng(3);
    const HilbertDims dims(5);
    const Matrix rho_a = qt::random_state(2, rng);
    const Matrix sigma = qt::random_state(dims.osc_dim(), rng);
    const Matrix rho = ops::kron(rho_a, sigma);
    CHECK(max_abs(ops::partial_trace_env(rho, dims) - rho_a) < 1e-14);
}

TEST_CASE("partial trace of the single-excitation Bell state") {
    const HilbertDims dims(3);
    Vector psi = Vector::Zero(dims.total_dim());
    psi(dims.index(0, 0)) = 1.0 / std::sqrt(2.0);  // |e,0>
    psi(dims.index(1, 1)) = 1.0 / std::sqrt(2.0);  // |g,1>
    const Matrix rho = psi * psi.adjoint();
    const Matrix reduced = ops::partial_trace_env(rho, dims);
    CHECK(max_abs(reduced - 0.5 * ops::identity(2)) < 1e-15);
}

TEST_CASE("partial trace is linear and trace preserving on arbitrary matrices") {
    std::mt19937 rng(17);
    const HilbertDims dims(4);
    const Matrix m1 = qt::random_complex(dims.total_dim(), dims.total_dim(), rng);
    const Matrix m2 = qt::random_hermitian(dims.total_dim(), rng);
    const Complex alpha(0.3, -1.2);

    CHECK(std::abs(ops::partial_trace_env(m2, dims).trace() - m2.trace()) < 1e-13);
    const Matrix lin = ops::partial_trace_env(Matrix(alpha * m1 + m2), dims);
    const Matrix sep = alpha * ops::partial_trace_env(m1, dims) +
                       ops::partial_trace_env(m2, dims);
    CHECK(max_abs(lin - sep) < 1e-13);
    CHECK(max_abs(ops::partial_trace_env(m2, dims) -
                  qt::partial_trace_env_reference(m2, dims.n_max)) < 1e-14);

    CHECK_THROWS_AS(ops::partial_trace_env(qt::random_hermitian(6, rng), dims),
                    std::invalid_argument);
}

TEST_CASE("partial trace over the qubit") {
    std::mt19937 rng(5);
    const HilbertDims dims(4);
    const Matrix rho_a = qt::random_state(2, rng);
    const Matrix sigma = qt::random_state(dims.osc_dim(), rng);
    const Matrix reduced = ops::partial_trace_qubit(ops::kron(rho_a, sigma), dims);
    CHECK(max_abs(reduced - sigma) < 1e-14);
}

TEST_CASE("commutators and anticommutators") {
    CHECK(max_abs(ops::commutator(ops::sigma_z(), ops::sigma_z())) == 0.0);

    std::mt19937 rng(23);
    const Matrix a = qt::random_complex(4, 4, rng);
    CHECK(max_abs(ops::anticommutator(ops::identity(4), a) - 2.0 * a) < 1e-15);

    // sigma_pm = (sigma_x +- i sigma_y)/2 and [s+, s-] = sigma_z
    const Matrix sp = 0.5 * (ops::sigma_x() + Complex(0, 1) * ops::sigma_y());
    const Matrix sm = 0.5 * (ops::sigma_x() - Complex(0, 1) * ops::sigma_y());
    CHECK(max_abs(sp - ops::sigma_plus()) < 1e-15);
    CHECK(max_abs(sm - ops::sigma_minus()) < 1e-15);
    CHECK(max_abs(ops::commutator(sp, sm) - ops::sigma_z()) < 1e-15);

    CHECK_THROWS_AS(ops::commutator(a, qt::random_complex(3, 3, rng)),
                    std::invalid_argument);
    CHECK_THROWS_AS(ops::anticommutator(qt::random_complex(3, 4, rng), a),
                    std::invalid_argument);
}

TEST_CASE("adjoint is an involution") {
    std::mt19937 rng(31);
    const Matrix a = qt::random_complex(5, 5, rng);
    CHECK(max_abs(Matrix(Matrix(a.adjoint()).adjoint()) - a) == 0.0);
}

TEST_CASE("basis indexing is qubit-major") {
    const HilbertDims dims(9);
    CHECK(dims.total_dim() == 20);
    CHECK(dims.index(0, 0) == 0);
    CHECK(dims.index(0, 9) == 9);
    CHECK(dims.index(1, 0) == 10);
    CHECK_THROWS_AS(HilbertDims(0), std::invalid_argument);
}
