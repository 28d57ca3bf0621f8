#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qubath/observables.hpp"
#include "qubath/operators.hpp"
#include "qubath/thermal.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace qubath;
namespace qt = qubath::testing;

TEST_CASE("record of the excited product state") {
    ModelConfig cfg;
    cfg.g = 0.1;
    cfg.nbar = 1.0;
    cfg.n_max = 40;
    Matrix excited(2, 2);
    excited << 1, 0, 0, 0;
    const Matrix rho = ops::kron(excited, thermal::thermal_state(cfg.nbar, cfg.n_max));

    const ObservableRecord r = record(rho, 2.5, cfg);
    CHECK(r.t == 2.5);
    CHECK(r.gt == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.pop_excited == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.coherence == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.nbar_t == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.trace_error < 1e-14);
    CHECK(r.herm_defect == 0.0);
    CHECK(r.min_eigenvalue >= -1e-15);
}

TEST_CASE("record of the sigma_x eigenstate") {
    ModelConfig cfg;
    cfg.nbar = 0.0;
    cfg.n_max = 5;
    Matrix sx(2, 2);
    sx << 0.5, 0.5, 0.5, 0.5;
    const Matrix rho = ops::kron(sx, thermal::thermal_state(0.0, cfg.n_max));
    const ObservableRecord r = record(rho, 0.0, cfg);
    CHECK(r.pop_excited == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.coherence == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("purity of the maximally mixed qubit with a thermal mode") {
    // (1/2) sum_n w_n^2 -> 1/6 for nbar = 1 as the basis grows.
    ModelConfig cfg;
    cfg.nbar = 1.0;
    cfg.n_max = 40;
    const Matrix rho =
        ops::kron(0.5 * ops::identity(2), thermal::thermal_state(1.0, cfg.n_max));
    const ObservableRecord r = record(rho, 0.0, cfg);
    CHECK(std::abs(r.purity - 1.0 / 6.0) < 1e-10);
}

TEST_CASE("top Fock population covers the three highest levels") {
    ModelConfig cfg;
    cfg.nbar = 1.0;
    cfg.n_max = 10;
    const RealVector w = thermal::thermal_weights(1.0, cfg.n_max);
    const Matrix rho =
        ops::kron(0.5 * ops::identity(2), thermal::thermal_state(1.0, cfg.n_max));
    const ObservableRecord r = record(rho, 0.0, cfg);
    CHECK(r.top_fock_population ==
          doctest::Approx(w(8) + w(9) + w(10)).epsilon(1e-12));
}

TEST_CASE("equilibrium population from the bath temperature") {
    // (1 - tanh(delta b / 2))/2 with b = ln 2 at nbar = 1.
    CHECK(equilibrium_population(1.01, 1.0) ==
          doctest::Approx(0.33179478982056305).epsilon(1e-12));

    // Infinite temperature gives the even mixture, zero temperature the ground state.
    CHECK(std::abs(equilibrium_population(1.0, 1e8) - 0.5) < 1e-7);
    CHECK(equilibrium_population(1.3, 1e-6) < 1e-5);
    CHECK_THROWS_AS(equilibrium_population(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(equilibrium_population(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("reduced-state positivity bound on the coherence") {
    std::mt19937 rng(81);
    ModelConfig cfg;
    cfg.n_max = 6;
    for (int rep = 0; rep < 10; ++rep) {
        const Matrix rho = qt::random_state(cfg.dims().total_dim(), rng);
        const ObservableRecord r = record(rho, 1.0, cfg);
        CHECK(r.pop_excited >= -1e-12);
        CHECK(r.pop_excited <= 1.0 + 1e-12);
        CHECK(r.coherence <=
              std::sqrt(r.pop_excited * (1.0 - r.pop_excited)) + 1e-8);
    }
}

TEST_CASE("trajectory columns") {
    Trajectory traj;
    traj.times = {0.0, 1.0};
    traj.records.resize(2);
    traj.records[0].pop_excited = 0.25;
    traj.records[1].pop_excited = 0.75;
    const auto col = traj.column(&ObservableRecord::pop_excited);
    CHECK(col == std::vector<double>{0.25, 0.75});
}
