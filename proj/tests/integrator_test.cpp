#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qubath/integrator.hpp"
#include "qubath/observables.hpp"
#include "qubath/operators.hpp"
#include "qubath/thermal.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace qubath;
namespace qt = qubath::testing;

namespace {

ModelConfig oracle_config(DissipatorKind diss, int n_max = 3) {
    ModelConfig cfg;
    cfg.coupling = Coupling::JaynesCummings;
    cfg.dissipator = diss;
    cfg.delta = 1.05;
    cfg.g = 0.1;
    cfg.kappa = 0.2;
    cfg.nbar = 1.0;
    cfg.n_max = n_max;
    return cfg;
}

Matrix sigma_x_state() {
    Matrix m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    return m;
}

}  // namespace

TEST_CASE("free precession preserves the coherence magnitude and phase") {
    ModelConfig cfg;
    cfg.delta = 1.0;
    cfg.g = 0.0;
    cfg.kappa = 0.0;
    cfg.nbar = 1.0;
    cfg.n_max = 4;
    const Model model(cfg);
    const Matrix rho0 = model.initial_state(sigma_x_state());

    IntegratorSpec spec;
    spec.t_grid = IntegratorSpec::uniform_grid(10.0, 41);
    const std::vector<Matrix> states = integrate_states(rho0, model, spec);

    for (size_t i = 0; i < states.size(); ++i) {
        const Matrix rho_a = ops::partial_trace_env(states[i], cfg.dims());
        const Complex expected = 0.5 * std::exp(Complex(0, -cfg.delta * spec.t_grid[i]));
        CHECK(std::abs(std::abs(rho_a(0, 1)) - 0.5) < 5e-8);
        CHECK(std::abs(rho_a(0, 1) - expected) < 1e-7);
    }
}

TEST_CASE("uncoupled QO mode follows the exponential relaxation law") {
    // n(t) = n_eq + (n_0 - n_eq) e^{-kappa t}, apart from the truncation tail.
    ModelConfig cfg;
    cfg.g = 0.0;
    cfg.kappa = 0.1;
    cfg.nbar = 1.0;
    cfg.n_max = 40;
    const Model model(cfg);

    Matrix ground(2, 2);
    ground << 0, 0, 0, 1;
    const Matrix rho0 = ops::kron(ground, thermal::thermal_state(3.0, cfg.n_max));

    IntegratorSpec spec;
    spec.rtol = 1e-7;
    spec.atol = 1e-10;
    spec.t_grid = IntegratorSpec::uniform_grid(40.0, 81);

    double worst = 0.0;
    integrate(rho0, model, spec, [&](int i, double t, const Matrix& state) {
        (void)i;
        const double nbar_t =
            thermal::mean_occupation(ops::partial_trace_qubit(state, cfg.dims()));
        const double theory = 1.0 + 2.0 * std::exp(-cfg.kappa * t);
        worst = std::max(worst, std::abs(nbar_t - theory));
    });
    CHECK(worst < 1e-3);
}

TEST_CASE("adaptive integration matches the matrix-exponential oracle") {
    const ModelConfig cfg = oracle_config(DissipatorKind::QuantumOptical);
    const Model model(cfg);
    std::mt19937 rng(71);
    const Matrix rho0 = model.initial_state(qt::random_state(2, rng));

    IntegratorSpec spec;
    spec.t_grid = IntegratorSpec::uniform_grid(10.0, 21);
    const std::vector<Matrix> states = integrate_states(rho0, model, spec);

    const Liouvillian liou = liouvillian_matrix(cfg);
    double worst = 0.0;
    for (size_t i = 0; i < states.size(); ++i)
        worst = std::max(worst, max_abs(states[i] - evolve_expm(liou, rho0, spec.t_grid[i])));
    CHECK(worst < 1e-8);
}

TEST_CASE("expm propagation basics") {
    const ModelConfig cfg = oracle_config(DissipatorKind::DepolarizingHeatBath);
    const Liouvillian liou = liouvillian_matrix(cfg);
    const Model model(cfg);
    std::mt19937 rng(73);
    const Matrix rho0 = model.initial_state(qt::random_state(2, rng));

    SUBCASE("zero time is the identity") {
        CHECK(max_abs(evolve_expm(liou, rho0, 0.0) - rho0) < 1e-14);
    }

    SUBCASE("semigroup property") {
        const Matrix one = evolve_expm(liou, evolve_expm(liou, rho0, 1.7), 2.3);
        const Matrix two = evolve_expm(liou, rho0, 4.0);
        CHECK(max_abs(one - two) < 1e-10);
    }

    SUBCASE("trace preservation for QO and DH") {
        for (auto diss : {DissipatorKind::QuantumOptical, DissipatorKind::DepolarizingHeatBath}) {
            const ModelConfig c = oracle_config(diss);
            const Liouvillian l = liouvillian_matrix(c);
            const Matrix out = evolve_expm(l, rho0, 5.0);
            CHECK(std::abs(out.trace() - Complex(1.0)) < 1e-10);
        }
    }
}

TEST_CASE("fixed RK4 converges at fourth order") {
    const ModelConfig cfg = oracle_config(DissipatorKind::QuantumOptical);
    const Model model(cfg);
    Matrix excited(2, 2);
    excited << 1, 0, 0, 0;
    const Matrix rho0 = model.initial_state(excited);

    const Liouvillian liou = liouvillian_matrix(cfg);
    const Matrix exact = evolve_expm(liou, rho0, 5.0);

    auto final_error = [&](double dt) {
        IntegratorSpec spec;
        spec.method = Method::RK4Fixed;
        spec.dt = dt;
        spec.t_grid = {0.0, 5.0};
        return max_abs(integrate_states(rho0, model, spec).back() - exact);
    };

    const double coarse = final_error(0.02);
    const double fine = final_error(0.01);
    const double ratio = coarse / fine;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
}

TEST_CASE("expm integration method agrees with evolve_expm") {
    const ModelConfig cfg = oracle_config(DissipatorKind::CaldeiraLeggett);
    const Model model(cfg);
    Matrix excited(2, 2);
    excited << 1, 0, 0, 0;
    const Matrix rho0 = model.initial_state(excited);

    IntegratorSpec spec;
    spec.method = Method::ExpmOracle;
    spec.t_grid = IntegratorSpec::uniform_grid(6.0, 13);
    const std::vector<Matrix> states = integrate_states(rho0, model, spec);
    const Liouvillian liou = liouvillian_matrix(cfg);
    CHECK(max_abs(states.back() - evolve_expm(liou, rho0, 6.0)) < 1e-11);
}

TEST_CASE("sampled states are exactly Hermitian after symmetrization") {
    const ModelConfig cfg = oracle_config(DissipatorKind::QuantumOptical, 5);
    const Model model(cfg);
    const Matrix rho0 = model.initial_state(sigma_x_state());

    IntegratorSpec spec;
    spec.t_grid = IntegratorSpec::uniform_grid(8.0, 17);
    IntegrationStats stats;
    const std::vector<Matrix> states = integrate_states(rho0, model, spec, &stats);

    for (const auto& s : states) CHECK(hermiticity_defect(s) == 0.0);
    CHECK(stats.max_presym_defect <= 10.0 * spec.rtol);
    CHECK(stats.steps_accepted > 0);
}

TEST_CASE("QO and DH trajectories stay positive within tolerance") {
    for (auto diss : {DissipatorKind::QuantumOptical, DissipatorKind::DepolarizingHeatBath}) {
        ModelConfig cfg = oracle_config(diss, 12);
        cfg.kappa = 0.3;
        const Model model(cfg);
        const Matrix rho0 = model.initial_state(sigma_x_state());
        IntegratorSpec spec;
        spec.t_grid = IntegratorSpec::uniform_grid(30.0, 31);
        integrate(rho0, model, spec, [&](int, double t, const Matrix& state) {
            const ObservableRecord r = record(state, t, cfg);
            CHECK(r.min_eigenvalue >= -1e-8);
        });
    }
}

TEST_CASE("non-finite input is rejected") {
    const ModelConfig cfg = oracle_config(DissipatorKind::QuantumOptical);
    const Model model(cfg);
    Matrix rho0 = Matrix::Zero(cfg.dims().total_dim(), cfg.dims().total_dim());
    rho0(0, 0) = std::numeric_limits<double>::quiet_NaN();
    IntegratorSpec spec;
    spec.t_grid = IntegratorSpec::uniform_grid(1.0, 3);
    CHECK_THROWS_AS(integrate_states(rho0, model, spec), numerical_error);
}

TEST_CASE("integrator spec validation") {
    IntegratorSpec spec;
    spec.t_grid = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.t_grid = {1.0, 2.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.t_grid = {0.0, 1.0};
    spec.rtol = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec.rtol = 1e-8;
    CHECK_NOTHROW(spec.validate());
    CHECK_THROWS_AS(IntegratorSpec::uniform_grid(-1.0, 10), std::invalid_argument);
}
