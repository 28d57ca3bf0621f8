#include "qubath/integrator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qubath {

std::string to_string(Method m) {
    switch (m) {
        case Method::RK45Adaptive: return "rk45";
        case Method::RK4Fixed: return "rk4";
        default: return "expm";
    }
}

void IntegratorSpec::validate() const {
    if (t_grid.size() < 2) throw std::invalid_argument("t_grid: needs at least two samples");
    if (t_grid.front() != 0.0) throw std::invalid_argument("t_grid: must start at 0");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("t_grid: must be strictly increasing");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw std::invalid_argument("rtol/atol: must be > 0");
    if (method == Method::RK4Fixed && !(dt > 0.0))
        throw std::invalid_argument("dt: must be > 0 for the fixed-step method");
}

std::vector<double> IntegratorSpec::uniform_grid(double t_max, int n_samples) {
    if (!(t_max > 0.0) || n_samples < 2)
        throw std::invalid_argument("uniform_grid: t_max > 0 and n_samples >= 2 required");
    std::vector<double> ts(n_samples);
    for (int i = 0; i < n_samples; ++i) ts[i] = t_max * double(i) / double(n_samples - 1);
    return ts;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Difference between the 5th- and the embedded 4th-order weights.
constexpr double kE[7] = {71.0 / 57600,       0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

// Scaled max-norm of the embedded error estimate.
double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double rtol,
                  double atol) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j)
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            const double sc =
                atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            worst = std::max(worst, std::abs(err(i, j)) / sc);
        }
    return worst;
}

void check_finite(const Matrix& m, double t) {
    if (!m.allFinite())
        throw numerical_error("integration produced a non-finite state at t = " +
                              std::to_string(t));
}

void symmetrize(Matrix& rho, Matrix& scratch, IntegrationStats* stats) {
    scratch = rho.adjoint();
    if (stats)
        stats->max_presym_defect =
            std::max(stats->max_presym_defect, (rho - scratch).cwiseAbs().maxCoeff());
    rho = 0.5 * (rho + scratch);
}

void integrate_rk45(const Matrix& rho0, const Model& model, const IntegratorSpec& spec,
                    const SampleCallback& on_sample, IntegrationStats* stats) {
    const Eigen::Index d = rho0.rows();
    Matrix y = rho0;
    Matrix k[7], ytmp(d, d), err(d, d), scratch(d, d);
    for (auto& ki : k) ki.resize(d, d);
    Model::Workspace ws;

    double t = 0.0;
    on_sample(0, 0.0, y);

    double h_ctrl = std::min(1e-3, spec.t_grid[1]);  // refined by the controller
    if (stats) stats->min_step = std::numeric_limits<double>::max();

    for (size_t target = 1; target < spec.t_grid.size(); ++target) {
        const double t_end = spec.t_grid[target];
        while (t < t_end) {
            const bool clipped = t + h_ctrl >= t_end;
            const double h = clipped ? t_end - t : h_ctrl;
            if (!clipped && h < 1e-14 * std::max(1.0, std::abs(t)))
                throw numerical_error("step size underflow at t = " + std::to_string(t));

            model.rhs_into(y, k[0], ws);
            for (int s = 1; s < 7; ++s) {
                ytmp = y;
                for (int j = 0; j < s; ++j)
                    if (kA[s][j] != 0.0) ytmp.noalias() += (h * kA[s][j]) * k[j];
                model.rhs_into(ytmp, k[s], ws);
            }
            // Stage 7 is evaluated at the 5th-order solution: ytmp holds y1.
            err.setZero();
            for (int s = 0; s < 7; ++s)
                if (kE[s] != 0.0) err.noalias() += (h * kE[s]) * k[s];

            check_finite(ytmp, t + h);
            const double en = error_norm(err, y, ytmp, spec.rtol, spec.atol);

            if (en <= 1.0) {
                t = clipped ? t_end : t + h;
                y = ytmp;
                symmetrize(y, scratch, stats);
                if (stats) {
                    ++stats->steps_accepted;
                    stats->min_step = std::min(stats->min_step, h);
                }
                if (!clipped) {
                    const double grow =
                        en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
                    h_ctrl = h * grow;
                }
            } else {
                if (stats) ++stats->steps_rejected;
                h_ctrl = h * std::clamp(0.9 * std::pow(en, -0.2), 0.2, 1.0);
            }
        }
        on_sample(int(target), t_end, y);
    }
}

void integrate_rk4(const Matrix& rho0, const Model& model, const IntegratorSpec& spec,
                   const SampleCallback& on_sample, IntegrationStats* stats) {
    const Eigen::Index d = rho0.rows();
    Matrix y = rho0;
    Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), ytmp(d, d), scratch(d, d);
    Model::Workspace ws;

    on_sample(0, 0.0, y);
    if (stats) stats->min_step = std::numeric_limits<double>::max();

    for (size_t target = 1; target < spec.t_grid.size(); ++target) {
        const double t0 = spec.t_grid[target - 1];
        const double t1 = spec.t_grid[target];
        const long nsub = std::max(1L, std::lround(std::ceil((t1 - t0) / spec.dt)));
        const double h = (t1 - t0) / double(nsub);
        for (long i = 0; i < nsub; ++i) {
            model.rhs_into(y, k1, ws);
            ytmp = y + (0.5 * h) * k1;
            model.rhs_into(ytmp, k2, ws);
            ytmp = y + (0.5 * h) * k2;
            model.rhs_into(ytmp, k3, ws);
            ytmp = y + h * k3;
            model.rhs_into(ytmp, k4, ws);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            symmetrize(y, scratch, stats);
            if (stats) {
                ++stats->steps_accepted;
                stats->min_step = std::min(stats->min_step, h);
            }
        }
        check_finite(y, t1);
        on_sample(int(target), t1, y);
    }
}

void integrate_expm(const Matrix& rho0, const Model& model, const IntegratorSpec& spec,
                    const SampleCallback& on_sample, IntegrationStats* stats) {
    const Liouvillian liou = liouvillian_matrix(model.config());
    const int d = liou.dims.total_dim();
    Vector v = Eigen::Map<const Vector>(rho0.data(), d * d);

    // Uniform grids produce step lengths differing only in the last ulp;
    // quantize the cache key so one exponential serves them all.
    const double key_scale = 1e12 / spec.t_grid.back();
    std::map<long long, Matrix> propagators;
    on_sample(0, 0.0, rho0);
    for (size_t i = 1; i < spec.t_grid.size(); ++i) {
        const double dt = spec.t_grid[i] - spec.t_grid[i - 1];
        const long long key = std::llround(dt * key_scale);
        auto it = propagators.find(key);
        if (it == propagators.end())
            it = propagators.emplace(key, Matrix((dt * liou.matrix).exp())).first;
        v = it->second * v;
        if (stats) ++stats->steps_accepted;
        Matrix state = Eigen::Map<const Matrix>(v.data(), d, d);
        check_finite(state, spec.t_grid[i]);
        on_sample(int(i), spec.t_grid[i], state);
    }
}

}  // namespace

void integrate(const Matrix& rho0, const Model& model, const IntegratorSpec& spec,
               const SampleCallback& on_sample, IntegrationStats* stats) {
    spec.validate();
    const int d = model.config().dims().total_dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("integrate: initial state dimension mismatch");
    switch (spec.method) {
        case Method::RK45Adaptive: integrate_rk45(rho0, model, spec, on_sample, stats); break;
        case Method::RK4Fixed: integrate_rk4(rho0, model, spec, on_sample, stats); break;
        case Method::ExpmOracle: integrate_expm(rho0, model, spec, on_sample, stats); break;
    }
}

std::vector<Matrix> integrate_states(const Matrix& rho0, const Model& model,
                                     const IntegratorSpec& spec, IntegrationStats* stats) {
    std::vector<Matrix> states(spec.t_grid.size());
    integrate(rho0, model, spec,
              [&](int i, double, const Matrix& s) { states[size_t(i)] = s; }, stats);
    return states;
}

Matrix evolve_expm(const Liouvillian& liou, const Matrix& rho0, double t) {
    const int d = liou.dims.total_dim();
    if (rho0.rows() != d || rho0.cols() != d)
        throw std::invalid_argument("evolve_expm: state dimension mismatch");
    const Matrix propagator = (t * liou.matrix).exp();
    const Vector v = propagator * Eigen::Map<const Vector>(rho0.data(), d * d);
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

}  // namespace qubath
