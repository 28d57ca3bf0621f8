#include "qubath/model.hpp"

#include "qubath/operators.hpp"
#include "qubath/thermal.hpp"

#include <cmath>

namespace qubath {

namespace {
const Complex kI(0.0, 1.0);
}

std::string to_string(Coupling c) {
    return c == Coupling::JaynesCummings ? "jc" : "dephasing";
}

std::string to_string(DissipatorKind d) {
    switch (d) {
        case DissipatorKind::QuantumOptical: return "qo";
        case DissipatorKind::CaldeiraLeggett: return "cl";
        default: return "dh";
    }
}

void ModelConfig::validate() const {
    if (n_max < 1) throw std::invalid_argument("n_max: must be >= 1");
    if (!(g >= 0.0)) throw std::invalid_argument("g: must be >= 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("kappa: must be >= 0");
    if (!(nbar >= 0.0)) throw std::invalid_argument("nbar: must be >= 0");
    if (!std::isfinite(delta)) throw std::invalid_argument("delta: must be finite");
}

std::vector<std::string> ModelConfig::warnings() const {
    std::vector<std::string> w;
    if (dissipator == DissipatorKind::CaldeiraLeggett && kappa > 1.0)
        w.push_back("kappa > 1 is outside the underdamped validity domain of the "
                    "Caldeira-Leggett model");
    return w;
}

double ModelConfig::effective_kappa() const {
    switch (dissipator) {
        case DissipatorKind::CaldeiraLeggett: return kappa / 2.0;
        case DissipatorKind::DepolarizingHeatBath: return dh_half_rate ? kappa / 2.0 : kappa;
        default: return kappa;
    }
}

Matrix build_h_jc(double delta, double g, int n_max) {
    const HilbertDims dims(n_max);
    const Matrix a = ops::annihilation(n_max);
    Matrix h = 0.5 * delta * ops::lift_qubit(ops::sigma_z(), dims) +
               ops::lift_mode(ops::number_op(n_max), dims);
    h += g * (ops::kron(ops::sigma_plus(), a) + ops::kron(ops::sigma_minus(), a.adjoint()));
    return h;
}

Matrix build_h_dephasing(double delta, double g, int n_max) {
    const HilbertDims dims(n_max);
    const Matrix a = ops::annihilation(n_max);
    Matrix h = 0.5 * delta * ops::lift_qubit(ops::sigma_z(), dims) +
               ops::lift_mode(ops::number_op(n_max), dims);
    h += (g / std::sqrt(2.0)) * ops::kron(ops::sigma_z(), Matrix(a + a.adjoint()));
    return h;
}

Matrix build_hamiltonian(const ModelConfig& cfg) {
    return cfg.coupling == Coupling::JaynesCummings
               ? build_h_jc(cfg.delta, cfg.g, cfg.n_max)
               : build_h_dephasing(cfg.delta, cfg.g, cfg.n_max);
}

Matrix dissipator_qo(const Matrix& rho, double nbar, const HilbertDims& dims) {
    const Matrix a = ops::lift_mode(ops::annihilation(dims.n_max), dims);
    const Matrix ad = a.adjoint();
    const Matrix n = ad * a;
    const Matrix m = a * ad;
    Matrix out = (nbar + 1.0) * (n * rho - 2.0 * a * rho * ad + rho * n);
    if (nbar != 0.0) out += nbar * (m * rho - 2.0 * ad * rho * a + rho * m);
    return out;
}

Matrix dissipator_cl(const Matrix& rho, double nbar, const HilbertDims& dims) {
    const Matrix x = ops::lift_mode(ops::position(dims.n_max), dims);
    const Matrix p = ops::lift_mode(ops::momentum(dims.n_max), dims);
    return 2.0 * kI * ops::commutator(x, ops::anticommutator(p, rho)) +
           2.0 * (2.0 * nbar + 1.0) * ops::commutator(x, ops::commutator(x, rho));
}

Matrix dissipator_dh(const Matrix& rho, double nbar, const HilbertDims& dims) {
    const Matrix w = thermal::thermal_state(nbar, dims.n_max);
    return 2.0 * (rho - ops::kron(ops::partial_trace_env(rho, dims), w));
}

Matrix master_rhs(const Matrix& rho, const ModelConfig& cfg) {
    return Model(cfg).rhs(rho);
}

Model::Model(const ModelConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const HilbertDims dims = cfg_.dims();
    keff_ = cfg_.effective_kappa();
    h_ = build_hamiltonian(cfg_);
    w_thermal_ = thermal::thermal_state(cfg_.nbar, cfg_.n_max);

    const double nb = cfg_.nbar;
    switch (cfg_.dissipator) {
        case DissipatorKind::QuantumOptical: {
            a_ = ops::lift_mode(ops::annihilation(cfg_.n_max), dims);
            ad_ = a_.adjoint();
            const Matrix n = ad_ * a_;
            const Matrix m = a_ * ad_;
            const Matrix damp = 0.5 * keff_ * ((nb + 1.0) * n + nb * m);
            left_ = -kI * h_ - damp;
            right_ = kI * h_ - damp;
            c_sand_a_ = keff_ * (nb + 1.0);
            c_sand_ad_ = keff_ * nb;
            break;
        }
        case DissipatorKind::CaldeiraLeggett: {
            x_ = ops::lift_mode(ops::position(cfg_.n_max), dims);
            p_ = ops::lift_mode(ops::momentum(cfg_.n_max), dims);
            // -(keff/2) [2i(xp rho + x rho p - p rho x - rho px)
            //            + 2(2nb+1)(xx rho - 2 x rho x + rho xx)]
            left_ = -kI * h_ - keff_ * (kI * (x_ * p_) + (2.0 * nb + 1.0) * (x_ * x_));
            right_ = kI * h_ - keff_ * (-kI * (p_ * x_) + (2.0 * nb + 1.0) * (x_ * x_));
            c_xx_ = 2.0 * keff_ * (2.0 * nb + 1.0);
            c_xp_ = -kI * keff_;
            c_px_ = kI * keff_;
            break;
        }
        case DissipatorKind::DepolarizingHeatBath: {
            const Matrix id = Matrix::Identity(dims.total_dim(), dims.total_dim());
            left_ = -kI * h_ - 0.5 * keff_ * id;
            right_ = kI * h_ - 0.5 * keff_ * id;
            break;
        }
    }
}

Matrix Model::initial_state(const Matrix& qubit_state) const {
    if (qubit_state.rows() != 2 || qubit_state.cols() != 2)
        throw std::invalid_argument("initial_state: qubit state must be 2x2");
    return ops::kron(qubit_state, w_thermal_);
}

void Model::rhs_into(const Matrix& rho, Matrix& out, Workspace& ws) const {
    out.noalias() = left_ * rho;
    out.noalias() += rho * right_;
    switch (cfg_.dissipator) {
        case DissipatorKind::QuantumOptical:
            ws.t1.noalias() = a_ * rho;
            out.noalias() += c_sand_a_ * (ws.t1 * ad_);
            if (c_sand_ad_ != 0.0) {
                ws.t2.noalias() = ad_ * rho;
                out.noalias() += c_sand_ad_ * (ws.t2 * a_);
            }
            break;
        case DissipatorKind::CaldeiraLeggett:
            ws.t1.noalias() = x_ * rho;
            ws.t2.noalias() = rho * x_;
            out.noalias() += c_xx_ * (ws.t1 * x_);
            out.noalias() += c_xp_ * (ws.t1 * p_);
            out.noalias() += c_px_ * (p_ * ws.t2);
            break;
        case DissipatorKind::DepolarizingHeatBath: {
            // The reset part: +keff tr_e(rho) (x) w_T, written blockwise.
            const int no = cfg_.n_max + 1;
            for (int q = 0; q < 2; ++q)
                for (int qp = 0; qp < 2; ++qp) {
                    const Complex tre = rho.block(q * no, qp * no, no, no).trace();
                    out.block(q * no, qp * no, no, no) += (keff_ * tre) * w_thermal_;
                }
            break;
        }
    }
}

Matrix Model::rhs(const Matrix& rho) const {
    Workspace ws;
    Matrix out(rho.rows(), rho.cols());
    rhs_into(rho, out, ws);
    return out;
}

// --- superoperator assembly (column-stacking) ---

namespace {

// vec(A rho) = (I (x) A) vec(rho)
Matrix super_left(const Matrix& a) {
    return ops::kron(Matrix::Identity(a.rows(), a.cols()), a);
}

// vec(rho B) = (B^T (x) I) vec(rho)
Matrix super_right(const Matrix& b) {
    return ops::kron(b.transpose(), Matrix::Identity(b.rows(), b.cols()));
}

// vec(A rho B) = (B^T (x) A) vec(rho)
Matrix super_sandwich(const Matrix& a, const Matrix& b) { return ops::kron(b.transpose(), a); }

// Superoperator of rho -> tr_e(rho) (x) w, w diagonal on the mode space.
Matrix super_reset(const Matrix& w, const HilbertDims& dims) {
    const int no = dims.osc_dim();
    const int d = dims.total_dim();
    Matrix s = Matrix::Zero(d * d, d * d);
    for (int q = 0; q < 2; ++q)
        for (int qp = 0; qp < 2; ++qp)
            for (int m = 0; m < no; ++m)
                for (int mp = 0; mp < no; ++mp) {
                    if (w(m, mp) == 0.0) continue;
                    const int row = dims.index(q, m);
                    const int col = dims.index(qp, mp);
                    for (int n = 0; n < no; ++n) {
                        const int ri = dims.index(q, n);
                        const int ci = dims.index(qp, n);
                        s(col * d + row, ci * d + ri) += w(m, mp);
                    }
                }
    return s;
}

}  // namespace

Matrix Liouvillian::apply(const Matrix& rho) const {
    const int d = dims.total_dim();
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("Liouvillian::apply: state dimension mismatch");
    const Eigen::Map<const Vector> v(rho.data(), d * d);
    Vector out = matrix * v;
    return Eigen::Map<const Matrix>(out.data(), d, d);
}

Liouvillian liouvillian_matrix(const ModelConfig& cfg, int max_superop_dim) {
    cfg.validate();
    const HilbertDims dims = cfg.dims();
    const int d = dims.total_dim();
    if (d * d > max_superop_dim)
        throw std::invalid_argument("liouvillian_matrix: D^2 = " + std::to_string(d * d) +
                                    " exceeds the cap of " + std::to_string(max_superop_dim));

    const Matrix h = build_hamiltonian(cfg);
    const double keff = cfg.effective_kappa();
    const double nb = cfg.nbar;

    Matrix l = -kI * (super_left(h) - super_right(h));
    Matrix dsup;
    switch (cfg.dissipator) {
        case DissipatorKind::QuantumOptical: {
            const Matrix a = ops::lift_mode(ops::annihilation(cfg.n_max), dims);
            const Matrix ad = a.adjoint();
            const Matrix n = ad * a;
            const Matrix m = a * ad;
            dsup = (nb + 1.0) * (super_left(n) - 2.0 * super_sandwich(a, ad) + super_right(n)) +
                   nb * (super_left(m) - 2.0 * super_sandwich(ad, a) + super_right(m));
            break;
        }
        case DissipatorKind::CaldeiraLeggett: {
            const Matrix x = ops::lift_mode(ops::position(cfg.n_max), dims);
            const Matrix p = ops::lift_mode(ops::momentum(cfg.n_max), dims);
            const Matrix com_x = super_left(x) - super_right(x);
            const Matrix anti_p = super_left(p) + super_right(p);
            dsup = 2.0 * kI * (com_x * anti_p) + 2.0 * (2.0 * nb + 1.0) * (com_x * com_x);
            break;
        }
        case DissipatorKind::DepolarizingHeatBath: {
            const Matrix w = thermal::thermal_state(nb, cfg.n_max);
            dsup = 2.0 * (Matrix::Identity(d * d, d * d) - super_reset(w, dims));
            break;
        }
    }
    l -= (0.5 * keff) * dsup;
    return Liouvillian{std::move(l), dims};
}

}  // namespace qubath
