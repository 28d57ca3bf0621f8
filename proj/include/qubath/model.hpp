#pragma once

#include "qubath/types.hpp"

#include <string>
#include <vector>

namespace qubath {

enum class Coupling { JaynesCummings, Dephasing };
enum class DissipatorKind { QuantumOptical, CaldeiraLeggett, DepolarizingHeatBath };

std::string to_string(Coupling c);
std::string to_string(DissipatorKind d);

/// Parameters of one master equation: qubit-oscillator coupling,
/// dissipation model acting on the mode, and bath temperature via nbar.
/// All quantities are dimensionless (energies in units of the mode quantum,
/// times in units of the inverse mode frequency).
struct ModelConfig {
    Coupling coupling = Coupling::JaynesCummings;
    DissipatorKind dissipator = DissipatorKind::QuantumOptical;
    double delta = 1.0;  // qubit splitting / mode frequency
    double g = 0.1;      // qubit-mode coupling
    double kappa = 0.1;  // dissipation rate (energy decay rate of the mode)
    double nbar = 0.0;   // bath mean occupation
    int n_max = 40;      // Fock truncation
    bool dh_half_rate = true;  // run the depolarizing bath at kappa/2

    HilbertDims dims() const { return HilbertDims(n_max); }

    /// Throws std::invalid_argument with a field-level message.
    void validate() const;

    /// Non-fatal issues, e.g. Caldeira-Leggett outside its underdamped
    /// validity domain (kappa > 1).
    std::vector<std::string> warnings() const;

    /// Rate entering the master equation as -(kappa_eff/2) D[rho].
    /// QO: kappa. DH: kappa/2 when dh_half_rate is set. CL: kappa/2 always,
    /// which normalizes the quadratic-friction term so that kappa is the
    /// energy decay rate, the same calibration the other two models satisfy
    /// by construction.
    double effective_kappa() const;
};

// Hamiltonians, Hermitian by construction.
// H_JC = (delta/2) sz (x) I + I (x) a^dag a + g (s+ (x) a + s- (x) a^dag)
Matrix build_h_jc(double delta, double g, int n_max);
// H_D  = (delta/2) sz (x) I + I (x) a^dag a + (g/sqrt(2)) sz (x) (a + a^dag)
Matrix build_h_dephasing(double delta, double g, int n_max);
Matrix build_hamiltonian(const ModelConfig& cfg);

// Dissipators D[rho] on the composite space, unscaled (the master equation
// applies -(kappa_eff/2)). Mode operators act as I (x) a etc.
//
// Quantum optical:
//   (nbar+1)(a^dag a rho - 2 a rho a^dag + rho a^dag a)
//   + nbar (a a^dag rho - 2 a^dag rho a + rho a a^dag)
Matrix dissipator_qo(const Matrix& rho, double nbar, const HilbertDims& dims);
// Caldeira-Leggett: 2i[x,{p,rho}] + 2(2 nbar + 1)[x,[x,rho]]
Matrix dissipator_cl(const Matrix& rho, double nbar, const HilbertDims& dims);
// Depolarizing heat bath: 2(rho - tr_e rho (x) w_T); exactly traceless and
// zero on any product state rho_a (x) w_T.
Matrix dissipator_dh(const Matrix& rho, double nbar, const HilbertDims& dims);

/// Full master-equation right-hand side, -i[H,rho] - (kappa_eff/2) D[rho].
/// Convenience entry point that rebuilds operators per call; the Model class
/// below caches them for integration loops.
Matrix master_rhs(const Matrix& rho, const ModelConfig& cfg);

/// Immutable bundle of Hamiltonian, lifted mode operators and the thermal
/// state; shareable across threads.
class Model {
  public:
    explicit Model(const ModelConfig& cfg);

    const ModelConfig& config() const { return cfg_; }
    const Matrix& hamiltonian() const { return h_; }
    const Matrix& mode_thermal_state() const { return w_thermal_; }

    /// rho_a (x) w_T, the product initial state of the evolution protocol.
    Matrix initial_state(const Matrix& qubit_state) const;

    struct Workspace {
        Matrix t1, t2;
    };

    void rhs_into(const Matrix& rho, Matrix& out, Workspace& ws) const;
    Matrix rhs(const Matrix& rho) const;

  private:
    ModelConfig cfg_;
    double keff_;
    Matrix h_;
    Matrix w_thermal_;      // oscillator space
    Matrix left_, right_;   // one-sided parts: out = left rho + rho right + sandwiches
    Matrix a_, ad_, x_, p_; // lifted, only those the dissipator needs
    Complex c_sand_a_, c_sand_ad_;           // QO sandwich coefficients
    Complex c_xx_, c_xp_, c_px_;             // CL sandwich coefficients
};

/// Dense superoperator L with column-stacking vectorization:
/// L vec(rho) = vec(master_rhs(rho)). Assembled from Kronecker identities,
/// independent of the Model::rhs code path, and used as the propagation
/// oracle.
struct Liouvillian {
    Matrix matrix;  // (D^2) x (D^2), D = 2(n_max+1)
    HilbertDims dims;

    Matrix apply(const Matrix& rho) const;
};

/// Refuses to build when D^2 exceeds max_superop_dim (memory guard).
Liouvillian liouvillian_matrix(const ModelConfig& cfg, int max_superop_dim = 2048);

}  // namespace qubath
