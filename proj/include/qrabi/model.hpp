// model.hpp — The two-qubit quantum Rabi Hamiltonian, its parity-resolved
// exact diagonalization, analytic limit regimes used as cross-checks, and
// adaptive Fock-cutoff convergence.

#pragma once

#include <functional>
#include <vector>

#include "qrabi/types.hpp"

namespace qrabi::model {

// All frequencies and couplings are dimensionless multiples of the chosen
// reference frequency.
struct ModelParams {
    double omega = 1.0;
    double delta1 = 1.0;
    double delta2 = 1.0;
    double g1 = 0.0;
    double g2 = 0.0;

    void validate() const;
    ModelParams decoupled() const {
        ModelParams p = *this;
        p.g1 = p.g2 = 0.0;
        return p;
    }
};

struct EigenSystem {
    HilbertSpace space;
    Eigen::VectorXd energies;   // ascending
    Matrix states;              // orthonormal columns
    Eigen::VectorXi parities;   // ±1 per state
    int n_fock_used = 0;

    int levels() const { return static_cast<int>(energies.size()); }
};

// Ĥ = ω â†â + Σᵢ (Δᵢ/2) σ̂z⁽ⁱ⁾ + Σᵢ gᵢ (â + â†) σ̂x⁽ⁱ⁾.
Operator build_hamiltonian(const ModelParams& params, const HilbertSpace& space);

// Full spectral decomposition with parity labels. The Hamiltonian commutes
// with π̂ for every model in this library, in which case the even/odd parity
// sectors are diagonalized independently (each eigenvector then carries exact
// parity, including inside degenerate clusters). A Hermitian input that does
// not commute with π̂ falls back to a plain eigensolve with a definite-parity
// rotation applied inside each degenerate cluster.
EigenSystem diagonalize(const Operator& hamiltonian);

// Starting Fock cutoff max(16, ⌈d² + 6d + 20⌉), d = (g₁+g₂)/ω.
int starting_cutoff(const ModelParams& params);

struct CutoffOptions {
    int max_fock = 1024;
    double rel_tol = 1e-6;
    double abs_tol = 1e-9;
};

struct ConvergedCutoff {
    int n_fock = 0;
    EigenSystem eigs;               // at n_fock
    std::vector<double> scalars;    // converged target values
};

// Doubles the cutoff until every scalar produced by the callback is stable.
// The probe at twice the returned cutoff is allowed to exceed max_fock; a
// candidate cutoff beyond max_fock is an error carrying the offending value.
using ScalarFn = std::function<std::vector<double>(const EigenSystem&)>;
ConvergedCutoff converge_cutoff(const ModelParams& params, const ScalarFn& scalars,
                                const CutoffOptions& options = {});

struct DispersiveResult {
    Operator hamiltonian;
    double coupling;  // J₁₂ (RWA) or J̄₁₂ (non-RWA)
};

// RWA dispersive Hamiltonian; J₁₂ = g₁g₂(1/δ₁ + 1/δ₂), δᵢ = Δᵢ − ω.
DispersiveResult dispersive_rwa(const ModelParams& params, const HilbertSpace& space);

// Non-RWA dispersive Hamiltonian with Ising σ̂x σ̂x coupling and the
// (â†+â)² σ̂z terms; J̄₁₂ = g₁g₂(1/δ₁ + 1/δ₂ − 1/(2Δ₁−δ₁) − 1/(2Δ₂−δ₂)).
DispersiveResult dispersive_nonrwa(const ModelParams& params, const HilbertSpace& space);

// Leading-order deep-strong-coupling energies: ωn − g±²/ω, each twofold,
// g± = g₁ ± g₂; the lowest n_levels values in ascending order.
std::vector<double> dsc_spectrum(const ModelParams& params, int n_levels);

// One adiabatic product state |j,m⟩ ⊗ D̂(−2mg/ω)|n⟩ built from collective-spin
// eigenstates of Ŝx = (σ̂x⁽¹⁾+σ̂x⁽²⁾)/2. Requires g₁ = g₂.
struct AdiabaticState {
    int j = 0;
    int m = 0;
    int fock_index = 0;
    double energy_estimate = 0.0;
    Vector state;
};
std::vector<AdiabaticState> adiabatic_eigenstates(const ModelParams& params,
                                                  const HilbertSpace& space, int n_max);

} // namespace qrabi::model
