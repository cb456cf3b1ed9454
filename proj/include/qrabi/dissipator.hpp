// dissipator.hpp — Dressed Born–Markov Liouvillian in the truncated energy
// eigenbasis: Ohmic rates with KMS detailed balance, steady state, and
// spectral gap.

#pragma once

#include <utility>
#include <vector>

#include "qrabi/model.hpp"
#include "qrabi/types.hpp"

namespace qrabi::bath {

enum class Channel { Qubit1, Qubit2, Cavity };

struct BathParams {
    double alpha = 1e-3;     // system–environment coupling
    double omega_c = 10.0;   // Ohmic cutoff frequency
    double T = 0.0;          // bath temperature (shared by all channels)
    std::vector<Channel> channels = {Channel::Qubit1, Channel::Qubit2, Channel::Cavity};

    // Paper defaults: α = 0.001·ω, ω_c = 10·ω.
    static BathParams defaults(double omega, double temperature);
    void validate() const;
};

// Ohmic spectral density γ(Δ) = π α Δ e^{−Δ/ω_c}; γ(0) = 0.
double spectral_density(double gap, const BathParams& bath);

struct DressedTransition {
    int upper = 0, lower = 0;  // eigenstate indices, E_upper ≥ E_lower
    double gap = 0.0;          // E_upper − E_lower
    cplx amplitude;            // S_u = ⟨φ_upper|Ô_u|φ_lower⟩
    double gamma = 0.0;        // Γ = γ(gap)·|S|²
    double n_therm = 0.0;      // 1/(e^{gap/T} − 1)
    double rate_down = 0.0;    // Γ(1+n): jump |lower⟩⟨upper|
    double rate_up = 0.0;      // Γ n:    jump |upper⟩⟨lower|
};

struct DressedTransitionTable {
    int levels = 0;
    double temperature = 0.0;
    double degeneracy_tol = 0.0;
    std::vector<std::pair<Channel, std::vector<DressedTransition>>> channels;
};

// All ordered pairs k < j among the lowest M eigenstates, for every bath
// channel. Gaps below the degeneracy tolerance carry zero rates (γ(0) = 0);
// the Γ·n product is evaluated in the cancellation-free form that tends to
// παT|S|² for small gaps. Errors out when M leaves a thermally relevant
// population outside the truncation.
DressedTransitionTable transition_table(const model::EigenSystem& eigs,
                                        const BathParams& bath, int M);

// Liouvillian on vectorized (column-major) M×M density matrices:
// L = −i[Ĥ,·] + Σ_u Σ_{k<j} { Γn D[|φ_j⟩⟨φ_k|] + Γ(1+n) D[|φ_k⟩⟨φ_j|] }.
Matrix build_liouvillian(const DressedTransitionTable& table, const model::EigenSystem& eigs,
                         int M);

// Null vector of L reshaped and Hermitized, trace-normalized. Throws
// "non-unique steady state" unless the second-smallest singular value exceeds
// 1e3× the smallest.
Matrix steady_state(const Matrix& liouvillian);

// Lift an eigenbasis density matrix back to the full composite space.
DensityMatrix embed(const Matrix& rho_eigenbasis, const model::EigenSystem& eigs);

// μ₁ = −max Re over the nonzero spectrum. Any eigenvalue with Re > 1e-8 is a
// construction bug and throws.
double liouvillian_gap(const Matrix& liouvillian);

// μ₁(ω,Δ,g) / μ₁(ω,Δ,0) at identical bath and truncation settings.
double gap_ratio(const model::ModelParams& params, const BathParams& bath, int M);

// Smallest M with e^{−(E_{M−1}−E₀)/T} below pop_tol (clamped to the level
// count).
int required_levels(const model::EigenSystem& eigs, double T, double pop_tol = 1e-12);

} // namespace qrabi::bath
