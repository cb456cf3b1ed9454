// quantifiers.hpp — Nonclassicality and correlation measures evaluated on the
// thermal state: dressed G²(0), quadrature squeezing, negativity, concurrence,
// mutual information, quantum discord, relative entropy of coherence, and
// local quantum uncertainty.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qrabi/dissipator.hpp"
#include "qrabi/model.hpp"
#include "qrabi/thermal.hpp"
#include "qrabi/types.hpp"

namespace qrabi::quant {

enum class Field {
    G2,
    XExcitations,
    Zeta2,
    NPhotons,
    NegativityQQ,
    NegativityQF,
    Concurrence,
    MutualInfo,
    Discord,
    CoherenceRE,
    Lqu,
    P0,
};

// Declaration-order list and the stable text names used in configs and CSV.
const std::vector<Field>& all_fields();
std::string field_name(Field f);
Field field_from_name(const std::string& name);

// Dressed emission operator X̂⁺ = −i Σ_{k>j} (E_k−E_j) X_{jk} |φ_j⟩⟨φ_k| on the
// lowest `levels` eigenstates, X_{jk} = ⟨φ_j|(â†+â)|φ_k⟩. Only maps down the
// spectrum, so it annihilates the ground state by construction.
struct DressedJumpOperator {
    int levels = 0;
    Matrix xplus;
};
DressedJumpOperator dressed_jump_operator(const model::EigenSystem& eigs, int levels);

// G²(0) = ⟨(X̂⁻)²(X̂⁺)²⟩ / ⟨X̂⁻X̂⁺⟩² on a state expressed in the same truncated
// eigenbasis as the jump operator. g2 is empty (undefined) when the emission
// rate ⟨X̂⁻X̂⁺⟩ falls below 1e-14.
struct G2Result {
    std::optional<double> g2;
    double x_excitations = 0.0;
};
G2Result dressed_g2(const Matrix& rho_eigenbasis, const DressedJumpOperator& x);

// ζ² = 1 + 2⟨â†â⟩ − 2|⟨â²⟩| on the full-space state (bare operators; the
// paper's switch-off protocol). Falls back to the θ-minimized mean-subtracted
// quadrature variance if ⟨â⟩ fails the parity-symmetry check |⟨â⟩| ≤ 1e-8.
// Vacuum gives exactly 1.
struct SqueezingResult {
    double zeta2 = 1.0;
    double n_photons = 0.0;
};
SqueezingResult squeezing(const DensityMatrix& rho_full);

// N = Σᵢ (|εᵢ|−εᵢ)/2 over the spectrum of the partial transpose.
double negativity(const DensityMatrix& rho, const std::set<int>& transposed_factors);
double negativity_qubit_pair(const Matrix& rho_qq);  // 4×4, transpose on qubit 1

// Wootters concurrence of a two-qubit state.
double concurrence(const Matrix& rho_qq);

// I = S(ρ_A) + S(ρ_B) − S(ρ_AB) in bits; A = factors before `cut`.
double mutual_information(const DensityMatrix& rho, int cut);
double mutual_information_qq(const Matrix& rho_qq);

enum class MeasuredSide { A, B };
struct DiscordOptions {
    int grid = 64;              // uniform (θ,φ) scan resolution
    double refine_tol = 1e-8;   // parameter tolerance of the local refinement
    int max_refine_iters = 400;
};
// D = S(ρ_measured) − S(ρ_AB) + min over rank-1 projective measurements of the
// average conditional entropy of the other qubit. Grid scan plus
// deterministic Nelder–Mead refinement.
double quantum_discord(const Matrix& rho_qq, MeasuredSide side = MeasuredSide::A,
                       const DiscordOptions& options = {});

// C_RE = S(diag ρ) − S(ρ) in the σ̂z ⊗ σ̂z product basis, in bits.
double coherence_re(const Matrix& rho_qq);

// Local quantum uncertainty U = 1 − λ_max(W), W_ij = Tr[√ρ (σᵢ⊗1) √ρ (σⱼ⊗1)].
double lqu(const Matrix& rho_qq);

struct QuantifierReport {
    std::optional<double> g2;  // empty when not requested or undefined (see x_excitations)
    std::optional<double> x_excitations;
    std::optional<double> zeta2;
    std::optional<double> n_photons;
    std::optional<double> negativity_qq;
    std::optional<double> negativity_q_f;
    std::optional<double> concurrence;
    std::optional<double> mutual_info;
    std::optional<double> discord;
    std::optional<double> coherence_re;
    std::optional<double> lqu;
    std::optional<double> p0;
    std::optional<double> gap_ratio;
    int n_fock_used = 0;
    int m_used = 0;

    std::optional<double>& by_field(Field f);
    const std::optional<double>& by_field(Field f) const;
};

struct EvalOptions {
    std::vector<Field> quantifiers = all_fields();
    bool include_gap = false;
    double prune_tol = 1e-14;
    model::CutoffOptions cutoff;
    int g2_guard_levels = 8;   // extra eigenbasis levels above the populated set
    int gap_levels_cap = 40;
    DiscordOptions discord;
};

// Adaptive Fock cutoff converging the requested quantifier at temperature T.
int choose_cutoff(const model::ModelParams& params, double T, Field target,
                  const EvalOptions& options = {});

// One grid point end to end: adaptive cutoff on the requested quantifiers,
// Gibbs state, and every requested report field.
QuantifierReport evaluate_all(const model::ModelParams& params, const bath::BathParams& bath,
                              double T, const EvalOptions& options);

} // namespace qrabi::quant
