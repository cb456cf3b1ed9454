// thermal.hpp — Canonical Gibbs state of the diagonalized system.

#pragma once

#include <vector>

#include "qrabi/model.hpp"
#include "qrabi/types.hpp"

namespace qrabi::thermal {

struct ThermalSpec {
    double T = 0.1;               // k_B = 1, units of the reference frequency
    double prune_tol = 1e-14;     // populations below this are dropped from state sums

    void validate() const;
};

// P_k = e^{−(E_k−E₀)/T} / Z. At T = 0 the (possibly degenerate) ground
// cluster is filled with equal weights.
std::vector<double> populations(const model::EigenSystem& eigs, const ThermalSpec& spec);

// ρ̂ = Σ_k P_k |φ_k⟩⟨φ_k| with populations below prune_tol omitted and the
// trace renormalized.
DensityMatrix gibbs_state(const model::EigenSystem& eigs, const ThermalSpec& spec);

// Index one past the last population ≥ prune_tol (populations are
// nonincreasing).
int populated_levels(const std::vector<double>& populations, double prune_tol);

} // namespace qrabi::thermal
