// thermal.cpp — Gibbs populations and state assembly.

#include "qrabi/thermal.hpp"

#include <cmath>
#include <stdexcept>

namespace qrabi::thermal {

void ThermalSpec::validate() const {
    if (T < 0) throw std::invalid_argument("ThermalSpec: negative temperature");
    if (!(prune_tol > 0) || prune_tol > 1e-6)
        throw std::invalid_argument("ThermalSpec: prune_tol must lie in (0, 1e-6]");
}

std::vector<double> populations(const model::EigenSystem& eigs, const ThermalSpec& spec) {
    spec.validate();
    const int n = eigs.levels();
    std::vector<double> p(n, 0.0);
    if (spec.T == 0.0) {
        const double spread = eigs.energies(n - 1) - eigs.energies(0);
        const double cluster_tol = 1e-9 * std::max(spread, 1.0);
        int count = 0;
        while (count < n && eigs.energies(count) - eigs.energies(0) < cluster_tol) ++count;
        for (int k = 0; k < count; ++k) p[k] = 1.0 / count;
        return p;
    }
    // Shift by E₀ before exponentiating so small T cannot overflow.
    double z = 0.0;
    for (int k = 0; k < n; ++k) {
        p[k] = std::exp(-(eigs.energies(k) - eigs.energies(0)) / spec.T);
        z += p[k];
    }
    for (double& v : p) v /= z;
    return p;
}

int populated_levels(const std::vector<double>& pops, double prune_tol) {
    int count = static_cast<int>(pops.size());
    while (count > 0 && pops[count - 1] < prune_tol) --count;
    return count;
}

DensityMatrix gibbs_state(const model::EigenSystem& eigs, const ThermalSpec& spec) {
    const std::vector<double> pops = populations(eigs, spec);
    const int keep = std::max(1, populated_levels(pops, spec.prune_tol));
    double norm = 0.0;
    for (int k = 0; k < keep; ++k) norm += pops[k];

    Eigen::VectorXd weights(keep);
    for (int k = 0; k < keep; ++k) weights(k) = pops[k] / norm;

    const auto v = eigs.states.leftCols(keep);
    Matrix rho = v * weights.cast<cplx>().asDiagonal() * v.adjoint();
    rho = ((rho + rho.adjoint()) / 2.0).eval();  // strip roundoff anti-Hermitian part
    return DensityMatrix(eigs.space.factor_dims(), std::move(rho));
}

} // namespace qrabi::thermal
