// dissipator.cpp — Dressed master-equation construction and spectral analysis.

#include "qrabi/dissipator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qrabi/linalg.hpp"
#include "qrabi/qops.hpp"

namespace qrabi::bath {

BathParams BathParams::defaults(double omega, double temperature) {
    BathParams b;
    b.alpha = 1e-3 * omega;
    b.omega_c = 10.0 * omega;
    b.T = temperature;
    return b;
}

void BathParams::validate() const {
    if (!(alpha > 0)) throw std::invalid_argument("BathParams: alpha must be positive");
    if (!(omega_c > 0)) throw std::invalid_argument("BathParams: omega_c must be positive");
    if (T < 0) throw std::invalid_argument("BathParams: negative temperature");
    if (channels.empty()) throw std::invalid_argument("BathParams: no bath channels");
}

double spectral_density(double gap, const BathParams& bath) {
    if (gap < 0) throw std::invalid_argument("spectral_density: negative gap");
    return M_PI * bath.alpha * gap * std::exp(-gap / bath.omega_c);
}

int required_levels(const model::EigenSystem& eigs, double T, double pop_tol) {
    const int n = eigs.levels();
    if (T <= 0) return 1;
    const double needed = -T * std::log(pop_tol);  // gap with e^{−gap/T} = pop_tol
    for (int m = 1; m < n; ++m)
        if (eigs.energies(m) - eigs.energies(0) > needed) return m + 1;
    return n;
}

namespace {

// ⟨φ_j|Ô_u|φ_k⟩ for the lowest M eigenstates, applying the bare operator
// column by column (no dim×dim operator is formed).
Matrix channel_elements(Channel ch, const model::EigenSystem& eigs, int M) {
    const HilbertSpace& space = eigs.space;
    const int F = space.n_fock;
    const auto v = eigs.states.leftCols(M);
    Matrix b(space.dim(), M);
    for (int col = 0; col < M; ++col) {
        const Vector vk = v.col(col);
        switch (ch) {
            case Channel::Cavity:
                b.col(col) = ops::apply_annihilation(space, vk) + ops::apply_creation(space, vk);
                break;
            case Channel::Qubit1:
                for (int q1 = 0; q1 < 2; ++q1)
                    for (int q2 = 0; q2 < 2; ++q2)
                        b.col(col).segment((q1 * 2 + q2) * F, F) =
                            vk.segment(((1 - q1) * 2 + q2) * F, F);
                break;
            case Channel::Qubit2:
                for (int q1 = 0; q1 < 2; ++q1)
                    for (int q2 = 0; q2 < 2; ++q2)
                        b.col(col).segment((q1 * 2 + q2) * F, F) =
                            vk.segment((q1 * 2 + (1 - q2)) * F, F);
                break;
        }
    }
    return v.adjoint() * b;
}

} // namespace

DressedTransitionTable transition_table(const model::EigenSystem& eigs,
                                        const BathParams& bath, int M) {
    bath.validate();
    if (M < 2 || M > eigs.levels())
        throw std::invalid_argument("transition_table: M must lie in [2, number of eigenstates]");

    // The truncated generator thermalizes the retained levels regardless of M
    // (rates are pairwise KMS-balanced), but a truncation that cuts into
    // appreciably occupied levels is almost certainly a caller mistake.
    if (bath.T > 0) {
        const double edge_occupancy =
            std::exp(-(eigs.energies(M - 1) - eigs.energies(0)) / bath.T);
        if (edge_occupancy > 1e-3)
            throw std::invalid_argument(
                "transition_table: M=" + std::to_string(M) +
                " truncates at relative occupancy " + std::to_string(edge_occupancy) +
                "; need M>=" + std::to_string(required_levels(eigs, bath.T)) +
                " for occupancy below 1e-12 at T=" + std::to_string(bath.T));
    }

    const double spread = eigs.energies(eigs.levels() - 1) - eigs.energies(0);
    DressedTransitionTable table;
    table.levels = M;
    table.temperature = bath.T;
    table.degeneracy_tol = 1e-9 * std::max(spread, 1.0);

    for (Channel ch : bath.channels) {
        const Matrix s = channel_elements(ch, eigs, M);
        std::vector<DressedTransition> list;
        list.reserve(M * (M - 1) / 2);
        for (int j = 1; j < M; ++j)
            for (int k = 0; k < j; ++k) {
                DressedTransition t;
                t.upper = j;
                t.lower = k;
                t.gap = eigs.energies(j) - eigs.energies(k);
                t.amplitude = s(j, k);
                const double s2 = std::norm(t.amplitude);
                if (t.gap >= table.degeneracy_tol && s2 > 0) {
                    t.gamma = spectral_density(t.gap, bath) * s2;
                    if (bath.T > 0) {
                        t.n_therm = 1.0 / std::expm1(t.gap / bath.T);
                        // Γ·n without cancellation: π α |S|² e^{−Δ/ω_c} · Δ/(e^{Δ/T}−1).
                        t.rate_up = M_PI * bath.alpha * s2 * std::exp(-t.gap / bath.omega_c) *
                                    (t.gap / std::expm1(t.gap / bath.T));
                    }
                    t.rate_down = t.gamma + t.rate_up;  // Γ(1+n)
                }
                list.push_back(t);
            }
        table.channels.emplace_back(ch, std::move(list));
    }
    return table;
}

Matrix build_liouvillian(const DressedTransitionTable& table, const model::EigenSystem& eigs,
                         int M) {
    if (M != table.levels)
        throw std::invalid_argument("build_liouvillian: table was built for a different M");
    const long dim = static_cast<long>(M) * M;
    Matrix l = Matrix::Zero(dim, dim);
    auto vec = [M](int r, int c) { return static_cast<long>(r) + static_cast<long>(M) * c; };

    // Unitary part, energies shifted by E₀ (the commutator is shift-invariant).
    for (int r = 0; r < M; ++r)
        for (int c = 0; c < M; ++c)
            l(vec(r, c), vec(r, c)) -=
                cplx(0.0, 1.0) * (eigs.energies(r) - eigs.energies(c));

    // D[|a⟩⟨b|] at rate w: feeds ρ_aa from ρ_bb and damps row/column b.
    auto add_dissipator = [&](int a, int b, double w) {
        if (w <= 0) return;
        l(vec(a, a), vec(b, b)) += w;
        for (int c = 0; c < M; ++c) l(vec(b, c), vec(b, c)) -= 0.5 * w;
        for (int r = 0; r < M; ++r) l(vec(r, b), vec(r, b)) -= 0.5 * w;
    };

    for (const auto& [ch, list] : table.channels) {
        (void)ch;
        for (const DressedTransition& t : list) {
            add_dissipator(t.lower, t.upper, t.rate_down);
            add_dissipator(t.upper, t.lower, t.rate_up);
        }
    }
    return l;
}

Matrix steady_state(const Matrix& liouvillian) {
    const long dim = liouvillian.rows();
    const int m = static_cast<int>(std::lround(std::sqrt(double(dim))));
    if (static_cast<long>(m) * m != dim)
        throw std::invalid_argument("steady_state: Liouvillian size is not a perfect square");

    const linalg::Svd svd = linalg::svd_right(liouvillian);
    const auto& s = svd.singular_values;
    const double smallest = s(dim - 1);
    const double second = s(dim - 2);
    if (second <= 1e3 * smallest)
        throw std::runtime_error("steady_state: non-unique steady state (singular values " +
                                 std::to_string(second) + " vs " + std::to_string(smallest) + ")");

    Matrix rho = Eigen::Map<const Matrix>(svd.v.col(dim - 1).data(), m, m);
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    const cplx tr = rho.trace();
    if (std::abs(tr) < 1e-12)
        throw std::runtime_error("steady_state: null vector has vanishing trace");
    rho /= tr;
    return rho;
}

DensityMatrix embed(const Matrix& rho_eigenbasis, const model::EigenSystem& eigs) {
    const int m = static_cast<int>(rho_eigenbasis.rows());
    if (m > eigs.levels())
        throw std::invalid_argument("embed: more levels than the eigensystem provides");
    const auto v = eigs.states.leftCols(m);
    Matrix full = v * rho_eigenbasis * v.adjoint();
    full = ((full + full.adjoint()) / 2.0).eval();
    return DensityMatrix(eigs.space.factor_dims(), std::move(full));
}

double liouvillian_gap(const Matrix& liouvillian) {
    const Vector mu = linalg::eigvals(liouvillian);
    const long n = mu.size();

    long zero_index = 0;
    double zero_abs = std::abs(mu(0));
    double max_re = mu(0).real();
    for (long i = 1; i < n; ++i) {
        max_re = std::max(max_re, mu(i).real());
        const double a = std::abs(mu(i));
        if (a < zero_abs) {
            zero_abs = a;
            zero_index = i;
        }
    }
    if (max_re > 1e-8)
        throw std::runtime_error("liouvillian_gap: unstable spectrum, max Re = " +
                                 std::to_string(max_re));

    double slowest = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i)
        if (i != zero_index) slowest = std::max(slowest, mu(i).real());
    return std::max(0.0, -slowest);
}

double gap_ratio(const model::ModelParams& params, const BathParams& bath, int M) {
    const HilbertSpace space(model::starting_cutoff(params));
    const model::EigenSystem eigs =
        model::diagonalize(model::build_hamiltonian(params, space));
    const model::EigenSystem eigs0 =
        model::diagonalize(model::build_hamiltonian(params.decoupled(), space));

    const double gap = liouvillian_gap(build_liouvillian(transition_table(eigs, bath, M), eigs, M));
    const double gap0 =
        liouvillian_gap(build_liouvillian(transition_table(eigs0, bath, M), eigs0, M));
    if (gap0 <= 0) throw std::runtime_error("gap_ratio: decoupled gap vanished");
    return gap / gap0;
}

} // namespace qrabi::bath
