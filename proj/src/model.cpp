// model.cpp — Hamiltonian assembly and parity-resolved diagonalization.

#include "qrabi/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qrabi/linalg.hpp"
#include "qrabi/qops.hpp"

namespace qrabi::model {

void ModelParams::validate() const {
    if (!(omega > 0)) throw std::invalid_argument("ModelParams: omega must be positive");
    if (delta1 < 0 || delta2 < 0) throw std::invalid_argument("ModelParams: delta must be >= 0");
    if (g1 < 0 || g2 < 0) throw std::invalid_argument("ModelParams: g must be >= 0");
}

Operator build_hamiltonian(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    const int F = space.n_fock;
    Matrix h = Matrix::Zero(space.dim(), space.dim());
    auto sz = [](int q) { return q == 1 ? 1.0 : -1.0; };
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (int n = 0; n < F; ++n) {
                const int i = space.index(q1, q2, n);
                h(i, i) = params.omega * n + 0.5 * params.delta1 * sz(q1) +
                          0.5 * params.delta2 * sz(q2);
                if (n + 1 < F) {
                    // g (â + â†) σ̂x: every unordered pair entered once via the
                    // photon-raising link.
                    const double amp = std::sqrt(double(n + 1));
                    const int j1 = space.index(1 - q1, q2, n + 1);
                    h(j1, i) += params.g1 * amp;
                    h(i, j1) += params.g1 * amp;
                    const int j2 = space.index(q1, 1 - q2, n + 1);
                    h(j2, i) += params.g2 * amp;
                    h(i, j2) += params.g2 * amp;
                }
            }
    return Operator(space, std::move(h));
}

namespace {

struct SectorSplit {
    std::vector<int> even, odd;
};

SectorSplit parity_sectors(const HilbertSpace& space) {
    SectorSplit s;
    for (int i = 0; i < space.dim(); ++i)
        (ops::basis_parity(space, i) > 0 ? s.even : s.odd).push_back(i);
    return s;
}

bool commutes_with_parity(const Matrix& h, const SectorSplit& s, double tol) {
    for (int r : s.even)
        for (int c : s.odd)
            if (std::abs(h(r, c)) > tol || std::abs(h(c, r)) > tol) return false;
    return true;
}

EigenSystem merge_sectors(const HilbertSpace& space, const Matrix& h, const SectorSplit& split) {
    const int dim = space.dim();
    EigenSystem out{space, Eigen::VectorXd(dim), Matrix::Zero(dim, dim),
                    Eigen::VectorXi(dim), space.n_fock};

    struct Level {
        double e;
        int parity;
        int sector_col;
    };
    std::vector<Level> levels;
    levels.reserve(dim);

    Matrix vec_even, vec_odd;
    for (int pass = 0; pass < 2; ++pass) {
        const auto& idx = pass == 0 ? split.even : split.odd;
        const int sd = static_cast<int>(idx.size());
        Matrix block(sd, sd);
        for (int c = 0; c < sd; ++c)
            for (int r = 0; r < sd; ++r) block(r, c) = h(idx[r], idx[c]);
        linalg::HermEigen es = linalg::eigh(block);
        for (int k = 0; k < sd; ++k)
            levels.push_back({es.values(k), pass == 0 ? 1 : -1, k});
        (pass == 0 ? vec_even : vec_odd) = std::move(es.vectors);
    }

    std::vector<int> order(levels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (levels[a].e != levels[b].e) return levels[a].e < levels[b].e;
        return levels[a].parity > levels[b].parity;  // deterministic tie-break
    });

    for (int k = 0; k < dim; ++k) {
        const Level& lv = levels[order[k]];
        out.energies(k) = lv.e;
        out.parities(k) = lv.parity;
        const auto& idx = lv.parity > 0 ? split.even : split.odd;
        const Matrix& vecs = lv.parity > 0 ? vec_even : vec_odd;
        for (size_t r = 0; r < idx.size(); ++r)
            out.states(idx[r], k) = vecs(static_cast<int>(r), lv.sector_col);
    }
    return out;
}

// Fallback for Hermitian inputs without parity block structure: rotate each
// degenerate cluster into π̂ eigenvectors so labels stay well defined.
EigenSystem generic_with_cluster_rotation(const HilbertSpace& space, const Matrix& h) {
    linalg::HermEigen es = linalg::eigh(h);
    const int dim = space.dim();
    const double spread = es.values(dim - 1) - es.values(0);
    const double cluster_tol = 1e-9 * std::max(spread, 1.0);

    Eigen::VectorXd pdiag(dim);
    for (int i = 0; i < dim; ++i) pdiag(i) = double(ops::basis_parity(space, i));

    Eigen::VectorXi parities(dim);
    int start = 0;
    while (start < dim) {
        int end = start + 1;
        while (end < dim && es.values(end) - es.values(end - 1) < cluster_tol) ++end;
        const int width = end - start;
        if (width > 1) {
            Matrix vc = es.vectors.middleCols(start, width);
            Matrix pc = vc.adjoint() * (pdiag.asDiagonal() * vc).eval();
            linalg::HermEigen pes = linalg::eigh((pc + pc.adjoint()) / 2.0);
            // Descending parity eigenvalue: +1 states first inside the cluster.
            Matrix rotated = vc * pes.vectors;
            for (int c = 0; c < width; ++c) {
                es.vectors.col(start + c) = rotated.col(width - 1 - c);
                parities(start + c) = pes.values(width - 1 - c) >= 0 ? 1 : -1;
            }
        } else {
            double p = 0;
            for (int i = 0; i < dim; ++i)
                p += pdiag(i) * std::norm(es.vectors(i, start));
            parities(start) = p >= 0 ? 1 : -1;
        }
        start = end;
    }
    return EigenSystem{space, std::move(es.values), std::move(es.vectors),
                       std::move(parities), space.n_fock};
}

} // namespace

EigenSystem diagonalize(const Operator& hamiltonian) {
    const Matrix& h = hamiltonian.data;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double herm_err = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > 1e-10 * scale)
        throw std::invalid_argument("diagonalize: input is not Hermitian");

    const SectorSplit split = parity_sectors(hamiltonian.space);
    if (commutes_with_parity(h, split, 1e-12 * scale))
        return merge_sectors(hamiltonian.space, h, split);
    return generic_with_cluster_rotation(hamiltonian.space, h);
}

int starting_cutoff(const ModelParams& params) {
    params.validate();
    const double d = (params.g1 + params.g2) / params.omega;
    const int heuristic = static_cast<int>(std::ceil(d * d + 6.0 * d + 20.0));
    return std::max(16, heuristic);
}

namespace {

bool scalars_close(const std::vector<double>& a, const std::vector<double>& b,
                   const CutoffOptions& opt) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const bool nan_a = std::isnan(a[i]), nan_b = std::isnan(b[i]);
        if (nan_a || nan_b) {
            if (nan_a != nan_b) return false;
            continue;  // both undefined: stable
        }
        const double diff = std::abs(a[i] - b[i]);
        const double mag = std::max(std::abs(a[i]), std::abs(b[i]));
        if (diff > std::max(opt.abs_tol, opt.rel_tol * mag)) return false;
    }
    return true;
}

} // namespace

ConvergedCutoff converge_cutoff(const ModelParams& params, const ScalarFn& scalars,
                                const CutoffOptions& options) {
    int n = starting_cutoff(params);
    if (n > options.max_fock)
        throw std::runtime_error(
            "converge_cutoff: starting cutoff " + std::to_string(n) + " exceeds max_fock " +
            std::to_string(options.max_fock) + " (displacement heuristic d=" +
            std::to_string((params.g1 + params.g2) / params.omega) + ")");

    auto evaluate = [&](int n_fock) {
        EigenSystem eigs = diagonalize(build_hamiltonian(params, HilbertSpace(n_fock)));
        std::vector<double> v = scalars(eigs);
        return std::make_pair(std::move(eigs), std::move(v));
    };

    auto [eigs, values] = evaluate(n);
    while (true) {
        const int n2 = 2 * n;
        auto [eigs2, values2] = evaluate(n2);
        if (scalars_close(values, values2, options))
            return ConvergedCutoff{n, std::move(eigs), std::move(values)};
        if (n2 >= options.max_fock)
            throw std::runtime_error("converge_cutoff: not converged at max_fock " +
                                     std::to_string(options.max_fock));
        n = n2;
        eigs = std::move(eigs2);
        values = std::move(values2);
    }
}

DispersiveResult dispersive_rwa(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    const double d1 = params.delta1 - params.omega;
    const double d2 = params.delta2 - params.omega;
    if (d1 == 0.0 || d2 == 0.0)
        throw std::invalid_argument("dispersive_rwa: qubit-field detuning is zero");
    const double j12 = params.g1 * params.g2 * (1.0 / d1 + 1.0 / d2);

    const Matrix num = ops::number(space).data;
    const Matrix sz1 = ops::pauli(ops::Pauli::Z, 1, space).data;
    const Matrix sz2 = ops::pauli(ops::Pauli::Z, 2, space).data;
    const Matrix sp1 = ops::pauli(ops::Pauli::Plus, 1, space).data;
    const Matrix sm1 = ops::pauli(ops::Pauli::Minus, 1, space).data;
    const Matrix sp2 = ops::pauli(ops::Pauli::Plus, 2, space).data;
    const Matrix sm2 = ops::pauli(ops::Pauli::Minus, 2, space).data;

    Matrix h = params.omega * num;
    h += 0.5 * (params.delta1 + params.g1 * params.g1 / d1) * sz1;
    h += 0.5 * (params.delta2 + params.g2 * params.g2 / d2) * sz2;
    h += (params.g1 * params.g1 / d1) * num * sz1;
    h += (params.g2 * params.g2 / d2) * num * sz2;
    h += j12 * (sp1 * sm2 + sm1 * sp2);
    return DispersiveResult{Operator(space, std::move(h)), j12};
}

DispersiveResult dispersive_nonrwa(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    const double d1 = params.delta1 - params.omega;
    const double d2 = params.delta2 - params.omega;
    const double q1 = 2.0 * params.delta1 - d1;  // = Δ₁ + ω
    const double q2 = 2.0 * params.delta2 - d2;
    if (d1 == 0.0 || d2 == 0.0 || q1 == 0.0 || q2 == 0.0)
        throw std::invalid_argument("dispersive_nonrwa: vanishing denominator");
    const double jbar =
        params.g1 * params.g2 * (1.0 / d1 + 1.0 / d2 - 1.0 / q1 - 1.0 / q2);

    const Matrix num = ops::number(space).data;
    const Matrix sz1 = ops::pauli(ops::Pauli::Z, 1, space).data;
    const Matrix sz2 = ops::pauli(ops::Pauli::Z, 2, space).data;
    const Matrix sx1 = ops::pauli(ops::Pauli::X, 1, space).data;
    const Matrix sx2 = ops::pauli(ops::Pauli::X, 2, space).data;
    const Matrix x = ops::annihilation(space).data + ops::creation(space).data;
    const Matrix x2 = x * x;

    Matrix h = params.omega * num;
    h += 0.5 * params.delta1 * sz1 + 0.5 * params.delta2 * sz2;
    h += jbar * sx1 * sx2;
    h += (params.g1 * params.g1 * (1.0 / d1 - 1.0 / (params.delta1 - d1))) * x2 * sz1;
    h += (params.g2 * params.g2 * (1.0 / d2 - 1.0 / (params.delta2 - d2))) * x2 * sz2;
    return DispersiveResult{Operator(space, std::move(h)), jbar};
}

std::vector<double> dsc_spectrum(const ModelParams& params, int n_levels) {
    params.validate();
    if (n_levels <= 0) return {};
    const double gp = params.g1 + params.g2;
    const double gm = params.g1 - params.g2;
    const double shift_p = gp * gp / params.omega;
    const double shift_m = gm * gm / params.omega;
    std::vector<double> out;
    const int n_osc = n_levels;  // enough oscillator levels to cover n_levels entries
    for (int n = 0; n < n_osc; ++n) {
        const double base = params.omega * n;
        out.push_back(base - shift_p);
        out.push_back(base - shift_p);
        out.push_back(base - shift_m);
        out.push_back(base - shift_m);
    }
    std::sort(out.begin(), out.end());
    out.resize(n_levels);
    return out;
}

std::vector<AdiabaticState> adiabatic_eigenstates(const ModelParams& params,
                                                  const HilbertSpace& space, int n_max) {
    params.validate();
    if (params.g1 != params.g2)
        throw std::invalid_argument("adiabatic_eigenstates: requires g1 == g2");
    const double g = params.g1;
    const int F = space.n_fock;
    if (n_max < 0 || n_max >= F)
        throw std::invalid_argument("adiabatic_eigenstates: n_max out of range");

    // σ̂x eigenvectors on one qubit, |±⟩ = (|g⟩ ± |e⟩)/√2.
    Eigen::Vector2cd plus, minus;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    auto two_qubit = [](const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
        Eigen::Vector4cd v;
        v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
        return v;
    };
    struct SpinState {
        int j, m;
        Eigen::Vector4cd vec;
    };
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<SpinState> spin = {
        {1, 1, two_qubit(plus, plus)},
        {1, 0, inv_sqrt2 * (two_qubit(plus, minus) + two_qubit(minus, plus))},
        {0, 0, inv_sqrt2 * (two_qubit(plus, minus) - two_qubit(minus, plus))},
        {1, -1, two_qubit(minus, minus)},
    };

    // Cache the displacement operator per m value (m = 0 needs none).
    auto displacement = [&](double alpha) {
        Matrix a = Matrix::Zero(F, F);
        for (int n = 1; n < F; ++n) a(n - 1, n) = std::sqrt(double(n));
        Matrix gen = alpha * a.adjoint() - std::conj(cplx(alpha)) * a;
        return linalg::exp_antihermitian(gen);
    };
    const Matrix d_plus = displacement(-2.0 * g / params.omega);
    const Matrix d_minus = displacement(+2.0 * g / params.omega);

    std::vector<AdiabaticState> out;
    for (int n = 0; n <= n_max; ++n)
        for (const SpinState& s : spin) {
            Vector fock = Vector::Zero(F);
            fock(n) = 1.0;
            Vector displaced;
            if (s.m == 1) displaced = d_plus * fock;
            else if (s.m == -1) displaced = d_minus * fock;
            else displaced = fock;

            Vector full = Vector::Zero(space.dim());
            for (int q = 0; q < 4; ++q)
                full.segment(q * F, F) = s.vec(q) * displaced;

            const double lambda = 2.0 * s.m * g;
            out.push_back(AdiabaticState{s.j, s.m, n,
                                         params.omega * n - lambda * lambda / params.omega,
                                         std::move(full)});
        }
    std::stable_sort(out.begin(), out.end(), [](const AdiabaticState& a, const AdiabaticState& b) {
        return a.energy_estimate < b.energy_estimate;
    });
    return out;
}

} // namespace qrabi::model
