// selftest.cpp — Fast closed-form invariant checks behind `qrabi selftest`.

#include <cmath>
#include <iostream>
#include <sstream>

#include "qrabi/harness.hpp"
#include "qrabi/qops.hpp"

namespace qrabi {

namespace {

struct Suite {
    std::ostream& out;
    int failures = 0;

    void check(bool ok, const std::string& name) {
        out << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    }
};

bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

} // namespace

bool selftest(std::ostream& out) {
    using namespace qrabi::ops;
    Suite s{out};

    {
        HilbertSpace sp(2);
        const Matrix a = annihilation(sp).data;
        s.check(near(a(sp.index(0, 0, 0), sp.index(0, 0, 1)).real(), 1.0),
                "annihilation: <0|a|1> = 1");
        HilbertSpace sp4(4);
        const Matrix a4 = annihilation(sp4).data;
        s.check(near(a4(sp4.index(0, 0, 2), sp4.index(0, 0, 3)).real(), std::sqrt(3.0)),
                "annihilation: <2|a|3> = sqrt(3)");
        Vector vac = Vector::Zero(sp4.dim());
        vac(sp4.index(0, 0, 0)) = 1.0;
        s.check(apply_annihilation(sp4, vac).norm() == 0.0, "annihilation: a|vac> = 0");
    }
    {
        HilbertSpace sp(3);
        Vector eg0 = Vector::Zero(sp.dim());
        eg0(sp.index(1, 0, 0)) = 1.0;
        const Vector r = pauli(Pauli::Z, 1, sp).data * eg0;
        s.check((r - eg0).norm() < 1e-14, "pauli: sigma_z(1)|e,g,0> = +|e,g,0>");
        Vector gg0 = Vector::Zero(sp.dim());
        gg0(sp.index(0, 0, 0)) = 1.0;
        Vector ge0 = Vector::Zero(sp.dim());
        ge0(sp.index(0, 1, 0)) = 1.0;
        s.check((pauli(Pauli::Plus, 2, sp).data * gg0 - ge0).norm() < 1e-14,
                "pauli: sigma_plus(2)|g,g,0> = |g,e,0>");
        const Matrix x = pauli(Pauli::X, 1, sp).data;
        const Matrix pm = pauli(Pauli::Plus, 1, sp).data + pauli(Pauli::Minus, 1, sp).data;
        s.check((x - pm).cwiseAbs().maxCoeff() == 0.0, "pauli: sigma_x = sigma_+ + sigma_-");
    }
    {
        HilbertSpace sp(3);
        const Matrix p = parity_operator(sp).data;
        s.check(near(p(sp.index(0, 0, 0), sp.index(0, 0, 0)).real(), 1.0),
                "parity: <g,g,0| pi |g,g,0> = +1");
        s.check(near(p(sp.index(1, 0, 0), sp.index(1, 0, 0)).real(), -1.0),
                "parity: <e,g,0| pi |e,g,0> = -1");
        s.check((p * p - Matrix::Identity(sp.dim(), sp.dim())).cwiseAbs().maxCoeff() < 1e-15,
                "parity: pi^2 = 1");
    }
    {
        // Bell pair reduced to one qubit is maximally mixed.
        Matrix bell = Matrix::Zero(4, 4);
        bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
        DensityMatrix rho({2, 2}, bell);
        const DensityMatrix red = partial_trace(rho, std::set<int>{0});
        s.check((red.data - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14,
                "partial_trace: Bell -> I/2");
        const Matrix pt = partial_transpose(rho, std::set<int>{0});
        const DensityMatrix rho2({2, 2}, bell);
        Matrix ptpt = partial_transpose(DensityMatrix({2, 2}, (pt + pt.adjoint()) / 2.0),
                                        std::set<int>{0});
        s.check((ptpt - bell).cwiseAbs().maxCoeff() < 1e-14,
                "partial_transpose: involution");
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(pt).eigenvalues();
        s.check(near(ev.minCoeff(), -0.5, 1e-12), "partial_transpose: Bell min eigenvalue -1/2");
    }
    {
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = 0.64;
        d(1, 1) = 0.36;
        const Matrix r = herm_sqrt(DensityMatrix({2}, d));
        s.check(near(r(0, 0).real(), 0.8) && near(r(1, 1).real(), 0.6),
                "herm_sqrt: diag(0.64,0.36) -> diag(0.8,0.6)");
        s.check(near(von_neumann_entropy(DensityMatrix({2}, 0.5 * Matrix::Identity(2, 2))), 1.0,
                     1e-12),
                "entropy: I/2 -> 1 bit");
        Matrix pure = Matrix::Zero(2, 2);
        pure(0, 0) = 1.0;
        s.check(near(von_neumann_entropy(DensityMatrix({2}, pure)), 0.0), "entropy: pure -> 0");
    }
    {
        HilbertSpace sp(6);
        model::ModelParams params{1.0, 1.0, 1.0, 0.0, 0.0};
        const model::EigenSystem eigs = model::diagonalize(model::build_hamiltonian(params, sp));
        s.check(near(eigs.energies(0), -1.0, 1e-12), "hamiltonian: g=0 ground energy -1");

        model::ModelParams coupled{1.0, 1.0, 1.0, 0.6, 0.6};
        const Matrix h = model::build_hamiltonian(coupled, sp).data;
        const Matrix pi = parity_operator(sp).data;
        s.check((h * pi - pi * h).cwiseAbs().maxCoeff() < 1e-10 * h.cwiseAbs().maxCoeff(),
                "hamiltonian: [H, pi] = 0");
        const Matrix n = number(sp).data + 0.5 * (pauli(Pauli::Z, 1, sp).data +
                                                  pauli(Pauli::Z, 2, sp).data) +
                         Matrix::Identity(sp.dim(), sp.dim());
        s.check((h * n - n * h).cwiseAbs().maxCoeff() > 1e-3, "hamiltonian: [H, n] != 0 for g>0");
    }
    {
        model::ModelParams p{1.0, 2.0, 2.0, 0.1, 0.1};
        const auto disp = model::dispersive_rwa(p, HilbertSpace(4));
        s.check(near(disp.coupling, 0.02, 1e-15), "dispersive: J12 = 0.02");
        const auto gs = model::dsc_spectrum({1.0, 0.0, 0.0, 2.0, 1.0}, 1);
        s.check(near(gs[0], -9.0, 1e-12), "dsc: ground approx -(g1+g2)^2/omega");
    }
    {
        HilbertSpace sp(8);
        model::ModelParams params{1.0, 1.0, 1.0, 0.3, 0.3};
        const model::EigenSystem eigs = model::diagonalize(model::build_hamiltonian(params, sp));
        const auto pops = thermal::populations(eigs, {0.0, 1e-14});
        s.check(near(pops[0], 1.0), "gibbs: T=0 puts all weight on the ground state");
        const auto pops1 = thermal::populations(eigs, {1.0, 1e-14});
        double sum = 0;
        for (double v : pops1) sum += v;
        s.check(near(sum, 1.0, 1e-12), "gibbs: populations sum to 1");
    }
    {
        bath::BathParams b;
        b.alpha = 0.001;
        b.omega_c = 10.0;
        b.T = 0.1;
        s.check(bath::spectral_density(0.0, b) == 0.0, "spectral density: gamma(0) = 0");
        s.check(near(bath::spectral_density(10.0, b), M_PI * 0.001 * 10.0 * std::exp(-1.0), 1e-15),
                "spectral density: gamma(omega_c)");
        s.check(near(bath::spectral_density(1.0, b), M_PI * 0.001 * std::exp(-0.1), 1e-15),
                "spectral density: paper parameters at unit gap");
    }
    {
        HilbertSpace sp(8);
        Matrix vac = Matrix::Zero(sp.dim(), sp.dim());
        vac(sp.index(0, 0, 0), sp.index(0, 0, 0)) = 1.0;
        const auto sq = quant::squeezing(DensityMatrix(sp.factor_dims(), vac));
        s.check(sq.zeta2 == 1.0 && sq.n_photons == 0.0, "squeezing: vacuum gives zeta^2 = 1");

        // Thermal boson state at n̄: ζ² = 1 + 2n̄.
        const double nbar = 0.25;
        Matrix th = Matrix::Zero(sp.dim(), sp.dim());
        double z = 0;
        for (int n = 0; n < sp.n_fock; ++n) z += std::pow(nbar / (1 + nbar), n);
        for (int n = 0; n < sp.n_fock; ++n)
            th(sp.index(0, 0, n), sp.index(0, 0, n)) = std::pow(nbar / (1 + nbar), n) / z;
        const auto sqt = quant::squeezing(DensityMatrix(sp.factor_dims(), th));
        s.check(near(sqt.zeta2, 1.0 + 2.0 * sqt.n_photons, 1e-12),
                "squeezing: thermal field zeta^2 = 1 + 2<n>");
    }
    {
        Matrix bell = Matrix::Zero(4, 4);
        bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
        s.check(near(quant::concurrence(bell), 1.0, 1e-10), "concurrence: Bell state -> 1");
        s.check(near(quant::negativity_qubit_pair(bell), 0.5, 1e-12), "negativity: Bell -> 1/2");
        s.check(near(quant::mutual_information_qq(bell), 2.0, 1e-10), "mutual info: Bell -> 2 bits");
        s.check(near(quant::lqu(bell), 1.0, 1e-10), "lqu: Bell -> 1");

        Matrix prod = Matrix::Zero(4, 4);
        prod(0, 0) = 1.0;
        s.check(quant::concurrence(prod) == 0.0 &&
                    near(quant::negativity_qubit_pair(prod), 0.0, 1e-12) &&
                    near(quant::mutual_information_qq(prod), 0.0, 1e-10),
                "product state: no correlations");

        Matrix diag = Matrix::Zero(4, 4);
        diag(0, 0) = 0.4;
        diag(1, 1) = 0.3;
        diag(2, 2) = 0.2;
        diag(3, 3) = 0.1;
        s.check(std::abs(quant::quantum_discord(diag)) < 1e-6,
                "discord: classical diagonal state -> 0");
        s.check(near(quant::coherence_re(diag), 0.0, 1e-12), "coherence: diagonal state -> 0");

        // |+⟩⊗|g⟩ carries exactly one bit of coherence.
        Matrix plusg = Matrix::Zero(4, 4);
        plusg(0, 0) = plusg(0, 2) = plusg(2, 0) = plusg(2, 2) = 0.5;
        s.check(near(quant::coherence_re(plusg), 1.0, 1e-10), "coherence: |+>|g> -> 1 bit");
    }

    out << (s.failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
    return s.failures == 0;
}

} // namespace qrabi
