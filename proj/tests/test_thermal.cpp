// test_thermal.cpp — Gibbs state construction and population diagnostics.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qrabi/linalg.hpp"
#include "qrabi/qops.hpp"
#include "qrabi/thermal.hpp"

using namespace qrabi;
using namespace qrabi::model;
using namespace qrabi::thermal;

namespace {

double trace_distance(const Matrix& a, const Matrix& b) {
    const Eigen::VectorXd ev = linalg::eigvalsh(a - b);
    return 0.5 * ev.cwiseAbs().sum();
}

} // namespace

TEST_CASE("T=0 gives the ground projector; nonzero T weights by the gap") {
    HilbertSpace sp(8);
    const ModelParams p{1.0, 0.8, 1.3, 0.4, 0.3};
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, sp));

    const auto p0 = populations(eigs, {0.0, 1e-14});
    CHECK(p0[0] == doctest::Approx(1.0));
    const DensityMatrix rho0 = gibbs_state(eigs, {0.0, 1e-14});
    const Matrix proj = eigs.states.col(0) * eigs.states.col(0).adjoint();
    CHECK((rho0.data - proj).cwiseAbs().maxCoeff() < 1e-12);

    // Two-level ratio: P1/P0 = e^{−gap/T}.
    const auto p1 = populations(eigs, {1.0, 1e-14});
    const double gap = eigs.energies(1) - eigs.energies(0);
    CHECK(p1[1] / p1[0] == doctest::Approx(std::exp(-gap)).epsilon(1e-12));

    double sum = 0;
    for (double v : p1) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    for (size_t k = 1; k < p1.size(); ++k) CHECK(p1[k] <= p1[k - 1] + 1e-15);

    CHECK_THROWS(populations(eigs, {-0.5, 1e-14}));
}

TEST_CASE("infinite-temperature limit flattens the retained populations") {
    HilbertSpace sp(4);
    const ModelParams p{1.0, 1.0, 1.0, 0.2, 0.2};
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, sp));
    const auto pops = populations(eigs, {1e6, 1e-14});
    for (double v : pops) CHECK(v == doctest::Approx(pops[0]).epsilon(1e-4));
}

TEST_CASE("gibbs state: unit trace, commutes with H, parity expectation") {
    HilbertSpace sp(10);
    const ModelParams p{1.0, 1.1, 0.9, 0.7, 0.5};
    const Operator h = build_hamiltonian(p, sp);
    const EigenSystem eigs = diagonalize(h);
    const DensityMatrix rho = gibbs_state(eigs, {0.4, 1e-14});

    CHECK(std::abs(rho.data.trace().real() - 1.0) < 1e-12);
    const double hscale = h.data.cwiseAbs().maxCoeff();
    CHECK((h.data * rho.data - rho.data * h.data).cwiseAbs().maxCoeff() <= 1e-10 * hscale);

    const Matrix pi = ops::parity_operator(sp).data;
    const double pexp = (rho.data * pi).trace().real();
    CHECK(pexp >= -1.0 - 1e-12);
    CHECK(pexp <= 1.0 + 1e-12);

    // g = 0, T = 0, Δ > 0: the ground state carries even parity.
    const EigenSystem free_eigs = diagonalize(build_hamiltonian(p.decoupled(), sp));
    const DensityMatrix ground = gibbs_state(free_eigs, {0.0, 1e-14});
    CHECK((ground.data * pi).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("decoupled Gibbs state factorizes into single-subsystem Gibbs states") {
    // ω = Δ = 1, T = 0.5, g = 0: oracle assembled from independent 2- and
    // F-level Boltzmann factors.
    HilbertSpace sp(24);
    const double T = 0.5;
    const ModelParams p{1.0, 1.0, 1.0, 0.0, 0.0};
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, sp));
    const DensityMatrix rho = gibbs_state(eigs, {T, 1e-14});

    auto qubit_gibbs = [&](double delta) {
        Matrix q = Matrix::Zero(2, 2);
        q(0, 0) = std::exp(+delta / (2 * T));
        q(1, 1) = std::exp(-delta / (2 * T));
        q /= q.trace();
        return q;
    };
    Matrix boson = Matrix::Zero(sp.n_fock, sp.n_fock);
    for (int n = 0; n < sp.n_fock; ++n) boson(n, n) = std::exp(-p.omega * n / T);
    boson /= boson.trace();

    const Matrix product =
        ops::kron(ops::kron(qubit_gibbs(p.delta1), qubit_gibbs(p.delta2)), boson);
    CHECK(trace_distance(rho.data, product) < 1e-10);
}

TEST_CASE("T=0 with a quasi-degenerate ground pair mixes the cluster evenly") {
    // Deep strong coupling: the lowest doublet splits by far less than the
    // cluster width, so the T = 0 state must not pick one member arbitrarily.
    const ModelParams p{1.0, 1.0, 1.0, 2.5, 2.5};
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, HilbertSpace(starting_cutoff(p))));
    REQUIRE(eigs.energies(1) - eigs.energies(0) < 1e-9 * eigs.energies(eigs.levels() - 1));
    const auto pops = populations(eigs, {0.0, 1e-14});
    CHECK(pops[0] == doctest::Approx(0.5));
    CHECK(pops[1] == doctest::Approx(0.5));
}

TEST_CASE("ground population approaches 1/2 as the DSC doublet forms") {
    const ModelParams p{1.0, 1.0, 1.0, 2.0, 2.0};
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, HilbertSpace(starting_cutoff(p))));
    const auto pops = populations(eigs, {0.1, 1e-14});
    CHECK(pops[0] >= 0.45);
    CHECK(pops[0] <= 0.55);
}
