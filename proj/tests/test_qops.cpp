// test_qops.cpp — Operator construction, tensor bookkeeping, matrix functions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrabi/linalg.hpp"
#include "qrabi/qops.hpp"

using namespace qrabi;
using namespace qrabi::ops;

namespace {

std::mt19937_64 rng(20240817);

Matrix random_density(int dim) {
    std::normal_distribution<double> nd;
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

Matrix random_unitary(int dim) {
    std::normal_distribution<double> nd;
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ();
}

Matrix bell_phi_plus() {
    Matrix b = Matrix::Zero(4, 4);
    b(0, 0) = b(0, 3) = b(3, 0) = b(3, 3) = 0.5;
    return b;
}

} // namespace

TEST_CASE("annihilation operator ladder elements") {
    HilbertSpace sp(4);
    const Matrix a = annihilation(sp).data;
    CHECK(a(sp.index(1, 0, 0), sp.index(1, 0, 1)).real() == doctest::Approx(1.0));
    CHECK(a(sp.index(0, 1, 2), sp.index(0, 1, 3)).real() == doctest::Approx(std::sqrt(3.0)));
    // Vacuum expectation of the number operator.
    Vector vac = Vector::Zero(sp.dim());
    vac(sp.index(0, 0, 0)) = 1.0;
    CHECK(ops::apply_annihilation(sp, vac).squaredNorm() == 0.0);
    // Matrix-free application agrees with the dense operator.
    std::normal_distribution<double> nd;
    Vector v(sp.dim());
    for (int i = 0; i < sp.dim(); ++i) v(i) = cplx(nd(rng), nd(rng));
    CHECK((a * v - apply_annihilation(sp, v)).norm() < 1e-14);
    CHECK((a.adjoint() * v - apply_creation(sp, v)).norm() < 1e-14);
}

TEST_CASE("pauli operators act on the chosen qubit only") {
    HilbertSpace sp(3);
    Vector eg0 = Vector::Zero(sp.dim());
    eg0(sp.index(1, 0, 0)) = 1.0;
    CHECK((pauli(Pauli::Z, 1, sp).data * eg0 - eg0).norm() < 1e-15);

    Vector gg0 = Vector::Zero(sp.dim());
    gg0(sp.index(0, 0, 0)) = 1.0;
    Vector ge0 = Vector::Zero(sp.dim());
    ge0(sp.index(0, 1, 0)) = 1.0;
    CHECK((pauli(Pauli::Plus, 2, sp).data * gg0 - ge0).norm() < 1e-15);

    const Matrix x1 = pauli(Pauli::X, 1, sp).data;
    const Matrix pm = pauli(Pauli::Plus, 1, sp).data + pauli(Pauli::Minus, 1, sp).data;
    CHECK((x1 - pm).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS(pauli(Pauli::X, 3, sp));

    // Operators on different factors commute.
    const Matrix z2 = pauli(Pauli::Z, 2, sp).data;
    const Matrix a = annihilation(sp).data;
    CHECK((x1 * z2 - z2 * x1).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((x1 * a - a * x1).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((z2 * a - a * z2).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("parity operator is a diagonal involution") {
    HilbertSpace sp(5);
    const Matrix p = parity_operator(sp).data;
    CHECK(p(sp.index(0, 0, 0), sp.index(0, 0, 0)).real() == 1.0);
    CHECK(p(sp.index(1, 0, 0), sp.index(1, 0, 0)).real() == -1.0);
    CHECK(p(sp.index(1, 1, 0), sp.index(1, 1, 0)).real() == 1.0);
    CHECK(p(sp.index(0, 0, 3), sp.index(0, 0, 3)).real() == -1.0);
    CHECK((p * p - Matrix::Identity(sp.dim(), sp.dim())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("partial trace recovers factors of product states") {
    // ρ_A ⊗ ρ_B with dims 2 and 3.
    const Matrix rho_a = random_density(2);
    const Matrix rho_b = random_density(3);
    DensityMatrix rho({2, 3}, kron(rho_a, rho_b));
    const DensityMatrix red_a = partial_trace(rho, std::set<int>{0});
    const DensityMatrix red_b = partial_trace(rho, std::set<int>{1});
    CHECK((red_a.data - rho_a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((red_b.data - rho_b).cwiseAbs().maxCoeff() < 1e-12);

    DensityMatrix bell({2, 2}, bell_phi_plus());
    const DensityMatrix half = partial_trace(bell, std::set<int>{1});
    CHECK((half.data - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    // Trace preserved on random three-factor states.
    for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix r3({2, 2, 2}, random_density(8));
        for (int keep = 0; keep < 3; ++keep) {
            const DensityMatrix red = partial_trace(r3, std::set<int>{keep});
            CHECK(std::abs(red.data.trace().real() - 1.0) < 1e-12);
        }
    }

    CHECK_THROWS(partial_trace(bell, std::set<int>{}));
    CHECK_THROWS(partial_trace(bell, std::set<int>{0, 1}));
}

TEST_CASE("partial transpose: PPT for separable, -1/2 for Bell, involution") {
    // Separable mixture of product states stays PSD under partial transpose.
    Matrix sep = Matrix::Zero(4, 4);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    double wsum = 0;
    for (int t = 0; t < 4; ++t) {
        const double w = ud(rng);
        sep += w * kron(random_density(2), random_density(2));
        wsum += w;
    }
    sep /= wsum;
    DensityMatrix rho_sep({2, 2}, sep);
    const Matrix pt_sep = partial_transpose(rho_sep, std::set<int>{0});
    CHECK(linalg::eigvalsh(pt_sep).minCoeff() > -1e-12);

    DensityMatrix bell({2, 2}, bell_phi_plus());
    const Matrix pt = partial_transpose(bell, std::set<int>{0});
    CHECK(linalg::eigvalsh(pt).minCoeff() == doctest::Approx(-0.5).epsilon(1e-12));

    DensityMatrix r3({2, 2, 3}, random_density(12));
    for (int f = 0; f < 3; ++f) {
        const Matrix once = partial_transpose(r3, std::set<int>{f});
        const Matrix twice =
            partial_transpose(DensityMatrix({2, 2, 3}, once), std::set<int>{f});
        CHECK((twice - r3.data).cwiseAbs().maxCoeff() < 1e-12);
    }

    CHECK_THROWS(partial_transpose(bell, std::set<int>{0, 1}));
}

TEST_CASE("herm_sqrt squares back to the state") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.64;
    d(1, 1) = 0.36;
    const Matrix r = herm_sqrt(DensityMatrix({2}, d));
    CHECK(r(0, 0).real() == doctest::Approx(0.8));
    CHECK(r(1, 1).real() == doctest::Approx(0.6));

    // Pure projector is its own square root.
    Matrix proj = bell_phi_plus();
    const Matrix rp = herm_sqrt(DensityMatrix({2, 2}, proj));
    CHECK((rp - proj).cwiseAbs().maxCoeff() < 1e-12);

    // Identity/d.
    const Matrix rid = herm_sqrt(DensityMatrix({4}, Matrix::Identity(4, 4) / 4.0));
    CHECK((rid - Matrix::Identity(4, 4) / 2.0).cwiseAbs().maxCoeff() < 1e-12);

    for (int dim : {2, 4, 8, 16}) {
        const Matrix rho = random_density(dim);
        const Matrix root = herm_sqrt(DensityMatrix({dim}, rho));
        CHECK((root * root - rho).cwiseAbs().maxCoeff() < 1e-10 * dim);
    }

    Matrix bad = Matrix::Identity(2, 2) * 0.75;
    bad(1, 1) = 0.25;
    bad(0, 1) = bad(1, 0) = 0.7;  // indefinite but Hermitian, trace 1
    CHECK_THROWS(herm_sqrt(DensityMatrix({2}, bad)));
}

TEST_CASE("von Neumann entropy: closed forms and unitary invariance") {
    Matrix pure = Matrix::Zero(3, 3);
    pure(1, 1) = 1.0;
    CHECK(von_neumann_entropy(DensityMatrix({3}, pure)) == doctest::Approx(0.0));

    CHECK(von_neumann_entropy(DensityMatrix({2}, Matrix::Identity(2, 2) / 2.0)) ==
          doctest::Approx(1.0));

    Matrix dy = Matrix::Zero(3, 3);
    dy(0, 0) = 0.5;
    dy(1, 1) = 0.25;
    dy(2, 2) = 0.25;
    CHECK(von_neumann_entropy(DensityMatrix({3}, dy)) == doctest::Approx(1.5));

    for (int trial = 0; trial < 5; ++trial) {
        const Matrix rho = random_density(6);
        const Matrix u = random_unitary(6);
        const double s0 = entropy_bits(rho);
        const double s1 = entropy_bits(u * rho * u.adjoint());
        CHECK(std::abs(s0 - s1) < 1e-9);
    }
}
