// test_quantifiers.cpp — Closed-form cases and invariants for the correlation
// and nonclassicality measures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qrabi/linalg.hpp"
#include "qrabi/qops.hpp"
#include "qrabi/quantifiers.hpp"

using namespace qrabi;
using namespace qrabi::model;
using namespace qrabi::quant;

namespace {

std::mt19937_64 rng(424242);

Matrix bell_phi_plus() {
    Matrix b = Matrix::Zero(4, 4);
    b(0, 0) = b(0, 3) = b(3, 0) = b(3, 3) = 0.5;
    return b;
}

Matrix werner(double p) {
    return p * bell_phi_plus() + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
}

Matrix random_qq_density() {
    std::normal_distribution<double> nd;
    Matrix g(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

Vector random_pure_qq() {
    std::normal_distribution<double> nd;
    Vector v(4);
    for (int i = 0; i < 4; ++i) v(i) = cplx(nd(rng), nd(rng));
    v.normalize();
    return v;
}

Eigen::Matrix2cd random_unitary2() {
    std::normal_distribution<double> nd;
    Eigen::Matrix2cd g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
    return qr.householderQ();
}

// Test-local dense-grid discord minimization, written against the projector
// algebra directly (explicit 4×4 measurement operators, Eigen eigenvalues).
double brute_discord(const Matrix& rho, int grid) {
    const DensityMatrix dm({2, 2}, rho);
    const double s_a = ops::von_neumann_entropy(ops::partial_trace(dm, std::set<int>{0}));
    const double s_ab = ops::entropy_bits(rho);

    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    double best = 1e300;
    for (int i = 0; i < grid; ++i) {
        const double theta = M_PI * (i + 0.5) / grid;
        for (int j = 0; j < grid; ++j) {
            const double phi = 2.0 * M_PI * j / grid;
            Eigen::Vector2cd n0;
            n0 << std::cos(theta / 2.0), std::exp(cplx(0, phi)) * std::sin(theta / 2.0);
            double avg = 0.0;
            for (int branch = 0; branch < 2; ++branch) {
                const Eigen::Matrix2cd proj =
                    branch == 0 ? (n0 * n0.adjoint()).eval()
                                : (id - n0 * n0.adjoint()).eval();
                Matrix m = Matrix::Zero(4, 4);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        m.block(2 * a, 2 * b, 2, 2) = proj(a, b) * id;
                const Matrix post = m * rho * m;
                const double prob = post.trace().real();
                if (prob < 1e-14) continue;
                Eigen::Matrix2cd rb = Eigen::Matrix2cd::Zero();
                for (int a = 0; a < 2; ++a)
                    for (int bb = 0; bb < 2; ++bb)
                        for (int aa = 0; aa < 2; ++aa)
                            rb(a, bb) += post(2 * aa + a, 2 * aa + bb);
                rb /= prob;
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rb);
                double s = 0;
                for (int k = 0; k < 2; ++k) {
                    const double lam = es.eigenvalues()(k);
                    if (lam > 0) s -= lam * std::log2(lam);
                }
                avg += prob * s;
            }
            best = std::min(best, avg);
        }
    }
    return s_a - s_ab + best;
}

} // namespace

TEST_CASE("dressed jump operator maps strictly down the spectrum") {
    const ModelParams p{1.0, 1.0, 1.0, 0.6, 0.6};
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, HilbertSpace(24)));
    const DressedJumpOperator x = dressed_jump_operator(eigs, 14);
    for (int r = 0; r < x.levels; ++r)
        for (int c = 0; c <= r; ++c) CHECK(std::abs(x.xplus(r, c)) == 0.0);
    // Annihilates the ground state.
    CHECK(x.xplus.col(0).norm() <= 1e-10);
    // Only opposite-parity matrix elements survive.
    for (int r = 0; r < x.levels; ++r)
        for (int c = r + 1; c < x.levels; ++c)
            if (eigs.parities(r) == eigs.parities(c))
                CHECK(std::abs(x.xplus(r, c)) < 1e-10);
}

TEST_CASE("G2 of the decoupled thermal field is 2 and the ground state is undefined") {
    const ModelParams p{1.0, 0.75, 0.75, 0.0, 0.0};
    bath::BathParams b = bath::BathParams::defaults(p.omega, 0.5);
    EvalOptions opt;
    opt.quantifiers = {Field::G2, Field::XExcitations, Field::NPhotons};
    const QuantifierReport r = evaluate_all(p, b, 0.5, opt);
    REQUIRE(r.g2.has_value());
    CHECK(*r.g2 == doctest::Approx(2.0).epsilon(1e-3));
    // In the decoupled limit X̂⁺ = −iωâ, so ⟨X̂⁻X̂⁺⟩ = ω²⟨â†â⟩.
    CHECK(*r.x_excitations ==
          doctest::Approx(p.omega * p.omega * *r.n_photons).epsilon(1e-6));

    const QuantifierReport cold = evaluate_all(p, b, 0.0, opt);
    CHECK(!cold.g2.has_value());
    CHECK(*cold.x_excitations <= 1e-14);
}

TEST_CASE("antibunching optimum of the resonant-detuned point") {
    const ModelParams p{1.0, 0.79, 0.79, 0.51, 0.51};
    bath::BathParams b = bath::BathParams::defaults(p.omega, 0.1);
    EvalOptions opt;
    opt.quantifiers = {Field::G2, Field::XExcitations};
    const QuantifierReport r = evaluate_all(p, b, 0.1, opt);
    REQUIRE(r.g2.has_value());
    CHECK(*r.g2 == doctest::Approx(0.09).epsilon(0.25));
    CHECK(*r.x_excitations == doctest::Approx(0.01).epsilon(0.5));
}

TEST_CASE("squeezing: vacuum, thermal field, and the eigensystem fast path") {
    HilbertSpace sp(12);
    Matrix vac = Matrix::Zero(sp.dim(), sp.dim());
    vac(0, 0) = 1.0;
    // Index 0 is |g,g,0⟩.
    const SqueezingResult v = squeezing(DensityMatrix(sp.factor_dims(), vac));
    CHECK(v.zeta2 == 1.0);
    CHECK(v.n_photons == 0.0);

    // Full consistency: evaluate_all's eigenvector path against the public
    // full-matrix path on the same Gibbs state.
    const ModelParams p{1.0, 0.9, 1.1, 0.35, 0.45};
    const double T = 0.4;
    const EigenSystem eigs = diagonalize(build_hamiltonian(p, HilbertSpace(32)));
    const SqueezingResult direct = squeezing(thermal::gibbs_state(eigs, {T, 1e-14}));
    bath::BathParams b = bath::BathParams::defaults(p.omega, T);
    EvalOptions opt;
    opt.quantifiers = {Field::Zeta2, Field::NPhotons};
    const QuantifierReport r = evaluate_all(p, b, T, opt);
    CHECK(*r.zeta2 == doctest::Approx(direct.zeta2).epsilon(1e-9));
    CHECK(*r.n_photons == doctest::Approx(direct.n_photons).epsilon(1e-9));
    CHECK(*r.zeta2 > 0.0);
}

namespace {
Matrix kron2x2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
}
} // namespace

TEST_CASE("negativity: Bell, product, and the dual trace-norm formula") {
    CHECK(negativity_qubit_pair(bell_phi_plus()) == doctest::Approx(0.5).epsilon(1e-12));

    Eigen::Matrix2cd up = Eigen::Matrix2cd::Zero(), down = Eigen::Matrix2cd::Zero();
    up(1, 1) = 1.0;
    down(0, 0) = 1.0;
    CHECK(negativity_qubit_pair(kron2x2(up, down)) == doctest::Approx(0.0).epsilon(1e-12));

    // Eigenvalue-sum form against the trace-norm form (‖ρ^{T_A}‖₁ − 1)/2.
    const Matrix w = werner(0.5);
    const double n_eig = negativity_qubit_pair(w);
    const Matrix pt = ops::partial_transpose(DensityMatrix({2, 2}, w), std::set<int>{0});
    const Eigen::VectorXd sv = linalg::svd_right(pt).singular_values;
    const double n_trace = (sv.sum() - 1.0) / 2.0;
    CHECK(n_eig == doctest::Approx(n_trace).epsilon(1e-12));
    CHECK(n_eig == doctest::Approx((3.0 * 0.5 - 1.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("concurrence: Bell, product, and the Werner closed form") {
    CHECK(concurrence(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-10));
    Matrix prod = Matrix::Zero(4, 4);
    prod(1, 1) = 1.0;
    CHECK(concurrence(prod) == 0.0);
    // Werner: C = max(0, (3p−1)/2).
    CHECK(concurrence(werner(0.9)) == doctest::Approx(0.85).epsilon(1e-10));
    CHECK(concurrence(werner(0.2)) == 0.0);
}

TEST_CASE("mutual information: product and Bell closed forms") {
    Matrix prod = Matrix::Zero(4, 4);
    prod(2, 2) = 1.0;
    CHECK(mutual_information_qq(prod) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(mutual_information_qq(bell_phi_plus()) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("discord: classical states, Bell, Werner against the dense grid") {
    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = 0.4;
    diag(1, 1) = 0.1;
    diag(2, 2) = 0.3;
    diag(3, 3) = 0.2;
    CHECK(std::abs(quantum_discord(diag)) < 1e-6);

    CHECK(quantum_discord(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-4));

    const Matrix w = werner(0.7);
    const double dense = brute_discord(w, 256);
    CHECK(quantum_discord(w) == doctest::Approx(dense).epsilon(1e-4));
}

TEST_CASE("discord is invariant under local unitaries on the unmeasured qubit") {
    for (int trial = 0; trial < 4; ++trial) {
        const Matrix rho = random_qq_density();
        const double d0 = quantum_discord(rho, MeasuredSide::A);
        const Eigen::Matrix2cd u = random_unitary2();
        const Matrix ub = kron2x2(Eigen::Matrix2cd::Identity(), u);
        const Matrix rho2 = ub * rho * ub.adjoint();
        const double d1 = quantum_discord(rho2, MeasuredSide::A);
        CHECK(std::abs(d0 - d1) < 1e-5);
    }
}

TEST_CASE("coherence relative entropy closed forms") {
    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = 0.7;
    diag(3, 3) = 0.3;
    CHECK(coherence_re(diag) == doctest::Approx(0.0).epsilon(1e-12));

    Matrix plusg = Matrix::Zero(4, 4);
    plusg(0, 0) = plusg(0, 2) = plusg(2, 0) = plusg(2, 2) = 0.5;
    CHECK(coherence_re(plusg) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("LQU: maximally entangled, product, and the pure-state reduction") {
    CHECK(lqu(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-10));
    Matrix prod = Matrix::Zero(4, 4);
    prod(0, 0) = 1.0;
    CHECK(std::abs(lqu(prod)) < 1e-10);

    // Pure |ψ⟩: U = 2(1 − Tr ρ_A²).
    for (int trial = 0; trial < 6; ++trial) {
        const Vector psi = random_pure_qq();
        const Matrix rho = psi * psi.adjoint();
        const DensityMatrix dm({2, 2}, rho);
        const Matrix ra = ops::partial_trace(dm, std::set<int>{0}).data;
        const double purity = (ra * ra).trace().real();
        CHECK(std::abs(lqu(rho) - 2.0 * (1.0 - purity)) < 1e-9);
    }
}

TEST_CASE("evaluate_all: decoupled Gibbs state carries no correlations") {
    const ModelParams p{1.0, 1.2, 0.8, 0.0, 0.0};
    bath::BathParams b = bath::BathParams::defaults(p.omega, 0.5);
    EvalOptions opt;
    opt.quantifiers = {Field::Concurrence, Field::NegativityQQ, Field::Discord,
                       Field::MutualInfo};
    const QuantifierReport r = evaluate_all(p, b, 0.5, opt);
    CHECK(*r.concurrence < 1e-10);
    CHECK(*r.negativity_qq < 1e-10);
    CHECK(std::abs(*r.discord) < 1e-6);
    CHECK(std::abs(*r.mutual_info) < 1e-9);
}

TEST_CASE("evaluate_all: resonant USC point satisfies the range invariants") {
    const ModelParams p{1.0, 1.0, 1.0, 1.0, 1.0};
    bath::BathParams b = bath::BathParams::defaults(p.omega, 0.1);
    EvalOptions opt;  // all fields
    const QuantifierReport r = evaluate_all(p, b, 0.1, opt);

    CHECK(*r.zeta2 > 0.0);
    CHECK(*r.concurrence >= -1e-9);
    CHECK(*r.concurrence <= 1.0 + 1e-9);
    CHECK(*r.lqu >= -1e-9);
    CHECK(*r.lqu <= 1.0 + 1e-9);
    CHECK(*r.mutual_info >= -1e-9);
    CHECK(*r.discord <= *r.mutual_info + 1e-6);
    CHECK(*r.coherence_re >= -1e-9);
    CHECK(*r.negativity_qq >= -1e-9);
    CHECK(*r.negativity_q_f >= -1e-9);
    CHECK(*r.p0 > 0.0);
    CHECK(r.n_fock_used >= 16);
    CHECK(r.m_used > 0);
    if (*r.concurrence > 1e-6) CHECK(*r.negativity_qq > 0.0);
}

TEST_CASE("evaluate_all is invariant under qubit exchange") {
    bath::BathParams b = bath::BathParams::defaults(1.0, 0.1);
    // Side-symmetric quantifiers are invariant under relabeling the qubits
    // even for asymmetric parameters.
    EvalOptions opt;
    opt.quantifiers = {Field::Concurrence, Field::MutualInfo, Field::CoherenceRE,
                       Field::NegativityQQ, Field::Zeta2};
    const QuantifierReport a =
        evaluate_all(ModelParams{1.0, 0.9, 1.4, 0.5, 0.8}, b, 0.1, opt);
    const QuantifierReport swapped =
        evaluate_all(ModelParams{1.0, 1.4, 0.9, 0.8, 0.5}, b, 0.1, opt);
    for (Field f : opt.quantifiers)
        CHECK(*a.by_field(f) == doctest::Approx(*swapped.by_field(f)).epsilon(1e-8));

    // Symmetric parameters: the side-dependent measures agree across sides.
    const ModelParams sym{1.0, 1.1, 1.1, 0.6, 0.6};
    const EigenSystem eigs = diagonalize(build_hamiltonian(sym, HilbertSpace(32)));
    const DensityMatrix gibbs = thermal::gibbs_state(eigs, {0.1, 1e-14});
    const DensityMatrix qq = ops::partial_trace(gibbs, std::set<int>{0, 1});
    CHECK(quantum_discord(qq.data, MeasuredSide::A) ==
          doctest::Approx(quantum_discord(qq.data, MeasuredSide::B)).epsilon(1e-5));

    // Swapping the labels of a symmetric state leaves LQU unchanged.
    Matrix swapped_qq(4, 4);
    const int perm[4] = {0, 2, 1, 3};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) swapped_qq(r, c) = qq.data(perm[r], perm[c]);
    CHECK(lqu(qq.data) == doctest::Approx(lqu(swapped_qq)).epsilon(1e-8));
}

TEST_CASE("choose_cutoff starts at the heuristic floor and converges") {
    EvalOptions opt;
    CHECK(choose_cutoff(ModelParams{1.0, 1.0, 1.0, 0.0, 0.0}, 0.1, Field::NPhotons, opt) == 20);
    const int n = choose_cutoff(ModelParams{1.0, 1.0, 1.0, 1.0, 1.0}, 0.1, Field::NPhotons, opt);
    CHECK(n >= 16);
}
