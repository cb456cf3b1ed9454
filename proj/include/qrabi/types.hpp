// types.hpp — Composite Hilbert space (qubit ⊗ qubit ⊗ boson) and the basic
// matrix-valued objects that live on it.

#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qrabi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Subsystem { Qubit1, Qubit2, Boson };

// Basis ordering is fixed: qubit 1 ⊗ qubit 2 ⊗ boson, with |g⟩ before |e⟩ on
// each qubit and Fock states |0⟩ … |n_fock−1⟩ on the boson. A composite basis
// index decomposes as ((q1*2 + q2)*n_fock + n).
struct HilbertSpace {
    int n_fock = 2;

    explicit HilbertSpace(int fock_levels) : n_fock(fock_levels) {
        if (n_fock < 2) throw std::invalid_argument("HilbertSpace: n_fock must be >= 2");
    }

    static constexpr int n_qubits = 2;
    int dim() const { return 4 * n_fock; }

    int index(int q1, int q2, int n) const { return (q1 * 2 + q2) * n_fock + n; }

    std::vector<int> factor_dims() const { return {2, 2, n_fock}; }
    static int factor_of(Subsystem s) { return static_cast<int>(s); }

    bool operator==(const HilbertSpace& other) const { return n_fock == other.n_fock; }
    bool operator!=(const HilbertSpace& other) const { return !(*this == other); }
};

struct Operator {
    HilbertSpace space;
    Matrix data;

    Operator(HilbertSpace s, Matrix m) : space(s), data(std::move(m)) {
        if (data.rows() != space.dim() || data.cols() != space.dim())
            throw std::invalid_argument("Operator: matrix shape does not match space dimension");
    }
};

// A state on an arbitrary tensor product of factors. The full-system state has
// factors {2, 2, n_fock}; reductions keep a subset of them. Hermiticity and
// unit trace are enforced on construction; positivity is checked wherever a
// spectral decomposition is taken anyway (herm_sqrt, entropy).
struct DensityMatrix {
    std::vector<int> factors;
    Matrix data;
    double herm_tol = 1e-10;
    double trace_tol = 1e-10;
    double psd_tol = 1e-10;

    DensityMatrix(std::vector<int> factor_dims, Matrix m)
        : factors(std::move(factor_dims)), data(std::move(m)) {
        if (factors.empty()) throw std::invalid_argument("DensityMatrix: no factors");
        const long d = std::accumulate(factors.begin(), factors.end(), 1L,
                                       [](long a, int b) { return a * b; });
        if (data.rows() != d || data.cols() != d)
            throw std::invalid_argument("DensityMatrix: matrix shape does not match factors");
        check_hermitian_trace();
    }

    int dim() const { return static_cast<int>(data.rows()); }

    void check_hermitian_trace() const {
        const double herm_err = (data - data.adjoint()).cwiseAbs().maxCoeff();
        if (herm_err > herm_tol)
            throw std::invalid_argument("DensityMatrix: not Hermitian (max dev " +
                                        std::to_string(herm_err) + ")");
        const double tr_err = std::abs(data.trace() - cplx(1.0, 0.0));
        if (tr_err > trace_tol)
            throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                        std::to_string(tr_err));
    }
};

} // namespace qrabi
