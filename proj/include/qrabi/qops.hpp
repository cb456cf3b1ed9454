// qops.hpp — Operator construction on the two-qubit ⊗ boson space, tensor
// bookkeeping (partial trace / partial transpose), and matrix functions of
// Hermitian operators.

#pragma once

#include <set>
#include <vector>

#include "qrabi/types.hpp"

namespace qrabi::ops {

enum class Pauli { X, Y, Z, Plus, Minus };

// Boson annihilation operator â ⊗-extended with identities on the qubits:
// â|n⟩ = √n |n−1⟩.
Operator annihilation(const HilbertSpace& space);
Operator creation(const HilbertSpace& space);

// Photon number â†â on the composite space.
Operator number(const HilbertSpace& space);

// The named 2×2 operator on the chosen qubit (1 or 2), identity elsewhere.
// σ̂z|e⟩ = +|e⟩, σ̂z|g⟩ = −|g⟩; σ̂+ = |e⟩⟨g|.
Operator pauli(Pauli which, int qubit_index, const HilbertSpace& space);

// π̂ = exp(iπ n̂) with n̂ the total excitation number. Diagonal with entries
// (−1)^(q1+q2+n); π̂² = 1.
Operator parity_operator(const HilbertSpace& space);

// Parity sign of one composite basis state.
inline int basis_parity(const HilbertSpace& s, int basis_index) {
    const int n = basis_index % s.n_fock;
    const int q = basis_index / s.n_fock;
    return ((q >> 1) + (q & 1) + n) % 2 == 0 ? 1 : -1;
}

// â applied to a state vector without forming the matrix.
Vector apply_annihilation(const HilbertSpace& space, const Vector& v);
Vector apply_creation(const HilbertSpace& space, const Vector& v);

// Reduced state on the kept factors (indices into rho.factors, ascending).
// keep must be a nonempty proper subset.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<Subsystem>& keep);

// Transpose the indices of the chosen factors; Hermiticity and trace are
// preserved. Returns a plain matrix (the result is generally not a state).
Matrix partial_transpose(const DensityMatrix& rho, const std::set<int>& transposed);
Matrix partial_transpose(const DensityMatrix& rho, Subsystem transposed);

// Hermitian PSD square root. Eigenvalues in [−psd_tol, 0) are clamped to
// zero; anything below −psd_tol is an error.
Matrix herm_sqrt(const DensityMatrix& rho);

// S(ρ) = −Σ λ log₂ λ in bits, with 0·log 0 := 0.
double von_neumann_entropy(const DensityMatrix& rho);
double entropy_bits(const Matrix& rho, double psd_tol = 1e-9);

// Kronecker product, rows of a major.
Matrix kron(const Matrix& a, const Matrix& b);

} // namespace qrabi::ops
