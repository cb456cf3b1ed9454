// linalg.hpp — Thin LAPACK wrappers for the dense decompositions used
// throughout: Hermitian eigensolve, general complex eigenvalues, SVD.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qrabi/types.hpp"

namespace qrabi::linalg {

struct HermEigen {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns, orthonormal
};

// zheevd. Input must be Hermitian; only the lower triangle is referenced.
// Matrices with exactly zero imaginary part are routed through dsyevd,
// which is several times faster.
HermEigen eigh(const Matrix& a);

// Eigenvalues only (zheevd with jobz='N').
Eigen::VectorXd eigvalsh(const Matrix& a);

// zgeev, eigenvalues only.
Vector eigvals(const Matrix& a);

// zgesdd: singular values (descending) and right singular vectors, so that
// a = U diag(s) V^†. Columns of v correspond to singular values.
struct Svd {
    Eigen::VectorXd singular_values;
    Matrix v;
};
Svd svd_right(const Matrix& a);

// exp(A) for anti-Hermitian A (A^† = −A), via the spectral decomposition of iA.
Matrix exp_antihermitian(const Matrix& a);

// OpenBLAS thread count. The library forces single-threaded BLAS on first use
// so results do not depend on machine parallelism; sweep workers provide the
// concurrency instead.
void set_blas_threads(int n);
void ensure_single_threaded_blas();

} // namespace qrabi::linalg
