// linalg.cpp — LAPACK-backed dense decompositions.

#include "qrabi/linalg.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#define lapack_complex_double std::complex<double>
#define lapack_complex_float std::complex<float>
#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace qrabi::linalg {

namespace {

std::atomic<bool> blas_threads_pinned{false};

void pin_blas_once() {
    bool expected = false;
    if (blas_threads_pinned.compare_exchange_strong(expected, true))
        openblas_set_num_threads(1);
}

} // namespace

void set_blas_threads(int n) {
    blas_threads_pinned.store(true);
    openblas_set_num_threads(n);
}

void ensure_single_threaded_blas() { pin_blas_once(); }

HermEigen eigh(const Matrix& a) {
    pin_blas_once();
    if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    HermEigen out;
    out.values.resize(n);
    if (n == 0) {
        out.vectors.resize(0, 0);
        return out;
    }
    if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
        Eigen::MatrixXd re = a.real();
        lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         re.data(), n, out.values.data());
        if (info != 0)
            throw std::runtime_error("dsyevd failed with info=" + std::to_string(info));
        out.vectors = re.cast<cplx>();
        return out;
    }
    out.vectors = a;  // overwritten with eigenvectors
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                     out.vectors.data(), n, out.values.data());
    if (info != 0)
        throw std::runtime_error("zheevd failed with info=" + std::to_string(info));
    return out;
}

Eigen::VectorXd eigvalsh(const Matrix& a) {
    pin_blas_once();
    if (a.rows() != a.cols()) throw std::invalid_argument("eigvalsh: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Matrix work = a;
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
    if (info != 0)
        throw std::runtime_error("zheevd (values) failed with info=" + std::to_string(info));
    return w;
}

Vector eigvals(const Matrix& a) {
    pin_blas_once();
    if (a.rows() != a.cols()) throw std::invalid_argument("eigvals: matrix not square");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    Matrix work = a;
    Vector w(n);
    if (n == 0) return w;
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n,
                                    w.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw std::runtime_error("zgeev failed with info=" + std::to_string(info));
    return w;
}

Svd svd_right(const Matrix& a) {
    pin_blas_once();
    const lapack_int m = static_cast<lapack_int>(a.rows());
    const lapack_int n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    Matrix work = a;
    Svd out;
    out.singular_values.resize(k);
    Matrix vt(k, n);
    // jobz='S': economy-size factors; U is discarded.
    Matrix u(m, k);
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m,
                                     out.singular_values.data(), u.data(), m, vt.data(), k);
    if (info != 0)
        throw std::runtime_error("zgesdd failed with info=" + std::to_string(info));
    out.v = vt.adjoint();
    return out;
}

Matrix exp_antihermitian(const Matrix& a) {
    const double dev = (a + a.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (dev > 1e-12 * scale)
        throw std::invalid_argument("exp_antihermitian: input is not anti-Hermitian");
    const Matrix h = cplx(0.0, 1.0) * a;  // Hermitian
    HermEigen es = eigh(h);
    const auto n = h.rows();
    Vector phase(n);
    for (Eigen::Index i = 0; i < n; ++i)
        phase(i) = std::exp(cplx(0.0, -es.values(i)));
    return es.vectors * phase.asDiagonal() * es.vectors.adjoint();
}

} // namespace qrabi::linalg
