// qops.cpp — Hilbert-space algebra for the two-qubit Rabi problem.

#include "qrabi/qops.hpp"

#include <cmath>
#include <stdexcept>

#include "qrabi/linalg.hpp"

namespace qrabi::ops {

namespace {

// Row-major digit strides for a factor list.
std::vector<long> strides_of(const std::vector<int>& dims) {
    std::vector<long> s(dims.size());
    long acc = 1;
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
        s[f] = acc;
        acc *= dims[f];
    }
    return s;
}

Matrix boson_annihilation(int n_fock) {
    Matrix a = Matrix::Zero(n_fock, n_fock);
    for (int n = 1; n < n_fock; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Matrix pauli2(Pauli which) {
    Matrix m = Matrix::Zero(2, 2);
    switch (which) {
        case Pauli::X: m(0, 1) = 1; m(1, 0) = 1; break;
        case Pauli::Y: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
        case Pauli::Z: m(0, 0) = -1; m(1, 1) = 1; break;   // |g⟩ first, σz|e⟩ = +|e⟩
        case Pauli::Plus: m(1, 0) = 1; break;              // |e⟩⟨g|
        case Pauli::Minus: m(0, 1) = 1; break;             // |g⟩⟨e|
    }
    return m;
}

} // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Operator annihilation(const HilbertSpace& space) {
    const Matrix id4 = Matrix::Identity(4, 4);
    return Operator(space, kron(id4, boson_annihilation(space.n_fock)));
}

Operator creation(const HilbertSpace& space) {
    Operator a = annihilation(space);
    a.data = a.data.adjoint().eval();
    return a;
}

Operator number(const HilbertSpace& space) {
    Matrix n = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) n(i, i) = double(i % space.n_fock);
    return Operator(space, std::move(n));
}

Operator pauli(Pauli which, int qubit_index, const HilbertSpace& space) {
    if (qubit_index != 1 && qubit_index != 2)
        throw std::invalid_argument("pauli: qubit_index must be 1 or 2");
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix idf = Matrix::Identity(space.n_fock, space.n_fock);
    const Matrix p = pauli2(which);
    const Matrix qq = qubit_index == 1 ? kron(p, id2) : kron(id2, p);
    return Operator(space, kron(qq, idf));
}

Operator parity_operator(const HilbertSpace& space) {
    Matrix p = Matrix::Zero(space.dim(), space.dim());
    for (int i = 0; i < space.dim(); ++i) p(i, i) = double(basis_parity(space, i));
    return Operator(space, std::move(p));
}

Vector apply_annihilation(const HilbertSpace& space, const Vector& v) {
    const int F = space.n_fock;
    Vector out = Vector::Zero(v.size());
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n + 1 < F; ++n)
            out(q * F + n) = std::sqrt(double(n + 1)) * v(q * F + n + 1);
    return out;
}

Vector apply_creation(const HilbertSpace& space, const Vector& v) {
    const int F = space.n_fock;
    Vector out = Vector::Zero(v.size());
    for (int q = 0; q < 4; ++q)
        for (int n = 1; n < F; ++n)
            out(q * F + n) = std::sqrt(double(n)) * v(q * F + n - 1);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<int>& keep) {
    const int nf = static_cast<int>(rho.factors.size());
    if (keep.empty() || static_cast<int>(keep.size()) >= nf)
        throw std::invalid_argument("partial_trace: keep set must be a nonempty proper subset");
    for (int f : keep)
        if (f < 0 || f >= nf) throw std::invalid_argument("partial_trace: factor index out of range");

    std::vector<int> kept(keep.begin(), keep.end());
    std::vector<int> traced;
    for (int f = 0; f < nf; ++f)
        if (!keep.count(f)) traced.push_back(f);

    const auto strides = strides_of(rho.factors);
    long dim_kept = 1, dim_traced = 1;
    for (int f : kept) dim_kept *= rho.factors[f];
    for (int f : traced) dim_traced *= rho.factors[f];

    // Offsets of every kept / traced multi-index into the full flat index.
    auto offsets = [&](const std::vector<int>& group, long count) {
        std::vector<long> off(count, 0);
        std::vector<int> digit(group.size(), 0);
        for (long i = 0; i < count; ++i) {
            long o = 0;
            for (size_t g = 0; g < group.size(); ++g) o += digit[g] * strides[group[g]];
            off[i] = o;
            for (int g = static_cast<int>(group.size()) - 1; g >= 0; --g) {
                if (++digit[g] < rho.factors[group[g]]) break;
                digit[g] = 0;
            }
        }
        return off;
    };
    const auto kept_off = offsets(kept, dim_kept);
    const auto traced_off = offsets(traced, dim_traced);

    Matrix out = Matrix::Zero(dim_kept, dim_kept);
    for (long r = 0; r < dim_kept; ++r)
        for (long c = 0; c < dim_kept; ++c) {
            cplx sum = 0;
            for (long t = 0; t < dim_traced; ++t)
                sum += rho.data(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
            out(r, c) = sum;
        }

    std::vector<int> out_dims;
    for (int f : kept) out_dims.push_back(rho.factors[f]);
    return DensityMatrix(out_dims, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<Subsystem>& keep) {
    if (rho.factors.size() != 3)
        throw std::invalid_argument("partial_trace: subsystem names address the full 3-factor state");
    std::set<int> k;
    for (Subsystem s : keep) k.insert(HilbertSpace::factor_of(s));
    return partial_trace(rho, k);
}

Matrix partial_transpose(const DensityMatrix& rho, const std::set<int>& transposed) {
    const int nf = static_cast<int>(rho.factors.size());
    if (transposed.empty() || static_cast<int>(transposed.size()) >= nf)
        throw std::invalid_argument("partial_transpose: need a nonempty proper factor subset");
    for (int f : transposed)
        if (f < 0 || f >= nf) throw std::invalid_argument("partial_transpose: factor index out of range");

    const auto strides = strides_of(rho.factors);
    const long dim = rho.data.rows();

    // Decompose an index into (transposed part, rest part) offsets.
    auto split = [&](long idx) {
        long t_off = 0;
        for (int f = 0; f < nf; ++f) {
            const long digit = (idx / strides[f]) % rho.factors[f];
            if (transposed.count(f)) t_off += digit * strides[f];
        }
        return t_off;
    };

    Matrix out(dim, dim);
    for (long r = 0; r < dim; ++r) {
        const long rt = split(r);
        for (long c = 0; c < dim; ++c) {
            const long ct = split(c);
            out(r - rt + ct, c - ct + rt) = rho.data(r, c);
        }
    }
    return out;
}

Matrix partial_transpose(const DensityMatrix& rho, Subsystem transposed) {
    if (rho.factors.size() != 3)
        throw std::invalid_argument("partial_transpose: subsystem names address the full 3-factor state");
    return partial_transpose(rho, std::set<int>{HilbertSpace::factor_of(transposed)});
}

Matrix herm_sqrt(const DensityMatrix& rho) {
    linalg::HermEigen es = linalg::eigh(rho.data);
    // Eigenvalues at solver-noise level get mapped to √noise otherwise.
    const double floor = 1e-14 * std::max(0.0, es.values.maxCoeff());
    Eigen::VectorXd s(es.values.size());
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
        double v = es.values(i);
        if (v < -rho.psd_tol)
            throw std::invalid_argument("herm_sqrt: state has eigenvalue " + std::to_string(v) +
                                        " below -psd_tol");
        s(i) = v > floor ? std::sqrt(v) : 0.0;
    }
    return es.vectors * s.asDiagonal() * es.vectors.adjoint();
}

double entropy_bits(const Matrix& rho, double psd_tol) {
    const Eigen::VectorXd w = linalg::eigvalsh(rho);
    double s = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double p = w(i);
        if (p < -psd_tol)
            throw std::invalid_argument("entropy: eigenvalue " + std::to_string(p) +
                                        " below -psd_tol");
        if (p > 0) s -= p * std::log2(p);
    }
    return s < 0 ? 0.0 : s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_bits(rho.data, rho.psd_tol);
}

} // namespace qrabi::ops
