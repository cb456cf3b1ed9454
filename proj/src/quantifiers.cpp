// quantifiers.cpp — Correlation and nonclassicality measures on the thermal
// state, plus per-grid-point orchestration.

#include "qrabi/quantifiers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "qrabi/linalg.hpp"
#include "qrabi/qops.hpp"

namespace qrabi::quant {

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

Eigen::Matrix2cd pauli2(int i) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (i) {
        case 0: m(0, 1) = 1; m(1, 0) = 1; break;
        case 1: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
        default: m(0, 0) = -1; m(1, 1) = 1; break;
    }
    return m;
}

Matrix kron4(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return out;
}

void require_qq(const Matrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("expected a 4x4 two-qubit state");
}

// Entropy (bits) of a Hermitian 2×2 matrix from trace and determinant.
double entropy2_bits(double trace, double det) {
    const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * det));
    double s = 0.0;
    for (double lam : {(trace + disc) / 2.0, (trace - disc) / 2.0})
        if (lam > 0) s -= lam * std::log2(lam);
    return s < 0 ? 0.0 : s;
}

double diagonal_entropy_bits(const Matrix& rho) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        const double p = rho(i, i).real();
        if (p > 0) s -= p * std::log2(p);
    }
    return s < 0 ? 0.0 : s;
}

} // namespace

const std::vector<Field>& all_fields() {
    static const std::vector<Field> fields = {
        Field::G2,           Field::XExcitations, Field::Zeta2,    Field::NPhotons,
        Field::NegativityQQ, Field::NegativityQF, Field::Concurrence,
        Field::MutualInfo,   Field::Discord,      Field::CoherenceRE,
        Field::Lqu,          Field::P0,
    };
    return fields;
}

std::string field_name(Field f) {
    switch (f) {
        case Field::G2: return "g2";
        case Field::XExcitations: return "x_excitations";
        case Field::Zeta2: return "zeta2";
        case Field::NPhotons: return "n_photons";
        case Field::NegativityQQ: return "negativity_qq";
        case Field::NegativityQF: return "negativity_q_f";
        case Field::Concurrence: return "concurrence";
        case Field::MutualInfo: return "mutual_info";
        case Field::Discord: return "discord";
        case Field::CoherenceRE: return "coherence_re";
        case Field::Lqu: return "lqu";
        case Field::P0: return "P0";
    }
    throw std::logic_error("field_name: unknown field");
}

Field field_from_name(const std::string& name) {
    for (Field f : all_fields())
        if (field_name(f) == name) return f;
    throw std::invalid_argument("unknown quantifier name: " + name);
}

std::optional<double>& QuantifierReport::by_field(Field f) {
    switch (f) {
        case Field::G2: return g2;
        case Field::XExcitations: return x_excitations;
        case Field::Zeta2: return zeta2;
        case Field::NPhotons: return n_photons;
        case Field::NegativityQQ: return negativity_qq;
        case Field::NegativityQF: return negativity_q_f;
        case Field::Concurrence: return concurrence;
        case Field::MutualInfo: return mutual_info;
        case Field::Discord: return discord;
        case Field::CoherenceRE: return coherence_re;
        case Field::Lqu: return lqu;
        case Field::P0: return p0;
    }
    throw std::logic_error("by_field: unknown field");
}

const std::optional<double>& QuantifierReport::by_field(Field f) const {
    return const_cast<QuantifierReport*>(this)->by_field(f);
}

DressedJumpOperator dressed_jump_operator(const model::EigenSystem& eigs, int levels) {
    if (levels < 1 || levels > eigs.levels())
        throw std::invalid_argument("dressed_jump_operator: level count out of range");
    const HilbertSpace& space = eigs.space;
    const auto v = eigs.states.leftCols(levels);

    // X_{jk} = ⟨φ_j|(â†+â)|φ_k⟩ without forming the dim×dim quadrature.
    Matrix b(space.dim(), levels);
    for (int k = 0; k < levels; ++k) {
        const Vector vk = v.col(k);
        b.col(k) = ops::apply_annihilation(space, vk) + ops::apply_creation(space, vk);
    }
    const Matrix x = v.adjoint() * b;

    DressedJumpOperator out;
    out.levels = levels;
    out.xplus = Matrix::Zero(levels, levels);
    for (int k = 1; k < levels; ++k)
        for (int j = 0; j < k; ++j)
            out.xplus(j, k) = cplx(0.0, -1.0) * (eigs.energies(k) - eigs.energies(j)) * x(j, k);
    return out;
}

G2Result dressed_g2(const Matrix& rho_eigenbasis, const DressedJumpOperator& x) {
    if (rho_eigenbasis.rows() != x.levels || rho_eigenbasis.cols() != x.levels)
        throw std::invalid_argument("dressed_g2: state and jump operator bases differ");
    const Matrix xx = x.xplus * x.xplus;
    G2Result out;
    out.x_excitations = (rho_eigenbasis * (x.xplus.adjoint() * x.xplus)).trace().real();
    if (out.x_excitations < 1e-14) return out;  // g2 undefined
    const double numerator = (rho_eigenbasis * (xx.adjoint() * xx)).trace().real();
    out.g2 = numerator / (out.x_excitations * out.x_excitations);
    return out;
}

namespace {

struct BosonMoments {
    cplx a{0, 0};
    cplx a2{0, 0};
    double n = 0.0;
};

double zeta2_from_moments(const BosonMoments& m) {
    if (std::abs(m.a) <= 1e-8) return 1.0 + 2.0 * m.n - 2.0 * std::abs(m.a2);
    // θ-minimized variance of â e^{−iθ} + â† e^{iθ} with the mean subtracted.
    return 1.0 + 2.0 * m.n - 2.0 * std::norm(m.a) - 2.0 * std::abs(m.a2 - m.a * m.a);
}

} // namespace

SqueezingResult squeezing(const DensityMatrix& rho_full) {
    if (rho_full.factors.size() != 3 || rho_full.factors[0] != 2 || rho_full.factors[1] != 2)
        throw std::invalid_argument("squeezing: expected the full qubit⊗qubit⊗boson state");
    const int F = rho_full.factors[2];
    BosonMoments m;
    for (int q = 0; q < 4; ++q)
        for (int n = 0; n < F; ++n) {
            const int i = q * F + n;
            m.n += rho_full.data(i, i).real() * n;
            if (n + 1 < F)
                m.a += rho_full.data(q * F + n + 1, i) * std::sqrt(double(n + 1));
            if (n + 2 < F)
                m.a2 += rho_full.data(q * F + n + 2, i) *
                        std::sqrt(double(n + 1) * double(n + 2));
        }
    return SqueezingResult{zeta2_from_moments(m), m.n};
}

double negativity(const DensityMatrix& rho, const std::set<int>& transposed_factors) {
    const Matrix pt = ops::partial_transpose(rho, transposed_factors);
    const Eigen::VectorXd eps = linalg::eigvalsh(pt);
    double neg = 0.0;
    for (Eigen::Index i = 0; i < eps.size(); ++i) neg += (std::abs(eps(i)) - eps(i)) / 2.0;
    return neg;
}

double negativity_qubit_pair(const Matrix& rho_qq) {
    require_qq(rho_qq);
    return negativity(DensityMatrix({2, 2}, rho_qq), {0});
}

double concurrence(const Matrix& rho_qq) {
    require_qq(rho_qq);
    const Matrix yy = kron4(pauli2(1), pauli2(1));
    const Matrix r = rho_qq * yy * rho_qq.conjugate() * yy;
    const Vector ev = linalg::eigvals(r);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, ev(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double mutual_information(const DensityMatrix& rho, int cut) {
    const int nf = static_cast<int>(rho.factors.size());
    if (cut <= 0 || cut >= nf)
        throw std::invalid_argument("mutual_information: cut must split the factors");
    std::set<int> a, b;
    for (int f = 0; f < nf; ++f) (f < cut ? a : b).insert(f);
    const double s_a = ops::von_neumann_entropy(ops::partial_trace(rho, a));
    const double s_b = ops::von_neumann_entropy(ops::partial_trace(rho, b));
    const double s_ab = ops::entropy_bits(rho.data, rho.psd_tol);
    return s_a + s_b - s_ab;
}

double mutual_information_qq(const Matrix& rho_qq) {
    require_qq(rho_qq);
    return mutual_information(DensityMatrix({2, 2}, rho_qq), 1);
}

namespace {

// Average post-measurement conditional entropy for a projective measurement
// along Bloch direction (θ, φ) on the measured qubit.
double conditional_entropy(const Matrix& rho, MeasuredSide side, double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx phase = std::exp(cplx(0.0, phi));
    // |n⟩ = c|g⟩ + e^{iφ}s|e⟩ and its orthogonal partner s|g⟩ − e^{iφ}c|e⟩.
    const std::array<std::array<cplx, 2>, 2> proj = {{{cplx(c), phase * s}, {cplx(s), -phase * c}}};

    double total = 0.0;
    for (const auto& c : proj) {
        cplx r00 = 0, r01 = 0, r11 = 0;
        for (int m = 0; m < 2; ++m)
            for (int mp = 0; mp < 2; ++mp) {
                const cplx w = std::conj(c[m]) * c[mp];
                if (side == MeasuredSide::A) {
                    r00 += w * rho(m * 2 + 0, mp * 2 + 0);
                    r01 += w * rho(m * 2 + 0, mp * 2 + 1);
                    r11 += w * rho(m * 2 + 1, mp * 2 + 1);
                } else {
                    r00 += w * rho(0 * 2 + m, 0 * 2 + mp);
                    r01 += w * rho(0 * 2 + m, 1 * 2 + mp);
                    r11 += w * rho(1 * 2 + m, 1 * 2 + mp);
                }
            }
        const double p = r00.real() + r11.real();
        if (p < 1e-14) continue;
        const double det = r00.real() * r11.real() - std::norm(r01);
        total += p * entropy2_bits(1.0, det / (p * p));
    }
    return total;
}

} // namespace

double quantum_discord(const Matrix& rho_qq, MeasuredSide side, const DiscordOptions& options) {
    require_qq(rho_qq);
    const DensityMatrix rho({2, 2}, rho_qq);
    const std::set<int> measured = {side == MeasuredSide::A ? 0 : 1};
    const double s_measured = ops::von_neumann_entropy(ops::partial_trace(rho, measured));
    const double s_ab = ops::entropy_bits(rho_qq);

    auto f = [&](double theta, double phi) {
        return conditional_entropy(rho_qq, side, theta, phi);
    };

    // Uniform scan, then Nelder–Mead refinement from the best cell.
    const int n = options.grid;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0, best_phi = 0;
    for (int i = 0; i < n; ++i) {
        const double theta = M_PI * (i + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const double phi = 2.0 * M_PI * j / n;
            const double v = f(theta, phi);
            if (v < best) {
                best = v;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    struct Vertex {
        double t, p, v;
    };
    const double h = M_PI / std::max(4, n);
    std::array<Vertex, 3> s = {{{best_theta, best_phi, best},
                                {best_theta + h, best_phi, f(best_theta + h, best_phi)},
                                {best_theta, best_phi + h, f(best_theta, best_phi + h)}}};
    for (int it = 0; it < options.max_refine_iters; ++it) {
        std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
        const double extent = std::max(
            std::hypot(s[1].t - s[0].t, s[1].p - s[0].p),
            std::hypot(s[2].t - s[0].t, s[2].p - s[0].p));
        if (extent < options.refine_tol) break;
        const double ct = (s[0].t + s[1].t) / 2.0, cp = (s[0].p + s[1].p) / 2.0;
        auto make = [&](double scale) {
            Vertex v{ct + scale * (ct - s[2].t), cp + scale * (cp - s[2].p), 0};
            v.v = f(v.t, v.p);
            return v;
        };
        Vertex refl = make(1.0);
        if (refl.v < s[0].v) {
            Vertex exp = make(2.0);
            s[2] = exp.v < refl.v ? exp : refl;
        } else if (refl.v < s[1].v) {
            s[2] = refl;
        } else {
            Vertex contr = make(-0.5);
            if (contr.v < s[2].v) {
                s[2] = contr;
            } else {
                for (int k = 1; k < 3; ++k) {
                    s[k].t = s[0].t + 0.5 * (s[k].t - s[0].t);
                    s[k].p = s[0].p + 0.5 * (s[k].p - s[0].p);
                    s[k].v = f(s[k].t, s[k].p);
                }
            }
        }
        best = std::min(best, s[0].v);
    }
    best = std::min({best, s[0].v, s[1].v, s[2].v});

    const double d = s_measured - s_ab + best;
    return d;
}

double coherence_re(const Matrix& rho_qq) {
    require_qq(rho_qq);
    return diagonal_entropy_bits(rho_qq) - ops::entropy_bits(rho_qq);
}

double lqu(const Matrix& rho_qq) {
    require_qq(rho_qq);
    const Matrix root = ops::herm_sqrt(DensityMatrix({2, 2}, rho_qq));
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix3d w;
    std::array<Matrix, 3> sig;
    for (int i = 0; i < 3; ++i) sig[i] = kron4(pauli2(i), id);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            w(i, j) = (root * sig[i] * root * sig[j]).trace().real();
    const Eigen::Matrix3d ws = (w + w.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(ws);
    return 1.0 - es.eigenvalues().maxCoeff();
}

// ---------------------------------------------------------------------------
// Per-grid-point evaluation

namespace {

// Scalar quantifiers computed from one eigensystem at one temperature, with
// the reduced state, boson moments, and dressed-G² pieces cached across
// fields.
class PointEvaluator {
public:
    PointEvaluator(const model::EigenSystem& eigs, double T, const EvalOptions& opt)
        : eigs_(eigs), opt_(opt) {
        thermal::ThermalSpec spec{T, opt.prune_tol};
        pops_ = thermal::populations(eigs, spec);
        populated_ = std::max(1, thermal::populated_levels(pops_, opt.prune_tol));
        norm_ = 0.0;
        for (int k = 0; k < populated_; ++k) norm_ += pops_[k];
    }

    double scalar(Field f) {
        switch (f) {
            case Field::G2: return g2().g2.value_or(kUndefined);
            case Field::XExcitations: return g2().x_excitations;
            case Field::Zeta2: return zeta2_from_moments(moments());
            case Field::NPhotons: return moments().n;
            case Field::NegativityQQ: return negativity_qubit_pair(rho_qq());
            case Field::NegativityQF: return negativity_qf();
            case Field::Concurrence: return concurrence(rho_qq());
            case Field::MutualInfo: return mutual_information_qq(rho_qq());
            case Field::Discord: return quantum_discord(rho_qq(), MeasuredSide::A, opt_.discord);
            case Field::CoherenceRE: return coherence_re(rho_qq());
            case Field::Lqu: return lqu(rho_qq());
            case Field::P0: return pops_[0];
        }
        throw std::logic_error("PointEvaluator: unknown field");
    }

    int populated() const { return populated_; }
    int g2_levels() const { return std::min(eigs_.levels(), populated_ + opt_.g2_guard_levels); }

private:
    double weight(int k) const { return pops_[k] / norm_; }

    const Matrix& rho_qq() {
        if (rho_qq_.size() == 0) {
            const int F = eigs_.space.n_fock;
            rho_qq_ = Matrix::Zero(4, 4);
            for (int k = 0; k < populated_; ++k) {
                const Vector& v = eigs_.states.col(k);
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        rho_qq_(a, b) +=
                            weight(k) * v.segment(b * F, F).dot(v.segment(a * F, F));
            }
            rho_qq_ = ((rho_qq_ + rho_qq_.adjoint()) / 2.0).eval();
        }
        return rho_qq_;
    }

    const BosonMoments& moments() {
        if (!moments_) {
            BosonMoments m;
            for (int k = 0; k < populated_; ++k) {
                const Vector v = eigs_.states.col(k);
                const Vector av = ops::apply_annihilation(eigs_.space, v);
                const double w = weight(k);
                m.a += w * v.dot(av);
                m.n += w * av.squaredNorm();
                m.a2 += w * v.dot(ops::apply_annihilation(eigs_.space, av));
            }
            moments_ = m;
        }
        return *moments_;
    }

    const G2Result& g2() {
        if (!g2_) {
            const int m = g2_levels();
            const DressedJumpOperator x = dressed_jump_operator(eigs_, m);
            Eigen::VectorXd w(m);
            double norm = 0.0;
            for (int k = 0; k < m; ++k) norm += pops_[k];
            for (int k = 0; k < m; ++k) w(k) = pops_[k] / norm;
            const Matrix rho = w.cast<cplx>().asDiagonal();
            g2_ = dressed_g2(rho, x);
        }
        return *g2_;
    }

    double negativity_qf() {
        // (qubit pair)|(field) cut of the full Gibbs state.
        const auto v = eigs_.states.leftCols(populated_);
        Eigen::VectorXd w(populated_);
        for (int k = 0; k < populated_; ++k) w(k) = weight(k);
        Matrix rho = v * w.cast<cplx>().asDiagonal() * v.adjoint();
        rho = ((rho + rho.adjoint()) / 2.0).eval();
        return negativity(DensityMatrix(eigs_.space.factor_dims(), std::move(rho)), {2});
    }

    const model::EigenSystem& eigs_;
    const EvalOptions& opt_;
    std::vector<double> pops_;
    int populated_ = 1;
    double norm_ = 1.0;
    Matrix rho_qq_;
    std::optional<BosonMoments> moments_;
    std::optional<G2Result> g2_;
};

} // namespace

int choose_cutoff(const model::ModelParams& params, double T, Field target,
                  const EvalOptions& options) {
    auto scalars = [&](const model::EigenSystem& eigs) {
        PointEvaluator pe(eigs, T, options);
        return std::vector<double>{pe.scalar(target)};
    };
    return model::converge_cutoff(params, scalars, options.cutoff).n_fock;
}

QuantifierReport evaluate_all(const model::ModelParams& params, const bath::BathParams& bath,
                              double T, const EvalOptions& options) {
    params.validate();
    if (T < 0) throw std::invalid_argument("evaluate_all: negative temperature");

    const std::vector<Field>& requested = options.quantifiers;
    auto scalars = [&](const model::EigenSystem& eigs) {
        PointEvaluator pe(eigs, T, options);
        std::vector<double> v;
        v.reserve(requested.size());
        for (Field f : requested) v.push_back(pe.scalar(f));
        return v;
    };

    model::ConvergedCutoff conv = model::converge_cutoff(params, scalars, options.cutoff);

    QuantifierReport report;
    for (size_t i = 0; i < requested.size(); ++i) {
        const double v = conv.scalars[i];
        if (!(requested[i] == Field::G2 && std::isnan(v))) report.by_field(requested[i]) = v;
    }
    report.n_fock_used = conv.n_fock;

    PointEvaluator pe(conv.eigs, T, options);
    const bool dressed = std::find(requested.begin(), requested.end(), Field::G2) !=
                             requested.end() ||
                         std::find(requested.begin(), requested.end(), Field::XExcitations) !=
                             requested.end();
    report.m_used = dressed ? pe.g2_levels() : pe.populated();

    if (options.include_gap) {
        const int m_gap = std::clamp(bath::required_levels(conv.eigs, T), 2,
                                     std::min(options.gap_levels_cap, conv.eigs.levels()));
        bath::BathParams b = bath;
        b.T = T;
        report.gap_ratio = bath::gap_ratio(params, b, m_gap);
        if (!dressed) report.m_used = m_gap;
    }
    return report;
}

} // namespace qrabi::quant
