// generator.cpp: GKLS generators with superoperators, Choi matrices, spectra, stationary states

#include "rateaudit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

namespace rateaudit {

void GeneratorSpec::validate(const ToleranceConfig& tol) const {
    if (d < 1) throw InputError("generator spec: dimension must be positive");
    if (hamiltonian.rows() != d || hamiltonian.cols() != d) {
        throw InputError("generator spec: hamiltonian must be d x d");
    }
    require_finite(hamiltonian, "hamiltonian");
    if (hermiticity_defect(hamiltonian) > tol.hermiticity_tol * std::max(1.0, hamiltonian.norm())) {
        throw InputError("generator spec: hamiltonian is not Hermitian");
    }
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        const auto& j = jumps[k];
        if (j.matrix.rows() != d || j.matrix.cols() != d) {
            throw InputError("generator spec: jump " + std::to_string(k) + " must be d x d");
        }
        require_finite(j.matrix, "jump " + std::to_string(k));
        if (!std::isfinite(j.rate)) {
            throw InputError("generator spec: jump " + std::to_string(k) + " has a non-finite rate");
        }
    }
}

const char* to_string(Picture p) {
    return p == Picture::schroedinger ? "schroedinger" : "heisenberg";
}

Superoperator::Superoperator(Eigen::Index d, CMatrix matrix, Picture picture)
    : d_(d), matrix_(std::move(matrix)), picture_(picture) {
    if (d_ < 1 || matrix_.rows() != d_ * d_ || matrix_.cols() != d_ * d_) {
        throw InputError("superoperator: matrix must be d^2 x d^2");
    }
    require_finite(matrix_, "superoperator");
}

Superoperator Superoperator::from_map(Eigen::Index d, const std::function<CMatrix(const CMatrix&)>& map,
                                      Picture picture) {
    CMatrix m(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            m.col(i + d * j) = vectorize(map(basis_matrix(d, i, j)));
        }
    }
    return Superoperator(d, std::move(m), picture);
}

Superoperator Superoperator::identity(Eigen::Index d, Picture picture) {
    return Superoperator(d, CMatrix::Identity(d * d, d * d), picture);
}

Superoperator Superoperator::zero(Eigen::Index d, Picture picture) {
    return Superoperator(d, CMatrix::Zero(d * d, d * d), picture);
}

CMatrix Superoperator::apply(const CMatrix& x) const {
    if (x.rows() != d_ || x.cols() != d_) throw InputError("superoperator apply: operand must be d x d");
    return devectorize(matrix_ * vectorize(x), d_, d_);
}

double Superoperator::trace_preservation_defect() const {
    return (vectorize(rateaudit::identity(d_)).adjoint() * matrix_).norm();
}

double Superoperator::unitality_defect() const {
    return (matrix_ * vectorize(rateaudit::identity(d_))).norm();
}

double Superoperator::map_trace_defect() const {
    const CVector one = vectorize(rateaudit::identity(d_));
    return (one.adjoint() * matrix_ - one.adjoint()).norm();
}

double Superoperator::map_unitality_defect() const {
    const CVector one = vectorize(rateaudit::identity(d_));
    return (matrix_ * one - one).norm();
}

Superoperator compose(const Superoperator& b, const Superoperator& a) {
    if (a.dim() != b.dim()) throw InputError("compose: dimension mismatch");
    return Superoperator(a.dim(), b.matrix() * a.matrix(), b.picture());
}

CMatrix sandwich_superop(const CMatrix& a, const CMatrix& b) { return kron(b.transpose(), a); }

Superoperator build_superoperator(const GeneratorSpec& spec, const ToleranceConfig& tol) {
    spec.validate(tol);
    const Eigen::Index d = spec.d;
    const CMatrix id = rateaudit::identity(d);
    const cplx i_unit(0.0, 1.0);
    CMatrix m = -i_unit * (kron(id, spec.hamiltonian) - kron(spec.hamiltonian.transpose(), id));
    for (const auto& j : spec.jumps) {
        if (j.rate == 0.0) continue;
        const CMatrix ldl = j.matrix.adjoint() * j.matrix;
        m += j.rate * (kron(j.matrix.conjugate(), j.matrix) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
    }
    return Superoperator(d, std::move(m), Picture::schroedinger);
}

Superoperator adjoint_superoperator(const Superoperator& s) {
    const Picture flipped = s.picture() == Picture::schroedinger ? Picture::heisenberg : Picture::schroedinger;
    return Superoperator(s.dim(), s.matrix().adjoint(), flipped);
}

ChoiMatrix choi(const Superoperator& s) {
    const Eigen::Index d = s.dim();
    const CMatrix& m = s.matrix();
    ChoiMatrix c{d, CMatrix(d * d, d * d)};
    const double inv_d = 1.0 / static_cast<double>(d);
    // C[(i,a),(j,b)] = Φ(|i⟩⟨j|)_{ab} / d
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index b = 0; b < d; ++b) {
                    c.matrix(i * d + a, j * d + b) = m(a + d * b, i + d * j) * inv_d;
                }
            }
        }
    }
    return c;
}

CMatrix superop_from_choi(const ChoiMatrix& c) {
    const Eigen::Index d = c.d;
    CMatrix m(d * d, d * d);
    const double scale = static_cast<double>(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index b = 0; b < d; ++b) {
                    m(a + d * b, i + d * j) = c.matrix(i * d + a, j * d + b) * scale;
                }
            }
        }
    }
    return m;
}

CVector max_entangled(Eigen::Index d) {
    CVector v = CVector::Zero(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index k = 0; k < d; ++k) v(k * d + k) = amp;
    return v;
}

RateReport relaxation_rates(const Superoperator& s, const ToleranceConfig& tol) {
    const CMatrix& m = s.matrix();
    const double scale = std::max(1.0, s.norm());
    const double defect =
        s.picture() == Picture::schroedinger ? s.trace_preservation_defect() : s.unitality_defect();
    if (defect > 1e-9 * scale) {
        throw InvariantError(s.picture() == Picture::schroedinger
                                 ? "relaxation_rates: generator is not trace-preserving"
                                 : "relaxation_rates: Heisenberg generator is not unital");
    }

    const auto pairs = eig_general(m);
    RateReport report;
    report.eigenvalues.reserve(pairs.size());
    for (const auto& p : pairs) report.eigenvalues.push_back(p.value);

    std::size_t zero = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        if (std::abs(pairs[k].value) < std::abs(pairs[zero].value)) zero = k;
    }
    const double zero_abs = std::abs(pairs[zero].value);
    // A Jordan block at zero splits the computed eigenvalue by O(sqrt(eps)); beyond 1e-6 the
    // generator cannot be trace-preserving.
    if (zero_abs > 1e-6 * scale) {
        throw InvariantError("relaxation_rates: no near-zero eigenvalue (generator not trace-preserving)");
    }
    report.dropped_zero_index = zero;

    // Eigenvalue condition number 1/|l†r| from the left null vector of (M − λ₀).
    const Eigen::Index n = m.rows();
    const CMatrix shifted = m - pairs[zero].value * CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullU);
    const CVector left = svd.matrixU().col(n - 1);
    const double overlap = std::abs(left.dot(pairs[zero].vector));
    report.zero_condition = overlap > 0.0 ? 1.0 / overlap : std::numeric_limits<double>::infinity();
    report.defective_zero = report.zero_condition > 1e8 || zero_abs > tol.psd_tol * scale;

    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (k == zero) continue;
        report.rates.push_back(0.0 - pairs[k].value.real());
    }
    std::sort(report.rates.begin(), report.rates.end(), std::greater<>());
    for (double g : report.rates) report.rate_sum += g;
    report.gamma_max = report.rates.empty() ? 0.0 : report.rates.front();
    report.unstable = !report.rates.empty() && report.rates.back() < -tol.psd_tol * scale;
    return report;
}

namespace {

// Real coordinates (Re, Im of the column-stacked entries) of a Hermitian matrix.
RVector real_coords(const CMatrix& h) {
    const CVector v = vectorize(h);
    RVector out(2 * v.size());
    out.head(v.size()) = v.real();
    out.tail(v.size()) = v.imag();
    return out;
}

CMatrix from_real_coords(const RVector& r, Eigen::Index d) {
    const Eigen::Index n = d * d;
    CVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = cplx(r(k), r(n + k));
    return devectorize(v, d, d);
}

double min_eig_herm(const CMatrix& m, CVector* vec = nullptr) {
    const auto eig = eigh(hermitian_part(m));
    if (vec) *vec = eig.vectors.col(0);
    return eig.values(0);
}

}  // namespace

StationaryStates stationary_states(const Superoperator& s, const ToleranceConfig& tol) {
    const Eigen::Index d = s.dim();
    StationaryStates out;
    const auto kernel = numerical_kernel(s.matrix(), tol);
    out.m0 = kernel.dim;
    for (const auto& v : kernel.basis) out.basis.push_back(devectorize(v, d, d));
    out.best_min_eigenvalue = -std::numeric_limits<double>::infinity();
    if (out.m0 == 0) return out;

    // Hermitian spanning set of the kernel (closed under † for Hermiticity-preserving maps),
    // orthonormalized as real vectors.
    RMatrix coords(2 * d * d, 2 * static_cast<Eigen::Index>(out.m0));
    for (std::size_t k = 0; k < out.m0; ++k) {
        const CMatrix& x = out.basis[k];
        coords.col(2 * static_cast<Eigen::Index>(k)) = real_coords(hermitian_part(x));
        coords.col(2 * static_cast<Eigen::Index>(k) + 1) = real_coords((x - x.adjoint()) / cplx(0.0, 2.0));
    }
    Eigen::JacobiSVD<RMatrix> svd(coords, Eigen::ComputeThinU);
    const double smax = svd.singularValues()(0);
    std::vector<CMatrix> herm;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) > 1e-8 * std::max(1.0, smax)) {
            herm.push_back(hermitian_part(from_real_coords(svd.matrixU().col(k), d)));
        }
    }
    const auto m = static_cast<Eigen::Index>(herm.size());
    if (m == 0) return out;
    RVector traces(m);
    for (Eigen::Index k = 0; k < m; ++k) traces(k) = herm[static_cast<std::size_t>(k)].trace().real();
    const double tt = traces.squaredNorm();
    if (tt < 1e-20) return out;  // no unit-trace element in the kernel

    auto assemble = [&](const RVector& c) {
        CMatrix x = CMatrix::Zero(d, d);
        for (Eigen::Index k = 0; k < m; ++k) x += c(k) * herm[static_cast<std::size_t>(k)];
        return x;
    };
    auto on_slice = [&](RVector c) {
        c += ((1.0 - c.dot(traces)) / tt) * traces;
        return c;
    };

    // Start from the Hilbert–Schmidt projection of I onto the kernel, then random slice points.
    RVector best = traces / tt;
    double best_val = min_eig_herm(assemble(best));
    Rng rng(0x5EEDF00DULL);
    for (int trial = 0; trial < 256; ++trial) {
        RVector c(m);
        for (Eigen::Index k = 0; k < m; ++k) c(k) = rng.normal();
        c = on_slice(c);
        const double val = min_eig_herm(assemble(c));
        if (val > best_val) {
            best_val = val;
            best = c;
        }
    }
    // Supergradient ascent of λ_min on the slice: ∂λ_min/∂c_k = v†H_k v.
    double step = 0.1 * std::max(1e-3, best.norm());
    for (int iter = 0; iter < 200 && step > 1e-12; ++iter) {
        CVector v;
        min_eig_herm(assemble(best), &v);
        RVector g(m);
        for (Eigen::Index k = 0; k < m; ++k) g(k) = v.dot(herm[static_cast<std::size_t>(k)] * v).real();
        g -= (g.dot(traces) / tt) * traces;
        if (g.norm() < 1e-14) break;
        const RVector trial = best + step * g / g.norm();
        const double val = min_eig_herm(assemble(trial));
        if (val > best_val) {
            best_val = val;
            best = trial;
        } else {
            step *= 0.5;
        }
    }
    out.best_min_eigenvalue = best_val;
    if (best_val > tol.psd_tol) {
        CMatrix omega = hermitian_part(assemble(best));
        omega /= omega.trace().real();
        out.faithful = omega;
    }
    return out;
}

Superoperator depolarizing_generator(Eigen::Index d) {
    const CVector vi = vectorize(rateaudit::identity(d));
    CMatrix m = vi * vi.adjoint() / static_cast<double>(d) - CMatrix::Identity(d * d, d * d);
    return Superoperator(d, std::move(m), Picture::schroedinger);
}

Superoperator regularize_faithful(const Superoperator& s, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InputError("regularize_faithful: epsilon must be positive");
    }
    if (s.trace_preservation_defect() > 1e-9 * std::max(1.0, s.norm())) {
        throw InvariantError("regularize_faithful: generator is not trace-preserving");
    }
    return Superoperator(s.dim(), s.matrix() + epsilon * depolarizing_generator(s.dim()).matrix(), s.picture());
}

CMatrix integral_stationary(const Superoperator& s, const CMatrix& sigma, double horizon,
                            const ToleranceConfig& tol) {
    (void)tol;
    const Eigen::Index d = s.dim();
    if (!(horizon > 0.0)) throw InputError("integral_stationary: horizon must be positive");
    if (sigma.rows() != d || sigma.cols() != d) throw InputError("integral_stationary: sigma must be d x d");
    const CVector v0 = vectorize(sigma);
    const CMatrix full = expm(horizon * s.matrix());
    if ((full * v0 - v0).norm() > 1e-8 * std::max(1.0, v0.norm())) {
        throw InvariantError("integral_stationary: sigma is not a fixed point of the time-T map");
    }
    constexpr int panels = 256;
    const double h = horizon / panels;
    const CMatrix step = expm(h * s.matrix());
    CVector node = v0;
    CVector acc = node;
    for (int k = 1; k <= panels; ++k) {
        node = step * node;
        const double w = (k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * node;
    }
    acc *= h / 3.0 / horizon;
    CMatrix out = hermitian_part(devectorize(acc, d, d));
    out /= out.trace();
    if ((s.matrix() * vectorize(out)).norm() > 1e-6) {
        throw NumericalError("integral_stationary: quadrature result is not stationary within 1e-6");
    }
    return out;
}

GeneratorSpec pauli_spec(double g1, double g2, double g3) {
    GeneratorSpec spec{2, CMatrix::Zero(2, 2), {}};
    spec.jumps.push_back({pauli::x(), 0.5 * g1});
    spec.jumps.push_back({pauli::y(), 0.5 * g2});
    spec.jumps.push_back({pauli::z(), 0.5 * g3});
    return spec;
}

GeneratorSpec qubit_dephasing_spec(double gamma) {
    return GeneratorSpec{2, CMatrix::Zero(2, 2), {{pauli::z(), gamma}}};
}

GeneratorSpec hamiltonian_spec(const CMatrix& h) {
    return GeneratorSpec{h.rows(), h, {}};
}

GeneratorSpec random_spec(Eigen::Index d, Rng& rng, double rate_lo, double rate_hi) {
    GeneratorSpec spec{d, rng.gaussian_hermitian(d), {}};
    const Eigen::Index n = d * d - 1;
    spec.jumps.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        CMatrix l = rng.gaussian_matrix(d, d);
        spec.jumps.push_back({std::move(l), rng.uniform(rate_lo, rate_hi)});
    }
    return spec;
}

}  // namespace rateaudit
