// matcore.cpp: Dense complex matrix kernels

#include "rateaudit/matcore.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace rateaudit {

void ToleranceConfig::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0 && v < 1.0)) {
            throw InputError(std::string("tolerance ") + name + " must lie in (0, 1)");
        }
    };
    check(psd_tol, "psd_tol");
    check(rank_tol, "rank_tol");
    check(hermiticity_tol, "hermiticity_tol");
}

void require_finite(const CMatrix& m, const std::string& what) {
    if (!m.allFinite()) {
        throw InputError(what + " contains non-finite entries");
    }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CVector vectorize(const CMatrix& m) {
    // Eigen storage is column-major, so the raw buffer is already column-stacked.
    return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix devectorize(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (rows < 0 || cols < 0 || rows * cols != v.size()) {
        throw InputError("devectorize: rows*cols does not match vector length");
    }
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix devectorize(const CVector& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    return devectorize(v, d, d);
}

namespace {

bool eig_order(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
}

}  // namespace

std::vector<EigenPair> eig_general(const CMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("eig_general: matrix must be square");
    require_finite(m, "eig_general input");
    std::vector<EigenPair> out;
    if (m.rows() == 0) return out;
    Eigen::ComplexEigenSolver<CMatrix> solver(m, true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_general: eigensolver did not converge");
    }
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        CVector v = solver.eigenvectors().col(k);
        const double n = v.norm();
        if (n > 0.0) v /= n;
        out.push_back({solver.eigenvalues()(k), std::move(v)});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const EigenPair& a, const EigenPair& b) { return eig_order(a.value, b.value); });
    return out;
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("eigenvalues: matrix must be square");
    require_finite(m, "eigenvalues input");
    Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalues: eigensolver did not converge");
    }
    std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
    std::stable_sort(out.begin(), out.end(), eig_order);
    return out;
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

double hermiticity_defect(const CMatrix& m) { return (m - m.adjoint()).norm(); }

HermitianEigen eigh(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigh: Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_norm_hermitian(const CMatrix& m) {
    return eigh(hermitian_part(m)).values.cwiseAbs().sum();
}

PsdResult psd_min_eig(const CMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) throw InputError("psd_min_eig: matrix must be square");
    require_finite(m, "psd_min_eig input");
    const double scale = std::max(1.0, m.norm());
    if (hermiticity_defect(m) > tol.hermiticity_tol * scale) {
        throw InputError("psd_min_eig: matrix is not Hermitian within tolerance");
    }
    const auto eig = eigh(hermitian_part(m));
    PsdResult out;
    out.min_eigenvalue = eig.values(0);
    const double norm = eig.values.cwiseAbs().maxCoeff();
    out.is_psd = out.min_eigenvalue >= -tol.psd_tol * std::max(1.0, norm);
    out.witness = eig.vectors.col(0);
    return out;
}

CMatrix frac_power_psd(const CMatrix& m, double p, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) throw InputError("frac_power_psd: matrix must be square");
    require_finite(m, "frac_power_psd input");
    const double scale = std::max(1.0, m.norm());
    if (hermiticity_defect(m) > tol.hermiticity_tol * scale) {
        throw InputError("frac_power_psd: matrix is not Hermitian within tolerance");
    }
    const auto eig = eigh(hermitian_part(m));
    const double norm = std::max(1.0, eig.values.cwiseAbs().maxCoeff());
    const bool integral = std::floor(p) == p;
    RVector powered(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        double lam = eig.values(k);
        if (p < 0.0 && lam <= tol.psd_tol * norm) {
            throw InputError("frac_power_psd: negative power of a singular matrix");
        }
        if (lam < 0.0) {
            if (lam < -tol.psd_tol * norm && !integral) {
                throw InputError("frac_power_psd: negative eigenvalue with non-integer power");
            }
            if (!integral) lam = 0.0;
        }
        powered(k) = (p == 0.0) ? 1.0 : std::pow(lam, p);
    }
    return eig.vectors * powered.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

KernelBasis numerical_kernel(const CMatrix& m, const ToleranceConfig& tol) {
    if (m.rows() != m.cols()) throw InputError("numerical_kernel: matrix must be square");
    KernelBasis out;
    const Eigen::Index n = m.cols();
    if (n == 0) return out;
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double threshold = tol.rank_tol * static_cast<double>(std::max(m.rows(), m.cols())) * smax;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (sv(k) <= threshold) out.basis.push_back(svd.matrixV().col(k));
    }
    out.dim = out.basis.size();
    return out;
}

CMatrix expm(const CMatrix& m) {
    require_finite(m, "expm input");
    return m.exp();
}

CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

CMatrix basis_matrix(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    CMatrix e = CMatrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

CMatrix orthogonal_complement(const CVector& v) {
    const Eigen::Index n = v.size();
    Eigen::HouseholderQR<CMatrix> qr(v);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    return q.rightCols(n - 1);
}

namespace pauli {

CMatrix x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

CMatrix y() {
    CMatrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0),
         cplx(0.0, 1.0), 0.0;
    return m;
}

CMatrix z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

CMatrix plus() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

CMatrix minus() {
    CMatrix m = CMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

}  // namespace pauli

}  // namespace rateaudit
