// kms.cpp: Weighted inner products, KMS adjoint, symmetrized generator

#include "rateaudit/kms.hpp"

#include <algorithm>
#include <cmath>

namespace rateaudit {

WeightedInnerProduct::WeightedInnerProduct(CMatrix omega, double s, const ToleranceConfig& tol)
    : omega_(std::move(omega)), s_(s) {
    if (!(s_ >= 0.0 && s_ <= 1.0)) throw InputError("weighted inner product: s must lie in [0, 1]");
    if (omega_.rows() != omega_.cols()) throw InputError("weighted inner product: omega must be square");
    require_finite(omega_, "omega");
    if (hermiticity_defect(omega_) > tol.hermiticity_tol * std::max(1.0, omega_.norm())) {
        throw InputError("weighted inner product: omega is not Hermitian");
    }
    omega_ = hermitian_part(omega_);
    if (std::abs(omega_.trace() - cplx(1.0)) > 1e-10) {
        throw InputError("weighted inner product: omega must have unit trace");
    }
    if (eigh(omega_).values(0) <= tol.psd_tol) {
        throw InputError("weighted inner product: omega must be full rank");
    }
    omega_s_ = frac_power_psd(omega_, s_, tol);
    omega_1ms_ = frac_power_psd(omega_, 1.0 - s_, tol);
    sqrt_ = frac_power_psd(omega_, 0.5, tol);
    inv_sqrt_ = frac_power_psd(omega_, -0.5, tol);
}

cplx s_inner(const CMatrix& a, const CMatrix& b, const WeightedInnerProduct& w) {
    const Eigen::Index d = w.omega().rows();
    if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d) {
        throw InputError("s_inner: operands must be d x d");
    }
    return (a.adjoint() * w.omega_s() * b * w.omega_one_minus_s()).trace();
}

Superoperator kms_conjugation(const WeightedInnerProduct& w) {
    return Superoperator(w.omega().rows(), sandwich_superop(w.sqrt_omega(), w.sqrt_omega()));
}

Superoperator kms_conjugation_inverse(const WeightedInnerProduct& w) {
    return Superoperator(w.omega().rows(), sandwich_superop(w.inv_sqrt_omega(), w.inv_sqrt_omega()));
}

Superoperator kms_adjoint(const Superoperator& s_heis, const WeightedInnerProduct& w) {
    const Eigen::Index d = s_heis.dim();
    if (w.omega().rows() != d) throw InputError("kms_adjoint: dimension mismatch");
    const Superoperator schr = adjoint_superoperator(s_heis);
    if (schr.apply(w.omega()).norm() > 1e-8 * std::max(1.0, s_heis.norm())) {
        throw InvariantError("kms_adjoint: omega is not stationary for the generator");
    }
    const CMatrix m = kms_conjugation_inverse(w).matrix() * schr.matrix() * kms_conjugation(w).matrix();
    return Superoperator(d, m, Picture::heisenberg);
}

Superoperator symmetrized_generator(const Superoperator& s_heis, const WeightedInnerProduct& w) {
    const Superoperator sharp = kms_adjoint(s_heis, w);
    return Superoperator(s_heis.dim(), 0.5 * (s_heis.matrix() + sharp.matrix()), Picture::heisenberg);
}

std::pair<double, double> bendixson_interval(const CMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("bendixson_interval: matrix must be square");
    const auto eig = eigh(hermitian_part(m));
    return {eig.values(0), eig.values(eig.values.size() - 1)};
}

SelfAdjointness check_s_selfadjoint(const Superoperator& d_heis, const WeightedInnerProduct& w, double tol) {
    const Eigen::Index d = d_heis.dim();
    if (w.omega().rows() != d) throw InputError("check_s_selfadjoint: dimension mismatch");
    const Eigen::Index n = d * d;
    std::vector<CMatrix> units(static_cast<std::size_t>(n));
    std::vector<CMatrix> images(static_cast<std::size_t>(n));
    for (Eigen::Index a = 0; a < n; ++a) {
        units[static_cast<std::size_t>(a)] = basis_matrix(d, a % d, a / d);
        images[static_cast<std::size_t>(a)] = d_heis.apply(units[static_cast<std::size_t>(a)]);
    }
    SelfAdjointness out;
    for (std::size_t a = 0; a < units.size(); ++a) {
        for (std::size_t b = 0; b < units.size(); ++b) {
            const cplx lhs = s_inner(images[a], units[b], w);
            const cplx rhs = s_inner(units[a], images[b], w);
            out.residual = std::max(out.residual, std::abs(lhs - rhs));
        }
    }
    out.is_selfadjoint = out.residual < tol;
    return out;
}

}  // namespace rateaudit
