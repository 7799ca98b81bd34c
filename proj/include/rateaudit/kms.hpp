// kms.hpp: Weighted (s-family / KMS) inner products, KMS adjoint, symmetrized generator

#pragma once

#include <utility>

#include "rateaudit/generator.hpp"
#include "rateaudit/matcore.hpp"

namespace rateaudit {

// ⟨A,B⟩_s = Tr(A† ω^s B ω^{1−s}); s = ½ is the KMS product, s = 0 the GNS product.
// Powers of ω are computed once at construction.
class WeightedInnerProduct {
public:
    WeightedInnerProduct(CMatrix omega, double s, const ToleranceConfig& tol = {});

    const CMatrix& omega() const { return omega_; }
    double s() const { return s_; }
    const CMatrix& omega_s() const { return omega_s_; }
    const CMatrix& omega_one_minus_s() const { return omega_1ms_; }
    const CMatrix& sqrt_omega() const { return sqrt_; }
    const CMatrix& inv_sqrt_omega() const { return inv_sqrt_; }

private:
    CMatrix omega_;
    double s_;
    CMatrix omega_s_;
    CMatrix omega_1ms_;
    CMatrix sqrt_;
    CMatrix inv_sqrt_;
};

cplx s_inner(const CMatrix& a, const CMatrix& b, const WeightedInnerProduct& w);

// V_ω(X) = ω^{1/2} X ω^{1/2} and its inverse, as superoperators.
Superoperator kms_conjugation(const WeightedInnerProduct& w);
Superoperator kms_conjugation_inverse(const WeightedInnerProduct& w);

// 𝔏^# = V_ω^{-1}∘𝔏∘V_ω, the KMS adjoint of the Heisenberg generator 𝔏†. Throws InvariantError
// unless ω is stationary for 𝔏 (the Schroedinger counterpart of s_heis).
Superoperator kms_adjoint(const Superoperator& s_heis, const WeightedInnerProduct& w);

// 𝔏̃ = ½(𝔏† + 𝔏^#), Heisenberg picture, KMS-self-adjoint.
Superoperator symmetrized_generator(const Superoperator& s_heis, const WeightedInnerProduct& w);

// Extreme eigenvalues of ½(m + m†); every eigenvalue of m has real part inside.
std::pair<double, double> bendixson_interval(const CMatrix& m);

struct SelfAdjointness {
    bool is_selfadjoint = false;
    double residual = 0.0;
};

// max over matrix units of |⟨𝔇†E_ab, E_cd⟩_s − ⟨E_ab, 𝔇†E_cd⟩_s|.
SelfAdjointness check_s_selfadjoint(const Superoperator& d_heis, const WeightedInnerProduct& w, double tol);

}  // namespace rateaudit
