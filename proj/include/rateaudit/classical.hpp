// classical.hpp: Classical projection K_ij = Tr(P_i 𝔏(P_j)) and the trace identities built on it

#pragma once

#include <vector>

#include "rateaudit/generator.hpp"
#include "rateaudit/matcore.hpp"

namespace rateaudit {

class OrthonormalBasis {
public:
    // Throws InputError unless the d vectors are orthonormal within tol.
    explicit OrthonormalBasis(std::vector<CVector> vectors, double tol = 1e-10);
    // Columns of a unitary.
    static OrthonormalBasis from_unitary(const CMatrix& u, double tol = 1e-10);
    static OrthonormalBasis computational(Eigen::Index d);

    Eigen::Index dim() const { return static_cast<Eigen::Index>(vectors_.size()); }
    const CVector& operator[](Eigen::Index i) const { return vectors_[static_cast<std::size_t>(i)]; }
    const std::vector<CVector>& vectors() const { return vectors_; }
    CMatrix projector(Eigen::Index i) const;
    CMatrix outer(Eigen::Index i, Eigen::Index j) const;  // |e_i⟩⟨e_j|

private:
    std::vector<CVector> vectors_;
};

// Column sums vanish for a trace-preserving (Schroedinger) generator; row sums vanish for a
// unital (Heisenberg) one.
struct ClassicalGenerator {
    Eigen::Index d = 0;
    RMatrix matrix;
    OrthonormalBasis basis;
    Picture picture = Picture::schroedinger;
};

ClassicalGenerator classical_generator(const Superoperator& s, const OrthonormalBasis& basis);

struct StochasticCheck {
    bool sums_ok = false;
    bool offdiag_ok = true;       // only evaluated when requested
    double max_sum_residual = 0.0;
    double min_offdiag = 0.0;
    bool passed() const { return sums_ok && offdiag_ok; }
};

StochasticCheck check_stochastic_generator(const ClassicalGenerator& k, bool require_offdiag_nonneg,
                                           double tol = 1e-9);

enum class TraceClass { ccp_or_2positive, schwarz };

struct TraceInequality {
    double lhs = 0.0;  // Tr 𝔏
    double rhs = 0.0;  // factor · Tr K
    double factor = 0.0;
    bool satisfied = false;
    double gap = 0.0;  // rhs − lhs
};

// Tr 𝔏 ≤ d·Tr K (conditionally 2-positive) or Tr 𝔏 ≤ (d+1)/2·Tr K (dissipative).
TraceInequality trace_inequality(const Superoperator& s, const OrthonormalBasis& basis, TraceClass cls,
                                 double tol = 1e-9);

// Σ_{i≠j} ⟨φ⁻_ij|(id₂⊗𝔏)(|φ⁺_ij⟩⟨φ⁺_ij|)|φ⁻_ij⟩ with φ±_ij = |1⟩|e_i⟩ ± |2⟩|e_j⟩.
double two_positive_witness_sum(const Superoperator& s, const OrthonormalBasis& basis);

struct PairwiseMargins {
    RMatrix margins;  // (i, j), zero on the diagonal
    bool all_satisfied = false;
    double bookkeeping_residual = 0.0;  // |Σ_{i≠j} K_jj − (d−1) Tr K|
};

// margin_ij = K_jj − ⟨e_j|𝔏†(|e_j⟩⟨e_i|)|e_i⟩ − ⟨e_i|𝔏†(|e_i⟩⟨e_j|)|e_j⟩.
PairwiseMargins schwarz_pairwise_inequalities(const Superoperator& s_heis, const OrthonormalBasis& basis,
                                              double tol = 1e-9);

// Hermitian eigenvector from a possibly non-Hermitian one: Y + Y† if nonzero, else i(Y − Y†).
CMatrix hermitian_eigenvector(const CMatrix& y);

struct Embedding {
    ClassicalGenerator k;
    RVector x;            // eigenvalues of x_op in the chosen eigenbasis
    double residual = 0.0;  // ‖Kx − λx‖
    bool holds = false;
};

// Builds K in the eigenbasis of x_op (ascending eigenvalues, phases fixed by the first nonzero
// component made real-positive) and checks Kx = λx.
Embedding eigen_embedding(const Superoperator& s, double lambda, const CMatrix& x_op, double tol = 1e-9);

}  // namespace rateaudit
