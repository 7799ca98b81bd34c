// generator.hpp: GKLS generators with superoperators, Choi matrices, spectra, stationary states

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rateaudit/matcore.hpp"
#include "rateaudit/random.hpp"

namespace rateaudit {

struct Jump {
    CMatrix matrix;
    double rate = 0.0;  // may be negative
};

// Data of 𝔏(ρ) = −i[H,ρ] + Σ γ_ℓ (L_ℓ ρ L_ℓ† − ½{L_ℓ†L_ℓ, ρ}).
struct GeneratorSpec {
    Eigen::Index d = 0;
    CMatrix hamiltonian;
    std::vector<Jump> jumps;

    void validate(const ToleranceConfig& tol = {}) const;
};

enum class Picture { schroedinger, heisenberg };

const char* to_string(Picture p);

// d²×d² matrix acting on column-stacked operators.
class Superoperator {
public:
    Superoperator(Eigen::Index d, CMatrix matrix, Picture picture = Picture::schroedinger);

    static Superoperator from_map(Eigen::Index d, const std::function<CMatrix(const CMatrix&)>& map,
                                  Picture picture = Picture::schroedinger);
    static Superoperator identity(Eigen::Index d, Picture picture = Picture::schroedinger);
    static Superoperator zero(Eigen::Index d, Picture picture = Picture::schroedinger);

    Eigen::Index dim() const { return d_; }
    const CMatrix& matrix() const { return matrix_; }
    Picture picture() const { return picture_; }

    CMatrix apply(const CMatrix& x) const;
    cplx trace() const { return matrix_.trace(); }
    double norm() const { return matrix_.norm(); }

    // ‖vec(I)†·M‖ (how far from trace-preserving) and ‖M·vec(I)‖ (how far from unital).
    double trace_preservation_defect() const;
    double unitality_defect() const;
    // The same conditions for a map: ‖vec(I)†(M − 1)‖ and ‖(M − 1)·vec(I)‖.
    double map_trace_defect() const;
    double map_unitality_defect() const;

private:
    Eigen::Index d_;
    CMatrix matrix_;
    Picture picture_;
};

// b∘a (apply a first, then b). Picture follows b.
Superoperator compose(const Superoperator& b, const Superoperator& a);

// Superoperator of ρ ↦ AρB, i.e. Bᵀ⊗A.
CMatrix sandwich_superop(const CMatrix& a, const CMatrix& b);

Superoperator build_superoperator(const GeneratorSpec& spec, const ToleranceConfig& tol = {});

// Hilbert–Schmidt adjoint; picture tag flipped.
Superoperator adjoint_superoperator(const Superoperator& s);

struct ChoiMatrix {
    Eigen::Index d = 0;
    CMatrix matrix;  // (id⊗Φ)(|ψ⁺⟩⟨ψ⁺|), ψ⁺ normalized; index (i·d + a, j·d + b)
};

ChoiMatrix choi(const Superoperator& s);
// Inverse reshuffle: recovers the superoperator matrix from d·C.
CMatrix superop_from_choi(const ChoiMatrix& c);
// Normalized maximally entangled vector Σ_k |k⟩⊗|k⟩ / √d.
CVector max_entangled(Eigen::Index d);

struct RateReport {
    std::vector<cplx> eigenvalues;   // all d², sorted (Re desc, Im asc)
    std::vector<double> rates;       // d²−1 values Γ = −Re λ, descending
    double gamma_max = 0.0;
    double rate_sum = 0.0;
    std::size_t dropped_zero_index = 0;  // index into eigenvalues of the stationary mode
    bool unstable = false;               // some Γ < −tolerance
    // Eigenvalue condition number of the stationary mode; large values flag a defective zero.
    double zero_condition = 1.0;
    bool defective_zero = false;
};

RateReport relaxation_rates(const Superoperator& s, const ToleranceConfig& tol = {});

struct StationaryStates {
    std::vector<CMatrix> basis;  // kernel elements as d×d matrices
    std::size_t m0 = 0;
    std::optional<CMatrix> faithful;  // unit-trace, min eigenvalue > psd_tol
    double best_min_eigenvalue = 0.0; // best λ_min found over the unit-trace Hermitian slice
};

StationaryStates stationary_states(const Superoperator& s, const ToleranceConfig& tol = {});

// 𝔏₀(ρ) = (I/d)·Trρ − ρ.
Superoperator depolarizing_generator(Eigen::Index d);
Superoperator regularize_faithful(const Superoperator& s, double epsilon);

// σ′ = (1/T)∫₀ᵀ e^{t𝔏}(σ)dt, composite Simpson with 256 panels, renormalized to unit trace.
CMatrix integral_stationary(const Superoperator& s, const CMatrix& sigma, double horizon,
                            const ToleranceConfig& tol = {});

// Qubit Pauli generator ½Σγ_k(σ_kρσ_k − ρ) as a spec: jumps (σ_k, γ_k/2).
GeneratorSpec pauli_spec(double g1, double g2, double g3);
// ρ ↦ γ(σ_zρσ_z − ρ).
GeneratorSpec qubit_dephasing_spec(double gamma = 1.0);
GeneratorSpec hamiltonian_spec(const CMatrix& h);
// H Gaussian Hermitian, d²−1 Gaussian jumps, rates uniform in [rate_lo, rate_hi].
GeneratorSpec random_spec(Eigen::Index d, Rng& rng, double rate_lo = 0.0, double rate_hi = 1.0);

}  // namespace rateaudit
