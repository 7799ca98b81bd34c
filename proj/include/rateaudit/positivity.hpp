// positivity.hpp: Degree-of-positivity tests for generators and maps

#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "rateaudit/generator.hpp"
#include "rateaudit/matcore.hpp"

namespace rateaudit {

// certified_* only come from exact spectral tests; sampled tests report
// no_violation_found / violation_found.
enum class VerdictStatus { certified_pass, certified_fail, no_violation_found, violation_found };

const char* to_string(VerdictStatus s);

struct VectorPair {
    CVector phi;
    CVector psi;
};

using Witness = std::variant<std::monostate, CVector, VectorPair, CMatrix>;

struct PositivityVerdict {
    VerdictStatus status = VerdictStatus::no_violation_found;
    Witness witness;
    double margin = 0.0;  // signed distance to the boundary; negative means violated
    std::size_t samples_used = 0;
    std::uint64_t seed = 0;

    bool violated() const {
        return status == VerdictStatus::certified_fail || status == VerdictStatus::violation_found;
    }
    bool certified() const {
        return status == VerdictStatus::certified_pass || status == VerdictStatus::certified_fail;
    }
};

struct SamplerConfig {
    std::size_t n_restarts = 64;
    std::size_t refine_steps = 200;
    std::uint64_t seed = 0;

    void validate() const;
};

// Exact conditional complete positivity: the unnormalized Choi matrix d·C restricted to the
// orthogonal complement of ψ⁺ must be PSD. Margin is its minimum eigenvalue there.
PositivityVerdict check_ccp(const Superoperator& s, const ToleranceConfig& tol = {});

// Sampled minimum of ⟨ψ|(id_k⊗𝔏)(|φ⟩⟨φ|)|ψ⟩ over unit φ ⊥ ψ in ℂ^k⊗ℂ^d.
PositivityVerdict check_conditional_k_positivity(const Superoperator& s, std::size_t k,
                                                 const SamplerConfig& cfg, const ToleranceConfig& tol = {});

// Sampled minimum of λ_min(𝔏†(X†X) − 𝔏†(X†)X − X†𝔏†(X)) over unit-Frobenius X.
// Requires a unital Heisenberg-picture generator.
PositivityVerdict check_dissipativity(const Superoperator& s_heis, const SamplerConfig& cfg,
                                      const ToleranceConfig& tol = {});

enum class PauliClass { cp, schwarz_not_cp, positive_not_schwarz, not_positive };

const char* to_string(PauliClass c);

// Closed-form class of the qubit generator ½Σγ_k(σ_kρσ_k − ρ).
PauliClass qubit_pauli_classify(double g1, double g2, double g3);

struct MapClass {
    enum class Kind { cp, k_positive, schwarz };
    Kind kind = Kind::cp;
    std::size_t k = 1;

    static MapClass cp() { return {Kind::cp, 0}; }
    static MapClass k_positive(std::size_t k) { return {Kind::k_positive, k}; }
    static MapClass schwarz() { return {Kind::schwarz, 0}; }
};

// CP is exact on the Choi matrix; k-positivity and the Schwarz inequality are sampled.
PositivityVerdict check_map_class(const Superoperator& map, const MapClass& cls, const SamplerConfig& cfg,
                                  const ToleranceConfig& tol = {});

// Var_ω(Φ†(A)) ≤ Var_ω(A) on random A normalized to Var_ω(A) = 1. Margin is
// min over samples of 1 − Var_ω(Φ†(A)).
PositivityVerdict variance_contractivity_check(const Superoperator& map_heis, const CMatrix& omega,
                                               std::size_t n_samples, std::uint64_t seed,
                                               const ToleranceConfig& tol = {});

double quantum_variance(const CMatrix& omega, const CMatrix& a);

// (id_k⊗Φ)(X) for a kd×kd operator X with the ancilla as the first tensor factor.
CMatrix apply_extended(const Superoperator& s, std::size_t k, const CMatrix& x);

// Direct formula evaluations used to replay witnesses.
double conditional_k_value(const Superoperator& s, std::size_t k, const CVector& phi, const CVector& psi);
double dissipativity_min_eig(const Superoperator& s_heis, const CMatrix& x);
double schwarz_min_eig(const Superoperator& map, const CMatrix& x);

}  // namespace rateaudit
