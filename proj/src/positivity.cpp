// positivity.cpp: Degree-of-positivity tests for generators and maps

#include "rateaudit/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rateaudit/parallel.hpp"
#include "rateaudit/random.hpp"

namespace rateaudit {

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::certified_pass: return "certified_pass";
        case VerdictStatus::certified_fail: return "certified_fail";
        case VerdictStatus::no_violation_found: return "no_violation_found";
        case VerdictStatus::violation_found: return "violation_found";
    }
    return "unknown";
}

const char* to_string(PauliClass c) {
    switch (c) {
        case PauliClass::cp: return "CP";
        case PauliClass::schwarz_not_cp: return "Schwarz_not_CP";
        case PauliClass::positive_not_schwarz: return "Positive_not_Schwarz";
        case PauliClass::not_positive: return "Not_positive";
    }
    return "unknown";
}

void SamplerConfig::validate() const {
    if (n_restarts == 0 || refine_steps == 0) {
        throw InputError("sampler config: restart and refinement counts must be positive");
    }
}

CMatrix apply_extended(const Superoperator& s, std::size_t k, const CMatrix& x) {
    const Eigen::Index d = s.dim();
    const auto kk = static_cast<Eigen::Index>(k);
    if (x.rows() != kk * d || x.cols() != kk * d) throw InputError("apply_extended: operand must be kd x kd");
    CMatrix out(kk * d, kk * d);
    for (Eigen::Index a = 0; a < kk; ++a) {
        for (Eigen::Index b = 0; b < kk; ++b) {
            out.block(a * d, b * d, d, d) = s.apply(x.block(a * d, b * d, d, d));
        }
    }
    return out;
}

namespace {

double violation_scale(const Superoperator& s) { return std::max(1.0, s.norm()); }

struct MinEig {
    double value;
    CVector vector;
};

MinEig min_eig(const CMatrix& herm) {
    const auto eig = eigh(hermitian_part(herm));
    return {eig.values(0), eig.vectors.col(0)};
}

// argmin of x†Ax over unit x orthogonal to the unit vector u.
MinEig min_eig_orthogonal(const CMatrix& a, const CVector& u) {
    const CMatrix q = orthogonal_complement(u);
    const auto sub = min_eig(q.adjoint() * hermitian_part(a) * q);
    CVector x = q * sub.vector;
    x /= x.norm();
    return {sub.value, std::move(x)};
}

struct RestartResult {
    double value = std::numeric_limits<double>::infinity();
    Witness witness;
};

// Runs restarts (possibly in parallel) and keeps the lowest value; ties go to the lowest index.
RestartResult best_of_restarts(const SamplerConfig& cfg, const std::function<RestartResult(Rng&)>& restart) {
    std::vector<RestartResult> results(cfg.n_restarts);
    parallel_for(cfg.n_restarts, [&](std::size_t r) {
        Rng rng(split_seed(cfg.seed, r));
        results[r] = restart(rng);
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].value < results[best].value) best = r;
    }
    return results[best];
}

PositivityVerdict sampled_verdict(RestartResult best, double threshold, const SamplerConfig& cfg) {
    PositivityVerdict v;
    v.margin = best.value;
    v.samples_used = cfg.n_restarts;
    v.seed = cfg.seed;
    if (best.value < -threshold) {
        v.status = VerdictStatus::violation_found;
    } else {
        v.status = VerdictStatus::no_violation_found;
    }
    v.witness = std::move(best.witness);
    return v;
}

// Alternating minimization of λ_min(D(X)) over unit-Frobenius traceless X, where v†D(X)v = x†G(v)x
// with x = vec(X). Both forms are blind to X ↦ X + c·I for unital generators and maps, and the identity
// direction is a zero-valued fixed point, so it is projected out. Each half-step solves a Hermitian
// eigenproblem exactly, so λ_min never increases.
RestartResult minimize_quadratic_form(Eigen::Index d, Rng& rng, std::size_t steps,
                                      const std::function<CMatrix(const CMatrix&)>& form,
                                      const std::function<CMatrix(const CVector&)>& gram) {
    const CMatrix q = orthogonal_complement(vectorize(identity(d)));
    CMatrix x = devectorize(q * rng.unit_vector(d * d - 1), d, d);
    auto cur = min_eig(form(x));
    for (std::size_t it = 0; it < steps; ++it) {
        const auto xs = min_eig(q.adjoint() * gram(cur.vector) * q);
        const CMatrix next = devectorize(q * xs.vector, d, d);
        const auto nxt = min_eig(form(next));
        const double gain = cur.value - nxt.value;
        if (nxt.value <= cur.value) {
            x = next;
            cur = nxt;
        }
        if (gain < 1e-15 * std::max(1.0, std::abs(cur.value))) break;
    }
    return {cur.value, Witness{x}};
}

}  // namespace

double conditional_k_value(const Superoperator& s, std::size_t k, const CVector& phi, const CVector& psi) {
    const cplx q = psi.dot(apply_extended(s, k, phi * phi.adjoint()) * psi);
    return q.real();
}

PositivityVerdict check_ccp(const Superoperator& s, const ToleranceConfig& tol) {
    const Eigen::Index d = s.dim();
    const CMatrix c = choi(s).matrix * static_cast<double>(d);
    const CMatrix q = orthogonal_complement(max_entangled(d));
    const CMatrix projected = q.adjoint() * c * q;
    const auto psd = psd_min_eig(projected, tol);
    PositivityVerdict v;
    v.margin = psd.min_eigenvalue;
    v.status = psd.is_psd ? VerdictStatus::certified_pass : VerdictStatus::certified_fail;
    v.witness = CVector(q * psd.witness);
    return v;
}

PositivityVerdict check_conditional_k_positivity(const Superoperator& s, std::size_t k, const SamplerConfig& cfg,
                                                 const ToleranceConfig& tol) {
    cfg.validate();
    if (k < 1) throw InputError("conditional k-positivity: k must be at least 1");
    const Eigen::Index n = static_cast<Eigen::Index>(k) * s.dim();
    const Superoperator adj = adjoint_superoperator(s);
    const double scale = violation_scale(s);

    auto value = [&](const CVector& phi, const CVector& psi) {
        const cplx q = psi.dot(apply_extended(s, k, phi * phi.adjoint()) * psi);
        if (std::abs(q.imag()) > 1e-10 * scale) {
            throw InvariantError("conditional k-positivity: generator is not Hermiticity-preserving");
        }
        return q.real();
    };

    const auto best = best_of_restarts(cfg, [&](Rng& rng) {
        CVector phi = rng.unit_vector(n);
        CVector psi = rng.unit_vector(n);
        psi -= phi * phi.dot(psi);
        psi /= psi.norm();
        double cur = value(phi, psi);
        for (std::size_t it = 0; it < cfg.refine_steps; ++it) {
            // ψ-step: exact minimizer of ⟨ψ|A(φ)|ψ⟩ on φ⊥.
            psi = min_eig_orthogonal(apply_extended(s, k, phi * phi.adjoint()), phi).vector;
            // φ-step: ⟨ψ|A(φ)|ψ⟩ = ⟨φ|B(ψ)|φ⟩ with B = (id_k⊗𝔏†)(|ψ⟩⟨ψ|).
            phi = min_eig_orthogonal(apply_extended(adj, k, psi * psi.adjoint()), psi).vector;
            // Re-orthonormalize against drift.
            psi -= phi * phi.dot(psi);
            psi /= psi.norm();
            const double next = value(phi, psi);
            const double gain = cur - next;
            cur = std::min(cur, next);
            if (gain < 1e-15 * std::max(1.0, std::abs(cur))) break;
        }
        return RestartResult{value(phi, psi), Witness{VectorPair{phi, psi}}};
    });
    return sampled_verdict(best, tol.psd_tol * scale, cfg);
}

namespace {

// Images of the matrix units E_a = |i⟩⟨j|, a = i + d·j.
std::vector<CMatrix> unit_images(const Superoperator& s) {
    const Eigen::Index d = s.dim();
    std::vector<CMatrix> out(static_cast<std::size_t>(d * d));
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            out[static_cast<std::size_t>(i + d * j)] = devectorize(s.matrix().col(i + d * j), d, d);
        }
    }
    return out;
}

CMatrix dissipation_form(const Superoperator& l, const CMatrix& x) {
    return l.apply(x.adjoint() * x) - l.apply(x.adjoint()) * x - x.adjoint() * l.apply(x);
}

CMatrix schwarz_form(const Superoperator& phi, const CMatrix& x) {
    const CMatrix px = phi.apply(x);
    return phi.apply(x.adjoint() * x) - px.adjoint() * px;
}

void require_unital(const Superoperator& s, const char* who, bool is_map) {
    const double defect = is_map ? s.map_unitality_defect() : s.unitality_defect();
    if (defect > 1e-8 * std::max(1.0, s.norm())) {
        throw InputError(std::string(who) + ": map is not unital");
    }
}

}  // namespace

double dissipativity_min_eig(const Superoperator& s_heis, const CMatrix& x) {
    return min_eig(dissipation_form(s_heis, x)).value;
}

double schwarz_min_eig(const Superoperator& map, const CMatrix& x) {
    return min_eig(schwarz_form(map, x)).value;
}

PositivityVerdict check_dissipativity(const Superoperator& s_heis, const SamplerConfig& cfg,
                                      const ToleranceConfig& tol) {
    cfg.validate();
    if (s_heis.picture() != Picture::heisenberg) {
        throw InputError("check_dissipativity: expects a Heisenberg-picture generator");
    }
    require_unital(s_heis, "check_dissipativity", false);
    const Eigen::Index d = s_heis.dim();
    const double scale = violation_scale(s_heis);
    const auto img = unit_images(s_heis);
    auto at = [&](Eigen::Index i, Eigen::Index j) -> const CMatrix& {
        return img[static_cast<std::size_t>(i + d * j)];
    };

    auto form = [&](const CMatrix& x) {
        const CMatrix dx = dissipation_form(s_heis, x);
        if (hermiticity_defect(dx) > 1e-10 * scale * std::max(1.0, x.squaredNorm())) {
            throw InvariantError("check_dissipativity: dissipation form is not Hermitian");
        }
        return dx;
    };
    // G_ab = v†[𝔏(E_a†E_b) − 𝔏(E_a†)E_b − E_a†𝔏(E_b)]v for E_a = |i⟩⟨j|, E_b = |k⟩⟨l|.
    auto gram = [&](const CVector& v) {
        const Eigen::Index n = d * d;
        CMatrix g(n, n);
        for (Eigen::Index j = 0; j < d; ++j)
            for (Eigen::Index i = 0; i < d; ++i) {
                const Eigen::Index a = i + d * j;
                const CVector row = (v.adjoint() * at(j, i)).transpose();  // v†𝔏(|j⟩⟨i|)
                for (Eigen::Index l = 0; l < d; ++l)
                    for (Eigen::Index k = 0; k < d; ++k) {
                        const Eigen::Index b = k + d * l;
                        cplx t1 = (i == k) ? v.dot(at(j, l) * v) : cplx(0.0);
                        const cplx t2 = row(k) * v(l);
                        const cplx t3 = std::conj(v(j)) * (at(k, l) * v)(i);
                        g(a, b) = t1 - t2 - t3;
                    }
            }
        return g;
    };

    const auto best = best_of_restarts(cfg, [&](Rng& rng) {
        return minimize_quadratic_form(d, rng, cfg.refine_steps, form, gram);
    });
    return sampled_verdict(best, tol.psd_tol * scale, cfg);
}

PauliClass qubit_pauli_classify(double g1, double g2, double g3) {
    const double lo = std::min({g1, g2, g3});
    if (lo >= 0.0) return PauliClass::cp;
    if (g1 + g2 < 0.0 || g2 + g3 < 0.0 || g3 + g1 < 0.0) return PauliClass::not_positive;
    // Exactly one rate is negative here. Minimizing λ_min(D(X)) over traceless X in closed form gives
    // γ₁γ₂ + γ₂γ₃ + γ₃γ₁ ≥ 0; γᵢ + 2γ_min ≥ 0 for both other rates is sufficient but not necessary.
    if (g1 * g2 + g2 * g3 + g3 * g1 >= 0.0) return PauliClass::schwarz_not_cp;
    return PauliClass::positive_not_schwarz;
}

PositivityVerdict check_map_class(const Superoperator& map, const MapClass& cls, const SamplerConfig& cfg,
                                  const ToleranceConfig& tol) {
    const Eigen::Index d = map.dim();
    const double scale = violation_scale(map);
    switch (cls.kind) {
        case MapClass::Kind::cp: {
            const auto psd = psd_min_eig(choi(map).matrix, tol);
            PositivityVerdict v;
            v.margin = psd.min_eigenvalue;
            v.status = psd.is_psd ? VerdictStatus::certified_pass : VerdictStatus::certified_fail;
            v.witness = psd.witness;
            return v;
        }
        case MapClass::Kind::k_positive: {
            cfg.validate();
            if (cls.k < 1) throw InputError("check_map_class: k must be at least 1");
            const std::size_t k = cls.k;
            const Eigen::Index n = static_cast<Eigen::Index>(k) * d;
            const Superoperator adj = adjoint_superoperator(map);
            const auto best = best_of_restarts(cfg, [&](Rng& rng) {
                CVector phi = rng.unit_vector(n);
                auto cur = min_eig(apply_extended(map, k, phi * phi.adjoint()));
                CVector psi = cur.vector;
                for (std::size_t it = 0; it < cfg.refine_steps; ++it) {
                    phi = min_eig(apply_extended(adj, k, psi * psi.adjoint())).vector;
                    const auto nxt = min_eig(apply_extended(map, k, phi * phi.adjoint()));
                    const double gain = cur.value - nxt.value;
                    cur = nxt;
                    psi = cur.vector;
                    if (gain < 1e-15 * std::max(1.0, std::abs(cur.value))) break;
                }
                return RestartResult{conditional_k_value(map, k, phi, psi), Witness{VectorPair{phi, psi}}};
            });
            return sampled_verdict(best, tol.psd_tol * scale, cfg);
        }
        case MapClass::Kind::schwarz: {
            cfg.validate();
            require_unital(map, "check_map_class(Schwarz)", true);
            const auto img = unit_images(map);
            auto form = [&](const CMatrix& x) { return schwarz_form(map, x); };
            // G_ab = δ_ik v†Φ(|j⟩⟨l|)v − (Φ(E_a)v)†(Φ(E_b)v).
            auto gram = [&](const CVector& v) {
                const Eigen::Index n = d * d;
                CMatrix w(d, n);
                for (Eigen::Index a = 0; a < n; ++a) w.col(a) = img[static_cast<std::size_t>(a)] * v;
                CMatrix g = -(w.adjoint() * w);
                for (Eigen::Index j = 0; j < d; ++j)
                    for (Eigen::Index i = 0; i < d; ++i)
                        for (Eigen::Index l = 0; l < d; ++l) {
                            g(i + d * j, i + d * l) += v.dot(img[static_cast<std::size_t>(j + d * l)] * v);
                        }
                return g;
            };
            const auto best = best_of_restarts(cfg, [&](Rng& rng) {
                return minimize_quadratic_form(d, rng, cfg.refine_steps, form, gram);
            });
            return sampled_verdict(best, tol.psd_tol * scale, cfg);
        }
    }
    throw InputError("check_map_class: unknown class");
}

double quantum_variance(const CMatrix& omega, const CMatrix& a) {
    const cplx mean = (omega * a).trace();
    return (omega * a.adjoint() * a).trace().real() - std::norm(mean);
}

PositivityVerdict variance_contractivity_check(const Superoperator& map_heis, const CMatrix& omega,
                                               std::size_t n_samples, std::uint64_t seed,
                                               const ToleranceConfig& tol) {
    const Eigen::Index d = map_heis.dim();
    if (omega.rows() != d || omega.cols() != d) throw InputError("variance check: omega must be d x d");
    if (n_samples == 0) throw InputError("variance check: need at least one sample");
    require_unital(map_heis, "variance check", true);
    const auto psd = psd_min_eig(omega, tol);
    if (psd.min_eigenvalue <= tol.psd_tol) throw InputError("variance check: omega is not full rank");
    const Superoperator schr = adjoint_superoperator(map_heis);
    if ((schr.apply(omega) - omega).norm() > 1e-8) {
        throw InputError("variance check: omega is not invariant under the Schroedinger map");
    }

    std::vector<double> margins(n_samples);
    std::vector<CMatrix> samples(n_samples);
    parallel_for(n_samples, [&](std::size_t i) {
        Rng rng(split_seed(seed, i));
        CMatrix a = rng.gaussian_matrix(d, d);
        a /= std::sqrt(quantum_variance(omega, a));
        margins[i] = 1.0 - quantum_variance(omega, map_heis.apply(a));
        samples[i] = std::move(a);
    });
    std::size_t worst = 0;
    for (std::size_t i = 1; i < n_samples; ++i) {
        if (margins[i] < margins[worst]) worst = i;
    }
    PositivityVerdict v;
    v.margin = margins[worst];
    v.samples_used = n_samples;
    v.seed = seed;
    v.status = v.margin < -tol.psd_tol ? VerdictStatus::violation_found : VerdictStatus::no_violation_found;
    v.witness = samples[worst];
    return v;
}

}  // namespace rateaudit
