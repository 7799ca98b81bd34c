// timedep.hpp: Time-dependent generators, propagators and divisibility audits

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rateaudit/bounds.hpp"
#include "rateaudit/generator.hpp"
#include "rateaudit/positivity.hpp"

namespace rateaudit {

enum class Smoothness { piecewise_constant, smooth };

struct TimeDependentSpec {
    Eigen::Index d = 0;
    std::function<GeneratorSpec(double)> evaluator;
    double t_start = 0.0;
    double t_end = 0.0;
    Smoothness smoothness = Smoothness::smooth;
    // Points where the evaluator may jump; propagators never straddle them.
    std::vector<double> breakpoints;

    void validate() const;
    GeneratorSpec at(double t) const;  // checks the domain and the returned spec
};

// γ_± = 1 on σ±, γ_z = −μ·tanh t on σ_z, H = 0.
TimeDependentSpec builtin_tanh_example(double mu);
// Left-constant interpolation: specs[i] holds on [times[i], times[i+1]); the last one up to t_end.
TimeDependentSpec piecewise_spec(std::vector<double> times, std::vector<GeneratorSpec> specs, double t_end);
TimeDependentSpec constant_spec(const GeneratorSpec& spec, double t_end);

// Product of exp(h·𝔏(midpoint)) over a uniform grid of `steps` steps (split at breakpoints).
Superoperator propagator(const TimeDependentSpec& spec, double s, double t, std::size_t steps);

struct PropagatorGrid {
    std::vector<double> times;
    std::vector<Superoperator> propagators;  // Λ_{t_{i+1}, t_i}
    std::vector<Superoperator> cumulative;   // Λ_{t_i, t_0}
};

PropagatorGrid build_grid(const TimeDependentSpec& spec, const std::vector<double>& times,
                          std::size_t steps_per_interval);

std::vector<double> uniform_grid(double t0, double t1, std::size_t intervals);

RateReport time_local_rates(const TimeDependentSpec& spec, double t, const ToleranceConfig& tol = {});

struct IntervalVerdict {
    double t0 = 0.0;
    double t1 = 0.0;
    bool applicable = true;  // false when a Schwarz test meets a non-unital adjoint
    PositivityVerdict verdict;
};

struct DivisibilityReport {
    PositivityClass cls = PositivityClass::cp;
    std::vector<IntervalVerdict> intervals;
    std::optional<std::size_t> first_violation;
    bool divisible() const { return !first_violation.has_value(); }
};

DivisibilityReport divisibility_audit(const TimeDependentSpec& spec, const std::vector<double>& grid,
                                      PositivityClass cls, const SamplerConfig& cfg,
                                      std::size_t steps_per_interval, const ToleranceConfig& tol = {});

std::vector<AuditReport> time_local_bound_audit(const TimeDependentSpec& spec, const std::vector<double>& grid,
                                                PositivityClass cls, const ToleranceConfig& tol = {});

struct MonotonicityReport {
    PositivityVerdict verdict;           // witness: the probe operator 𝕏
    std::optional<std::size_t> interval; // interval where the increase happened
    double max_increase = 0.0;           // largest relative increase seen
    std::size_t probes = 0;
};

// Probes are random Hermitian kd×kd operators plus, per interval, operators pulled back from a
// pure state at the interval start (ψ⁺ when k ≥ d). Reports increases above 1e-7·‖𝕏‖₁.
MonotonicityReport trace_norm_monotonicity_check(const TimeDependentSpec& spec, std::size_t k,
                                                 const std::vector<double>& grid, std::size_t n_probes,
                                                 std::uint64_t seed, std::size_t steps_per_interval = 100);

}  // namespace rateaudit
