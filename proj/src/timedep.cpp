// timedep.cpp: Time-dependent generators, propagators and divisibility audits

#include "rateaudit/timedep.hpp"

#include <algorithm>
#include <cmath>

#include "rateaudit/parallel.hpp"
#include "rateaudit/random.hpp"

namespace rateaudit {

void TimeDependentSpec::validate() const {
    if (d < 2) throw InputError("time-dependent spec: d must be at least 2");
    if (!evaluator) throw InputError("time-dependent spec: missing evaluator");
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
        throw InputError("time-dependent spec: domain must be a finite interval with t_end > t_start");
    }
}

GeneratorSpec TimeDependentSpec::at(double t) const {
    const double slack = 1e-12 * std::max(1.0, std::abs(t_end));
    if (!(t >= t_start - slack && t <= t_end + slack)) throw InputError("time outside the spec domain");
    GeneratorSpec g = evaluator(t);
    if (g.d != d) throw InvariantError("evaluator returned a spec of the wrong dimension");
    g.validate();
    return g;
}

TimeDependentSpec builtin_tanh_example(double mu) {
    if (!std::isfinite(mu)) throw InputError("tanh example: mu must be finite");
    TimeDependentSpec spec;
    spec.d = 2;
    spec.t_start = 0.0;
    spec.t_end = 1e6;
    spec.smoothness = Smoothness::smooth;
    spec.evaluator = [mu](double t) {
        GeneratorSpec g;
        g.d = 2;
        g.hamiltonian = CMatrix::Zero(2, 2);
        g.jumps = {{pauli::plus(), 1.0}, {pauli::minus(), 1.0}, {pauli::z(), -mu * std::tanh(t)}};
        return g;
    };
    return spec;
}

TimeDependentSpec piecewise_spec(std::vector<double> times, std::vector<GeneratorSpec> specs, double t_end) {
    if (times.empty() || times.size() != specs.size()) {
        throw InputError("piecewise spec: need one generator per breakpoint");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw InputError("piecewise spec: times must be strictly increasing");
    }
    for (const auto& g : specs) {
        g.validate();
        if (g.d != specs.front().d) throw InputError("piecewise spec: all generators must share d");
    }
    TimeDependentSpec spec;
    spec.d = specs.front().d;
    spec.t_start = times.front();
    spec.t_end = t_end;
    spec.smoothness = Smoothness::piecewise_constant;
    spec.breakpoints.assign(times.begin() + 1, times.end());
    spec.evaluator = [times, specs](double t) {
        const auto it = std::upper_bound(times.begin(), times.end(), t);
        const auto idx = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
        return specs[idx];
    };
    spec.validate();
    return spec;
}

TimeDependentSpec constant_spec(const GeneratorSpec& g, double t_end) {
    return piecewise_spec({0.0}, {g}, t_end);
}

Superoperator propagator(const TimeDependentSpec& spec, double s, double t, std::size_t steps) {
    spec.validate();
    if (steps < 1) throw InputError("propagator: steps must be at least 1");
    if (!(t >= s)) throw InputError("propagator: need t >= s");
    spec.at(s);
    spec.at(t);
    const Eigen::Index d = spec.d;
    if (t == s) return Superoperator::identity(d);

    std::vector<double> cuts{s};
    for (double b : spec.breakpoints) {
        if (b > s && b < t) cuts.push_back(b);
    }
    cuts.push_back(t);

    CMatrix total = CMatrix::Identity(d * d, d * d);
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double a = cuts[seg];
        const double b = cuts[seg + 1];
        const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(
                                                    static_cast<double>(steps) * (b - a) / (t - s))));
        const double h = (b - a) / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double mid = a + (static_cast<double>(k) + 0.5) * h;
            const auto gen = build_superoperator(spec.at(mid));
            total = expm(h * gen.matrix()) * total;
        }
    }
    return Superoperator(d, std::move(total));
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t intervals) {
    if (intervals < 1 || !(t1 > t0)) throw InputError("grid: need t1 > t0 and at least one interval");
    std::vector<double> g(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
        g[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(intervals);
    }
    return g;
}

namespace {

void require_grid(const TimeDependentSpec& spec, const std::vector<double>& grid) {
    if (grid.size() < 2) throw InputError("grid: need at least two times");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw InputError("grid: times must be strictly increasing");
    }
    spec.at(grid.front());
    spec.at(grid.back());
}

}  // namespace

PropagatorGrid build_grid(const TimeDependentSpec& spec, const std::vector<double>& times,
                          std::size_t steps_per_interval) {
    require_grid(spec, times);
    PropagatorGrid out;
    out.times = times;
    out.propagators.resize(times.size() - 1, Superoperator::identity(spec.d));
    parallel_for(times.size() - 1, [&](std::size_t i) {
        out.propagators[i] = propagator(spec, times[i], times[i + 1], steps_per_interval);
    });
    out.cumulative.push_back(Superoperator::identity(spec.d));
    for (const auto& p : out.propagators) {
        out.cumulative.push_back(compose(p, out.cumulative.back()));
        if (out.cumulative.back().map_trace_defect() > 1e-7) {
            throw InvariantError("propagator grid: cumulative map is not trace-preserving within 1e-7");
        }
    }
    return out;
}

RateReport time_local_rates(const TimeDependentSpec& spec, double t, const ToleranceConfig& tol) {
    return relaxation_rates(build_superoperator(spec.at(t), tol), tol);
}

DivisibilityReport divisibility_audit(const TimeDependentSpec& spec, const std::vector<double>& grid,
                                      PositivityClass cls, const SamplerConfig& cfg,
                                      std::size_t steps_per_interval, const ToleranceConfig& tol) {
    cfg.validate();
    const auto g = build_grid(spec, grid, steps_per_interval);
    DivisibilityReport out;
    out.cls = cls;
    for (std::size_t i = 0; i < g.propagators.size(); ++i) {
        IntervalVerdict iv;
        iv.t0 = grid[i];
        iv.t1 = grid[i + 1];
        SamplerConfig local = cfg;
        local.seed = split_seed(cfg.seed, i);
        const auto& p = g.propagators[i];
        switch (cls) {
            case PositivityClass::cp:
                iv.verdict = check_map_class(p, MapClass::cp(), local, tol);
                break;
            case PositivityClass::two_positive:
                iv.verdict = check_map_class(p, MapClass::k_positive(2), local, tol);
                break;
            case PositivityClass::positive:
                iv.verdict = check_map_class(p, MapClass::k_positive(1), local, tol);
                break;
            case PositivityClass::schwarz: {
                const auto heis = adjoint_superoperator(p);
                if (heis.map_unitality_defect() > 1e-6 * std::max(1.0, heis.norm())) {
                    iv.applicable = false;
                    iv.verdict.seed = local.seed;
                } else {
                    // Remove the roundoff-level unitality defect before the strict Schwarz test.
                    const CVector one = vectorize(identity(spec.d));
                    const CVector defect = heis.matrix() * one - one;
                    const CMatrix fixed = heis.matrix() - defect * one.adjoint() / one.squaredNorm();
                    iv.verdict = check_map_class(Superoperator(spec.d, fixed, Picture::heisenberg),
                                                 MapClass::schwarz(), local, tol);
                }
                break;
            }
        }
        if (iv.applicable && iv.verdict.violated() && !out.first_violation) out.first_violation = i;
        out.intervals.push_back(std::move(iv));
    }
    return out;
}

std::vector<AuditReport> time_local_bound_audit(const TimeDependentSpec& spec, const std::vector<double>& grid,
                                                PositivityClass cls, const ToleranceConfig& tol) {
    require_grid(spec, grid);
    std::vector<AuditReport> out;
    out.reserve(grid.size());
    for (double t : grid) out.push_back(audit_rates(time_local_rates(spec, t, tol), cls, spec.d));
    return out;
}

MonotonicityReport trace_norm_monotonicity_check(const TimeDependentSpec& spec, std::size_t k,
                                                 const std::vector<double>& grid, std::size_t n_probes,
                                                 std::uint64_t seed, std::size_t steps_per_interval) {
    if (k < 1) throw InputError("trace-norm check: k must be at least 1");
    if (n_probes < 1) throw InputError("trace-norm check: need at least one probe");
    const auto g = build_grid(spec, grid, steps_per_interval);
    const Eigen::Index d = spec.d;
    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::Index n = kk * d;
    const std::size_t intervals = g.propagators.size();

    struct Found {
        double rel = -std::numeric_limits<double>::infinity();
        std::size_t interval = 0;
        CMatrix probe;
    };
    std::vector<Found> found(n_probes);
    parallel_for(n_probes, [&](std::size_t p) {
        Rng rng(split_seed(seed, p));
        Found& f = found[p];
        // Even probes: random Hermitian operators followed along the whole grid.
        if (p % 2 == 0) {
            const CMatrix x = rng.gaussian_hermitian(n);
            const double x1 = trace_norm_hermitian(x);
            double prev = x1;
            for (std::size_t i = 0; i < intervals; ++i) {
                const double cur = trace_norm_hermitian(apply_extended(g.cumulative[i + 1], k, x));
                const double rel = (cur - prev) / x1;
                if (rel > f.rel) f = {rel, i, x};
                prev = cur;
            }
            return;
        }
        // Odd probes: for each interval, 𝕏 = (id_k⊗Λ_{t_i,0})⁻¹(|φ⟩⟨φ|), so the trace norm at t_i is 1.
        for (std::size_t i = 0; i < intervals; ++i) {
            CVector phi = (p == 1 && kk >= d) ? CVector(CVector::Zero(n)) : rng.unit_vector(n);
            if (p == 1 && kk >= d) phi.head(d * d) = max_entangled(d);
            const CMatrix rho = phi * phi.adjoint();
            const double after = trace_norm_hermitian(apply_extended(g.propagators[i], k, rho));
            const CMatrix inv = g.cumulative[i].matrix().fullPivLu().inverse();
            const CMatrix x = apply_extended(Superoperator(d, inv), k, rho);
            const double rel = (after - 1.0) / trace_norm_hermitian(x);
            if (rel > f.rel) f = {rel, i, x};
        }
    });

    MonotonicityReport out;
    out.probes = n_probes;
    std::size_t worst = 0;
    for (std::size_t p = 1; p < n_probes; ++p) {
        if (found[p].rel > found[worst].rel) worst = p;
    }
    out.max_increase = found[worst].rel;
    out.verdict.samples_used = n_probes;
    out.verdict.seed = seed;
    out.verdict.margin = -found[worst].rel;
    if (found[worst].rel > 1e-7) {
        out.verdict.status = VerdictStatus::violation_found;
        out.verdict.witness = found[worst].probe;
        out.interval = found[worst].interval;
    }
    return out;
}

}  // namespace rateaudit
