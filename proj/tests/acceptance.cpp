// acceptance.cpp: End-to-end acceptance criteria, one PASS/FAIL line per criterion

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rateaudit/bounds.hpp"
#include "rateaudit/classical.hpp"
#include "rateaudit/commands.hpp"
#include "rateaudit/generator.hpp"
#include "rateaudit/kms.hpp"
#include "rateaudit/parallel.hpp"
#include "rateaudit/positivity.hpp"
#include "rateaudit/random.hpp"
#include "rateaudit/timedep.hpp"

using namespace rateaudit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Superoperator pauli_generator(double g1, double g2, double g3) { return build_superoperator(pauli_spec(g1, g2, g3)); }

Outcome criterion_1() {
    Outcome o;
    const auto r = relaxation_rates(pauli_generator(1, 1, -1));
    const std::vector<double> want{2, 0, 0};
    double err = 0.0;
    for (std::size_t k = 0; k < 3; ++k) err = std::max(err, std::abs(r.rates[k] - want[k]));
    o.require(err < 1e-10, "rates off by " + fmt(err));
    const auto pos = audit_rates(r, PositivityClass::positive, 2);
    o.require(std::abs(pos.margin) <= 1e-9 && pos.saturated, "positive audit not saturated");
    o.require(!audit_rates(r, PositivityClass::two_positive, 2).satisfied, "2-positive audit not violated");
    o.require(check_ccp(pauli_generator(1, 1, -1)).status == VerdictStatus::certified_fail, "check_ccp not certified_fail");
    return o;
}

Outcome criterion_2() {
    Outcome o;
    const auto r = relaxation_rates(pauli_generator(2, 2, -1));
    const std::vector<double> want{4, 1, 1};
    for (std::size_t k = 0; k < 3; ++k) o.require(std::abs(r.rates[k] - want[k]) < 1e-10, "rates wrong");
    const auto s = audit_rates(r, PositivityClass::schwarz, 2);
    o.require(s.c_d == Rational(2, 3) && std::abs(s.bound - 4.0) < 1e-9, "schwarz bound not 4");
    o.require(std::abs(s.margin) <= 1e-9 && s.saturated, "schwarz audit not saturated");
    const auto two = audit_rates(r, PositivityClass::two_positive, 2);
    o.require(std::abs(two.bound - 3.0) < 1e-9 && !two.satisfied, "2-positive audit not violated at bound 3");
    const auto v = check_dissipativity(adjoint_superoperator(pauli_generator(2, 2, -1)), SamplerConfig{128, 200, 7});
    o.require(v.status == VerdictStatus::no_violation_found, "dissipativity sampler reported a violation");
    return o;
}

Outcome criterion_3() {
    Outcome o;
    std::size_t total = 0, passed = 0;
    for (long long d : {2, 3, 4, 5}) {
        std::vector<char> ok(1000);
        parallel_for(ok.size(), [&](std::size_t i) {
            Rng rng(split_seed(3000 + static_cast<std::uint64_t>(d), i));
            const auto a = audit_rates(relaxation_rates(build_superoperator(random_spec(d, rng))),
                                       PositivityClass::two_positive, d);
            ok[i] = a.margin >= -1e-9 * a.rate_sum;
        });
        for (char c : ok) passed += c;
        total += ok.size();
    }
    o.require(passed == total, std::to_string(total - passed) + " of " + std::to_string(total) + " audits failed");

    // Chain Γ_k ≤ −Tr K ≤ (1/d)(−Tr 𝔏) along the symmetrized pipeline.
    std::size_t chain_fail = 0;
    for (Eigen::Index d : {2, 3}) {
        for (int n = 0; n < 50; ++n) {
            Rng rng(split_seed(3100 + static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n)));
            const auto s = regularize_faithful(build_superoperator(random_spec(d, rng)), 0.05);
            const auto st = stationary_states(s);
            if (!st.faithful) {
                ++chain_fail;
                continue;
            }
            const auto sym = symmetrized_generator(adjoint_superoperator(s), WeightedInnerProduct(*st.faithful, 0.5));
            const double gamma_max = relaxation_rates(s).gamma_max;
            const double tr = s.trace().real();
            // Eigenvector of the most negative eigenvalue of 𝔏̃.
            const auto pairs = eig_general(sym.matrix());
            const auto& low = pairs.back();
            const CMatrix x = hermitian_eigenvector(devectorize(low.vector, d, d));
            const auto e = eigen_embedding(sym, low.value.real(), x, 1e-7);
            const double tr_k = e.k.matrix.trace();
            if (!(gamma_max <= -tr_k + 1e-8 && -tr_k <= -tr / static_cast<double>(d) + 1e-8)) ++chain_fail;
        }
    }
    o.require(chain_fail == 0, std::to_string(chain_fail) + " chain checks failed");
    return o;
}

Outcome criterion_4() {
    Outcome o;
    double worst13 = 0.0, worst33 = 0.0;
    for (int n = 0; n < 200; ++n) {
        Rng rng(split_seed(4000, static_cast<std::uint64_t>(n)));
        const Eigen::Index d = 2 + n % 4;
        const auto s = build_superoperator(random_spec(d, rng, -0.5, 1.0));
        const auto r = relaxation_rates(s);
        worst13 = std::max(worst13, std::abs(r.rate_sum + s.trace().real()) / std::max(1.0, s.norm()));
        // Trace via the Choi matrix, on generators and on random maps.
        const Superoperator map(d, rng.gaussian_matrix(d * d, d * d));
        for (const auto* m : {&s, &map}) {
            const CVector psi = max_entangled(d);
            const cplx lhs = m->trace();
            const cplx rhs = static_cast<double>(d * d) * psi.dot(choi(*m).matrix * psi);
            worst33 = std::max(worst33, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    o.require(worst13 < 1e-9, "rate-sum identity residual " + fmt(worst13));
    o.require(worst33 < 1e-9, "Choi trace identity residual " + fmt(worst33));
    return o;
}

Outcome criterion_5() {
    Outcome o;
    double unit = 0.0, imag = 0.0, trace = 0.0, bend = -1e300;
    int missing = 0;
    for (int n = 0; n < 100; ++n) {
        Rng rng(split_seed(5000, static_cast<std::uint64_t>(n)));
        const Eigen::Index d = 2 + n % 3;
        const auto s = build_superoperator(random_spec(d, rng));
        const auto st = stationary_states(s);
        if (!st.faithful) {
            ++missing;
            continue;
        }
        const WeightedInnerProduct w(*st.faithful, 0.5);
        const auto heis = adjoint_superoperator(s);
        const auto sym = symmetrized_generator(heis, w);
        unit = std::max(unit, kms_adjoint(heis, w).apply(identity(d)).norm());
        for (const auto& z : eigenvalues(sym.matrix())) imag = std::max(imag, std::abs(z.imag()));
        trace = std::max(trace, std::abs(sym.trace() - s.trace()));
        bend = std::max(bend, relaxation_rates(s).gamma_max - relaxation_rates(sym).gamma_max);
    }
    o.require(missing == 0, std::to_string(missing) + " specs without faithful state");
    o.require(unit < 1e-8, "KMS adjoint unit residual " + fmt(unit));
    o.require(imag < 1e-7, "symmetrized spectrum imaginary part " + fmt(imag));
    o.require(trace < 1e-9, "trace mismatch " + fmt(trace));
    o.require(bend <= 1e-7, "Bendixson excess " + fmt(bend));
    return o;
}

Outcome criterion_6() {
    Outcome o;
    const auto e = eigen_embedding(pauli_generator(1, 1, -1), -2.0, pauli::z(), 1e-12);
    RMatrix want(2, 2);
    want << -1, 1, 1, -1;
    o.require((e.k.matrix - want).norm() < 1e-12, "K differs from [[-1,1],[1,-1]]");
    o.require(e.residual < 1e-12, "Kx - lambda x residual " + fmt(e.residual));
    int bad = 0;
    for (int n = 0; n < 50; ++n) {
        Rng rng(split_seed(6000, static_cast<std::uint64_t>(n)));
        const Eigen::Index d = 2 + n % 2;
        const auto s = regularize_faithful(build_superoperator(random_spec(d, rng)), 0.05);
        const auto st = stationary_states(s);
        if (!st.faithful) {
            ++bad;
            continue;
        }
        const auto sym = symmetrized_generator(adjoint_superoperator(s), WeightedInnerProduct(*st.faithful, 0.5));
        for (const auto& p : eig_general(sym.matrix())) {
            if (std::abs(p.value.imag()) > 1e-7) continue;
            const CMatrix x = hermitian_eigenvector(devectorize(p.vector, d, d));
            const auto emb = eigen_embedding(sym, p.value.real(), x, 1e-7);
            double best = 1e300;
            for (const auto& z : eigenvalues(emb.k.matrix.cast<cplx>())) best = std::min(best, std::abs(z - p.value));
            if (best > 1e-7) ++bad;
        }
    }
    o.require(bad == 0, std::to_string(bad) + " eigenvalues missing from spec(K)");
    return o;
}

Outcome criterion_7() {
    Outcome o;
    double s_err = 0.0, book = 0.0;
    for (int n = 0; n < 200; ++n) {
        Rng rng(split_seed(7000, static_cast<std::uint64_t>(n)));
        const Eigen::Index d = 2 + n % 3;
        // Arbitrary Hermiticity-preserving generator: signed rates, Hermitian jumps keep it unital
        // for the pairwise bookkeeping check.
        GeneratorSpec spec{d, rng.gaussian_hermitian(d), {}};
        for (Eigen::Index k = 0; k < d * d - 1; ++k) {
            spec.jumps.push_back({n % 2 ? rng.gaussian_hermitian(d) : rng.gaussian_matrix(d, d), rng.uniform(-1, 1)});
        }
        const auto s = build_superoperator(spec);
        const auto heis = adjoint_superoperator(s);
        const bool unital = heis.unitality_defect() < 1e-8;
        for (int b = 0; b < 20; ++b) {
            const auto basis = OrthonormalBasis::from_unitary(rng.haar_unitary(d));
            const double tr_k = classical_generator(s, basis).matrix.trace();
            const double want = 2.0 * (static_cast<double>(d) * tr_k - s.trace().real());
            s_err = std::max(s_err, std::abs(two_positive_witness_sum(s, basis) - want));
            const auto k = classical_generator(heis, basis).matrix;
            double sum = 0.0;
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j)
                    if (i != j) sum += k(j, j);
            book = std::max(book, std::abs(sum - static_cast<double>(d - 1) * k.trace()));
            if (unital) book = std::max(book, schwarz_pairwise_inequalities(heis, basis).bookkeeping_residual);
        }
    }
    o.require(s_err < 1e-9, "witness-sum identity residual " + fmt(s_err));
    o.require(book < 1e-9, "bookkeeping residual " + fmt(book));
    const double neg = two_positive_witness_sum(pauli_generator(1, 1, -1), OrthonormalBasis::computational(2));
    o.require(std::abs(neg + 4.0) < 1e-9, "S for (1,1,-1) is " + fmt(neg));
    return o;
}

Outcome criterion_8() {
    Outcome o;
    o.require(steady_state_bound(PositivityClass::cp, 3) == Rational(5), "CP bound at d=3");
    o.require(steady_state_bound(PositivityClass::two_positive, 3) == Rational(6), "2P bound at d=3");
    const Rational s3 = steady_state_bound(PositivityClass::schwarz, 3);
    o.require(s3 == Rational(7) && s3.numerator() / s3.denominator() == 7, "Schwarz bound at d=3");
    const auto deph = audit_steady_states(build_superoperator(qubit_dephasing_spec()), PositivityClass::cp);
    o.require(deph.m0 == 2 && deph.bound_floor == 2 && deph.saturated, "dephasing does not saturate");
    for (long long d = 2; d <= 10; ++d) {
        const bool mono = steady_state_bound(PositivityClass::cp, d) <= steady_state_bound(PositivityClass::two_positive, d) &&
                          steady_state_bound(PositivityClass::two_positive, d) <= steady_state_bound(PositivityClass::schwarz, d) &&
                          steady_state_bound(PositivityClass::schwarz, d) <= steady_state_bound(PositivityClass::positive, d);
        o.require(mono, "hierarchy not monotone at d=" + std::to_string(d));
    }
    return o;
}

Outcome criterion_9() {
    Outcome o;
    const auto spec = builtin_tanh_example(0.25);
    double rate_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = 3.0 * i / 19.0;
        const auto r = time_local_rates(spec, t);
        const double gt = 1.0 - 0.5 * std::tanh(t);
        rate_err = std::max({rate_err, std::abs(r.rates[0] - 2.0), std::abs(r.rates[1] - gt), std::abs(r.rates[2] - gt)});
    }
    o.require(rate_err < 1e-9, "time-local rates off by " + fmt(rate_err));

    const auto grid = uniform_grid(0.0, 3.0, 30);
    const auto cp = divisibility_audit(spec, grid, PositivityClass::cp, SamplerConfig{64, 200, 0}, 100);
    std::size_t cp_missing = 0;
    for (const auto& iv : cp.intervals) {
        if (iv.t0 > 0.0 && !iv.verdict.violated()) ++cp_missing;
    }
    o.require(cp_missing == 0, std::to_string(cp_missing) + " intervals with t>0 not flagged non-CP");
    const auto sch = divisibility_audit(spec, grid, PositivityClass::schwarz, SamplerConfig{64, 200, 0}, 100);
    bool all_applicable = true;
    for (const auto& iv : sch.intervals) all_applicable = all_applicable && iv.applicable;
    o.require(sch.divisible() && all_applicable, "Schwarz-divisibility audit failed");
    const double lam = psd_min_eig(choi(propagator(spec, 0.0, 3.0, 3000)).matrix).min_eigenvalue;
    o.require(lam >= -1e-6, "Choi min eigenvalue of the t=3 map is " + fmt(lam));

    const auto g6 = build_grid(builtin_tanh_example(0.6), uniform_grid(0.0, 5.0, 50), 100);
    double worst = 0.0;
    for (const auto& c : g6.cumulative) worst = std::min(worst, psd_min_eig(choi(c).matrix).min_eigenvalue);
    o.require(worst < -1e-4, "mu=0.6 Choi minimum only " + fmt(worst));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("first interval [0,0.1] is CP (margin ") +
                fmt(cp.intervals[0].verdict.margin) + "), mu=0.6 Choi min " + fmt(worst);
    return o;
}

Outcome criterion_10() {
    Outcome o;
    double lo = 1e300, hi = -1e300;
    for (int n = 0; n < 20; ++n) {
        Rng rng(split_seed(10000, static_cast<std::uint64_t>(n)));
        const auto g = random_spec(2 + n % 2, rng);
        const auto spec = constant_spec(g, 10.0);
        const CMatrix exact = expm(build_superoperator(g).matrix());
        const double e1 = (propagator(spec, 0.0, 1.0, 16).matrix() - exact).norm();
        const double e2 = (propagator(spec, 0.0, 1.0, 32).matrix() - exact).norm();
        const double ratio = e1 / e2;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    const bool ok = lo >= 3.5 && hi <= 4.5;
    o.require(ok, "ratio range [" + fmt(lo) + ", " + fmt(hi) +
                      "]: the exponential-midpoint product is exact for a constant generator, both errors "
                      "are roundoff");
    return o;
}

// Supplementary order measurement on a genuinely time-dependent generator (not a criterion).
std::string supplementary_order() {
    const auto spec = builtin_tanh_example(0.25);
    const CMatrix ref = propagator(spec, 0.0, 1.0, 8192).matrix();
    const double e1 = (propagator(spec, 0.0, 1.0, 16).matrix() - ref).norm();
    const double e2 = (propagator(spec, 0.0, 1.0, 32).matrix() - ref).norm();
    return fmt(e1 / e2);
}

std::string run_capture(std::vector<std::string> args) {
    args.insert(args.begin(), "rateaudit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return out.str() + "\n--\n" + err.str();
}

Outcome criterion_11() {
    Outcome o;
    const std::string fx = RATEAUDIT_FIXTURE_DIR;
    const std::vector<std::vector<std::string>> cmds = {
        {"sample", "--d", "2", "--count", "1", "--seed", "123"},
        {"sample", "--d", "3", "--count", "100", "--seed", "7", "--class-check", "2p"},
        {"check", fx + "/pauli_111-1.json", "--k", "2", "--samples", "32", "--seed", "11"},
        {"check", fx + "/pauli_22-1.json", "--dissipative", "--samples", "32", "--seed", "11"},
        {"divisibility", fx + "/tanh_025.json", "--class", "schwarz", "--samples", "16", "--seed", "5"},
        {"divisibility", fx + "/tanh_025.json", "--class", "2p", "--samples", "16", "--seed", "5"},
        {"kms", fx + "/qutrit_cp.json"},
    };
    for (const auto& c : cmds) {
        const auto a = run_capture(c);
        const auto b = run_capture(c);
        o.require(a == b && a.size() > 10, "non-identical rerun of " + c[0]);
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"Pauli counterexample rates (2,0,0), trivial bound saturated, 2-positive violated", criterion_1},
        {"Schwarz saturation rates (4,1,1), bound 4 saturated, dissipativity holds", criterion_2},
        {"rate bound 1/d on 4000 random CCP generators and the symmetrized chain", criterion_3},
        {"rate-sum and Choi trace identities", criterion_4},
        {"KMS adjoint, real symmetrized spectrum, trace and Bendixson", criterion_5},
        {"eigen-embedding of Pauli and symmetrized generators", criterion_6},
        {"witness-sum and bookkeeping identities", criterion_7},
        {"steady-state bounds 5, 6, 7 and hierarchy", criterion_8},
        {"tanh example rates, divisibility, complete positivity", criterion_9},
        {"integrator order ratio on constant generators", criterion_10},
        {"byte-identical reruns of sampled commands", criterion_11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %2zu %s  %s (%.2fs)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                    o.detail.empty() ? "" : ": ", o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("info: time-dependent (tanh) step-halving error ratio %s\n", supplementary_order().c_str());
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
