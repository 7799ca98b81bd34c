// commands.cpp: CLI command dispatch with the 0/1/2/3 exit-code contract

#include "rateaudit/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rateaudit/bounds.hpp"
#include "rateaudit/kms.hpp"
#include "rateaudit/parallel.hpp"
#include "rateaudit/positivity.hpp"
#include "rateaudit/spec_io.hpp"
#include "rateaudit/timedep.hpp"

namespace rateaudit {

namespace {

struct Options {
    std::string spec_path;
    double tol = 1e-9;
    std::string format = "json";
    std::string out_path;
    bool timing = false;
    std::uint64_t seed = 0;
    std::size_t samples = 64;
    std::size_t refine = 200;
    bool require_certified = false;
    std::string cls = "cp";
    // check
    bool ccp = false;
    std::size_t k = 0;
    bool dissipative = false;
    // divisibility
    double t0 = 0.0;
    double t1 = 3.0;
    std::size_t grid = 30;
    std::size_t steps = 100;
    // sample
    long long d = 2;
    std::size_t count = 100;
    // kms
    double s = 0.5;
    double regularize = 0.0;
};

struct Result {
    ordered_json doc;
    int code = exit_pass;
};

ToleranceConfig tolerances(const Options& o) {
    ToleranceConfig t;
    t.psd_tol = o.tol;
    t.validate();
    return t;
}

ordered_json report(const char* command, const std::string& digest, const Options& o) {
    ordered_json doc;
    doc["command"] = command;
    doc["input_digest"] = digest;
    doc["seed"] = o.seed;
    doc["verdicts"] = ordered_json::array();
    doc["rates"] = ordered_json::array();
    doc["margins"] = ordered_json::array();
    return doc;
}

GeneratorSpec static_spec(const SpecFile& f) {
    if (!f.is_static()) throw InputError("this command needs a static spec");
    return std::get<GeneratorSpec>(f.spec);
}

ordered_json rational_json(const Rational& r) {
    std::ostringstream s;
    s << r.numerator();
    if (r.denominator() != 1) s << '/' << r.denominator();
    return s.str();
}

ordered_json verdict_json(const char* check, const PositivityVerdict& v) {
    ordered_json j;
    j["check"] = check;
    j["status"] = to_string(v.status);
    j["margin"] = v.margin;
    j["samples_used"] = v.samples_used;
    j["seed"] = v.seed;
    j["witness"] = to_json(v.witness);
    return j;
}

ordered_json audit_json(const AuditReport& a) {
    ordered_json j;
    j["check"] = "rate_bound";
    j["class"] = to_string(a.cls);
    j["status"] = a.satisfied ? "satisfied" : "violated";
    j["c_d"] = rational_json(a.c_d);
    j["gamma_max"] = a.gamma_max;
    j["rate_sum"] = a.rate_sum;
    j["bound"] = a.bound;
    j["margin"] = a.margin;
    j["saturated"] = a.saturated;
    return j;
}

int verdict_code(const PositivityVerdict& v, const Options& o) {
    if (v.violated()) return exit_violation;
    if (o.require_certified && !v.certified()) return exit_inconclusive;
    return exit_pass;
}

Result cmd_spectrum(const Options& o) {
    const auto f = load_spec_file(o.spec_path);
    const auto tol = tolerances(o);
    const auto s = build_superoperator(static_spec(f), tol);
    const auto r = relaxation_rates(s, tol);
    Result res{report("spectrum", f.digest, o)};
    for (double g : r.rates) res.doc["rates"].push_back(g);
    ordered_json eig = ordered_json::array();
    for (const auto& z : r.eigenvalues) eig.push_back(to_json(z));
    res.doc["eigenvalues"] = eig;
    res.doc["gamma_max"] = r.gamma_max;
    res.doc["rate_sum"] = r.rate_sum;
    res.doc["trace"] = to_json(s.trace());
    res.doc["trace_identity_residual"] = std::abs(r.rate_sum + s.trace().real());
    res.doc["zero_condition"] = r.zero_condition;
    res.doc["defective_zero"] = r.defective_zero;
    res.doc["unstable"] = r.unstable;
    return res;
}

Result cmd_audit(const Options& o) {
    const auto cls = parse_positivity_class(o.cls);
    const auto f = load_spec_file(o.spec_path);
    const auto tol = tolerances(o);
    const auto gen = static_spec(f);
    const auto r = relaxation_rates(build_superoperator(gen, tol), tol);
    const auto a = audit_rates(r, cls, gen.d);
    Result res{report("audit", f.digest, o)};
    for (double g : r.rates) res.doc["rates"].push_back(g);
    res.doc["verdicts"].push_back(audit_json(a));
    res.doc["margins"].push_back(a.margin);
    res.doc["satisfied"] = a.satisfied;
    res.doc["saturated"] = a.saturated;
    res.code = a.satisfied ? exit_pass : exit_violation;
    return res;
}

Result cmd_check(const Options& o) {
    const int modes = int(o.ccp) + int(o.k > 0) + int(o.dissipative);
    if (modes != 1) throw InputError("check: pass exactly one of --ccp, --k N, --dissipative");
    const auto f = load_spec_file(o.spec_path);
    const auto tol = tolerances(o);
    const auto s = build_superoperator(static_spec(f), tol);
    SamplerConfig cfg{o.samples, o.refine, o.seed};
    Result res{report("check", f.digest, o)};
    PositivityVerdict v;
    const char* name = "ccp";
    if (o.ccp) {
        v = check_ccp(s, tol);
    } else if (o.k > 0) {
        name = "conditional_k_positivity";
        v = check_conditional_k_positivity(s, o.k, cfg, tol);
        res.doc["k"] = o.k;
    } else {
        name = "dissipativity";
        v = check_dissipativity(adjoint_superoperator(s), cfg, tol);
    }
    res.doc["verdicts"].push_back(verdict_json(name, v));
    res.doc["margins"].push_back(v.margin);
    res.doc["status"] = to_string(v.status);
    res.code = verdict_code(v, o);
    return res;
}

Result cmd_divisibility(const Options& o) {
    const auto cls = parse_positivity_class(o.cls);
    if (!(o.t1 > o.t0)) throw InputError("divisibility: need --t1 > --t0");
    if (o.grid < 1 || o.steps < 1) throw InputError("divisibility: --grid and --steps must be positive");
    const auto f = load_spec_file(o.spec_path);
    const auto tol = tolerances(o);
    const TimeDependentSpec spec =
        f.is_static() ? constant_spec(std::get<GeneratorSpec>(f.spec), std::max(o.t1, 1.0))
                      : std::get<TimeDependentSpec>(f.spec);
    const auto grid = uniform_grid(o.t0, o.t1, o.grid);
    const auto rep = divisibility_audit(spec, grid, cls, SamplerConfig{o.samples, o.refine, o.seed}, o.steps, tol);
    const auto local = time_local_bound_audit(spec, grid, cls, tol);
    Result res{report("divisibility", f.digest, o)};
    bool inconclusive = false;
    for (const auto& iv : rep.intervals) {
        ordered_json j = verdict_json(to_string(cls), iv.verdict);
        j["t0"] = iv.t0;
        j["t1"] = iv.t1;
        j["applicable"] = iv.applicable;
        if (!iv.applicable) j["status"] = "not_applicable";
        res.doc["verdicts"].push_back(std::move(j));
        res.doc["margins"].push_back(iv.verdict.margin);
        if (!iv.applicable || !iv.verdict.certified()) inconclusive = true;
    }
    ordered_json rates = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ordered_json row;
        row["t"] = grid[i];
        row["gamma_max"] = local[i].gamma_max;
        row["rate_sum"] = local[i].rate_sum;
        row["bound"] = local[i].bound;
        row["satisfied"] = local[i].satisfied;
        rates.push_back(std::move(row));
    }
    res.doc["rates"] = rates;
    res.doc["divisible"] = rep.divisible();
    res.doc["first_violation"] = rep.first_violation ? ordered_json(*rep.first_violation) : ordered_json(nullptr);
    if (!rep.divisible()) {
        res.code = exit_violation;
    } else if (o.require_certified && inconclusive) {
        res.code = exit_inconclusive;
    }
    return res;
}

Result cmd_sample(const Options& o) {
    const auto cls = parse_positivity_class(o.cls);
    if (o.d < 2 || o.d > 16) throw InputError("sample: --d must be in [2, 16]");
    if (o.count < 1) throw InputError("sample: --count must be positive");
    const auto tol = tolerances(o);
    std::ostringstream params;
    params << "sample d=" << o.d << " count=" << o.count << " seed=" << o.seed << " class=" << to_string(cls);
    Result res{report("sample", sha256_hex(params.str()), o)};
    std::vector<AuditReport> audits(o.count);
    parallel_for(o.count, [&](std::size_t i) {
        Rng rng(split_seed(o.seed, i));
        const auto r = relaxation_rates(build_superoperator(random_spec(o.d, rng), tol), tol);
        audits[i] = audit_rates(r, cls, o.d);
    });
    std::size_t passed = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& a : audits) {
        passed += a.satisfied ? 1 : 0;
        const double rel = a.margin / std::max(1.0, a.rate_sum);
        worst = std::min(worst, rel);
        res.doc["margins"].push_back(a.margin);
    }
    ordered_json v;
    v["check"] = "rate_bound";
    v["class"] = to_string(cls);
    v["status"] = passed == o.count ? "satisfied" : "violated";
    v["c_d"] = rational_json(rate_constant(cls, o.d));
    v["passed"] = passed;
    v["count"] = o.count;
    v["worst_relative_margin"] = worst;
    res.doc["verdicts"].push_back(v);
    res.doc["d"] = o.d;
    res.doc["passed"] = passed;
    res.doc["count"] = o.count;
    res.doc["worst_relative_margin"] = worst;
    res.code = passed == o.count ? exit_pass : exit_violation;
    return res;
}

Result cmd_steady(const Options& o) {
    const auto cls = parse_positivity_class(o.cls);
    const auto f = load_spec_file(o.spec_path);
    const auto tol = tolerances(o);
    const auto gen = static_spec(f);
    const auto a = audit_steady_states(build_superoperator(gen, tol), cls, tol);
    Result res{report("steady", f.digest, o)};
    ordered_json v;
    v["check"] = "steady_state_bound";
    v["class"] = to_string(cls);
    v["status"] = a.within_bound ? "satisfied" : "violated";
    v["m0"] = a.m0;
    v["bound_exact"] = rational_json(a.bound);
    v["bound"] = a.bound_floor;
    v["saturated"] = a.saturated;
    res.doc["verdicts"].push_back(v);
    res.doc["margins"].push_back(static_cast<double>(a.bound_floor) - static_cast<double>(a.m0));
    res.doc["m0"] = a.m0;
    res.doc["bound"] = a.bound_floor;
    res.doc["bound_exact"] = rational_json(a.bound);
    res.doc["within_bound"] = a.within_bound;
    res.code = a.within_bound ? exit_pass : exit_violation;
    return res;
}

Result cmd_kms(const Options& o) {
    const auto f = load_spec_file(o.spec_path);
    const auto tol = tolerances(o);
    Superoperator s = build_superoperator(static_spec(f), tol);
    if (o.regularize > 0.0) s = regularize_faithful(s, o.regularize);
    const auto st = stationary_states(s, tol);
    if (!st.faithful) throw InputError("kms: no faithful stationary state (try --regularize EPS)");
    const CMatrix& omega = *st.faithful;
    const WeightedInnerProduct w(omega, o.s, tol);
    const Superoperator heis = adjoint_superoperator(s);
    const Superoperator sharp = kms_adjoint(heis, WeightedInnerProduct(omega, 0.5, tol));
    const Superoperator sym = symmetrized_generator(heis, WeightedInnerProduct(omega, 0.5, tol));

    // 𝔏† in KMS-orthonormal coordinates, X ↦ ω^{1/4}Xω^{1/4}; its Hermitian part is similar to 𝔏̃.
    const CMatrix q = frac_power_psd(omega, 0.25, tol);
    const CMatrix qi = frac_power_psd(omega, -0.25, tol);
    const CMatrix coords = sandwich_superop(q, q) * heis.matrix() * sandwich_superop(qi, qi);
    const auto [lo, hi] = bendixson_interval(coords);

    Result res{report("kms", f.digest, o)};
    const auto rates = relaxation_rates(s, tol);
    for (double g : rates.rates) res.doc["rates"].push_back(g);
    ordered_json sym_eigs = ordered_json::array();
    double max_imag = 0.0;
    for (const auto& z : eigenvalues(sym.matrix())) {
        sym_eigs.push_back(to_json(z));
        max_imag = std::max(max_imag, std::abs(z.imag()));
    }
    const auto sa = check_s_selfadjoint(heis, w, 1e-8);
    res.doc["omega"] = to_json(omega);
    res.doc["kms_adjoint_unit_residual"] = sharp.apply(identity(s.dim())).norm();
    res.doc["symmetrized_eigenvalues"] = sym_eigs;
    res.doc["symmetrized_max_imag"] = max_imag;
    res.doc["trace_generator"] = s.trace().real();
    res.doc["trace_symmetrized"] = sym.trace().real();
    res.doc["bendixson_interval"] = ordered_json::array({lo, hi});
    res.doc["gamma_max"] = rates.gamma_max;
    res.doc["symmetrized_gamma_max"] = -lo;
    ordered_json v;
    v["check"] = "s_selfadjoint";
    v["s"] = o.s;
    v["status"] = sa.is_selfadjoint ? "selfadjoint" : "not_selfadjoint";
    v["residual"] = sa.residual;
    res.doc["verdicts"].push_back(v);
    res.doc["margins"].push_back(-lo - rates.gamma_max);
    return res;
}

std::string render_text(const ordered_json& doc) {
    std::ostringstream s;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_array() && !value.empty() && value.front().is_object()) {
            s << key << ":\n";
            for (const auto& item : value) s << "  - " << item.dump() << '\n';
        } else if (value.is_string()) {
            s << key << ": " << value.get<std::string>() << '\n';
        } else {
            s << key << ": " << value.dump() << '\n';
        }
    }
    return s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"rateaudit: relaxation-rate audits for quantum Markovian generators", "rateaudit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--tol", o.tol, "PSD tolerance (relative)");
    app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", o.out_path, "write the report to this file");
    app.add_option("--seed", o.seed, "master seed for sampled checks");
    app.add_option("--samples", o.samples, "restarts for sampled checks");
    app.add_option("--refine", o.refine, "refinement steps per restart");
    app.add_flag("--timing", o.timing, "record elapsed_ms (breaks byte-identical output)");
    app.add_flag("--require-certified", o.require_certified, "exit 2 when only a sampled pass is available");

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and relaxation rates");
    auto* audit = app.add_subcommand("audit", "rate bound Gamma_max <= c_d * sum Gamma");
    auto* check = app.add_subcommand("check", "degree-of-positivity test of the generator");
    auto* divis = app.add_subcommand("divisibility", "per-interval divisibility audit");
    auto* sample = app.add_subcommand("sample", "rate audits on random CCP generators");
    auto* steady = app.add_subcommand("steady", "steady-state count against the class bound");
    auto* kms = app.add_subcommand("kms", "KMS adjoint, symmetrized generator and Bendixson diagnostics");
    for (auto* sub : {spectrum, audit, check, divis, steady, kms}) {
        sub->add_option("spec", o.spec_path, "spec JSON file")->required();
    }
    for (auto* sub : {audit, divis, sample, steady}) {
        sub->add_option("--class", o.cls, "cp | 2p | schwarz | positive");
    }
    sample->add_option("--class-check", o.cls, "cp | 2p | schwarz | positive");
    check->add_flag("--ccp", o.ccp, "exact conditional complete positivity");
    check->add_option("--k", o.k, "sampled conditional k-positivity");
    check->add_flag("--dissipative", o.dissipative, "sampled dissipativity (Schwarz generator)");
    divis->add_option("--t0", o.t0, "grid start");
    divis->add_option("--t1", o.t1, "grid end");
    divis->add_option("--grid", o.grid, "number of intervals");
    divis->add_option("--steps", o.steps, "integration steps per interval");
    sample->add_option("--d", o.d, "dimension");
    sample->add_option("--count", o.count, "number of random generators");
    kms->add_option("--s", o.s, "s of the s-inner product for the self-adjointness test");
    kms->add_option("--regularize", o.regularize, "mix in eps times the depolarizing generator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    Result res;
    try {
        const auto start = std::chrono::steady_clock::now();
        if (*spectrum) res = cmd_spectrum(o);
        else if (*audit) res = cmd_audit(o);
        else if (*check) res = cmd_check(o);
        else if (*divis) res = cmd_divisibility(o);
        else if (*sample) res = cmd_sample(o);
        else if (*steady) res = cmd_steady(o);
        else res = cmd_kms(o);
        const auto stop = std::chrono::steady_clock::now();
        res.doc["elapsed_ms"] =
            o.timing ? ordered_json(std::chrono::duration<double, std::milli>(stop - start).count())
                     : ordered_json(nullptr);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }

    const std::string text = o.format == "json" ? res.doc.dump(2) + "\n" : render_text(res.doc);
    if (o.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << o.out_path << '\n';
            return exit_input_error;
        }
        file << text;
    }
    return res.code;
}

}  // namespace rateaudit
