// bounds.cpp: Universal rate constraints and steady-state count bounds

#include "rateaudit/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <boost/rational.hpp>

namespace rateaudit {

const char* to_string(PositivityClass c) {
    switch (c) {
        case PositivityClass::positive: return "positive";
        case PositivityClass::schwarz: return "schwarz";
        case PositivityClass::two_positive: return "2p";
        case PositivityClass::cp: return "cp";
    }
    return "unknown";
}

PositivityClass parse_positivity_class(const std::string& s) {
    if (s == "cp") return PositivityClass::cp;
    if (s == "2p" || s == "two_positive") return PositivityClass::two_positive;
    if (s == "schwarz") return PositivityClass::schwarz;
    if (s == "positive") return PositivityClass::positive;
    throw InputError("unknown positivity class: " + s);
}

Rational rate_constant(PositivityClass c, long long d) {
    if (d < 2) throw InputError("rate_constant: d must be at least 2");
    switch (c) {
        case PositivityClass::positive: return Rational(1);
        case PositivityClass::schwarz: return Rational(2, d + 1);
        case PositivityClass::two_positive:
        case PositivityClass::cp: return Rational(1, d);
    }
    throw InputError("rate_constant: unknown class");
}

AuditReport audit_rates(const RateReport& report, PositivityClass c, long long d) {
    AuditReport out;
    out.d = d;
    out.cls = c;
    out.c_d = rate_constant(c, d);
    out.gamma_max = report.gamma_max;
    out.rate_sum = report.rate_sum;
    out.bound = boost::rational_cast<double>(out.c_d) * out.rate_sum;
    out.margin = out.bound - out.gamma_max;
    const double scale = std::max(1.0, std::abs(out.rate_sum));
    out.satisfied = out.margin >= -1e-9 * scale;
    out.saturated = std::abs(out.margin) <= std::max(1e-9 * scale, 1e-12);
    return out;
}

Rational steady_state_bound(PositivityClass c, long long d) {
    if (d < 2) throw InputError("steady_state_bound: d must be at least 2");
    const Rational dd(d);
    switch (c) {
        case PositivityClass::cp: return dd * dd - 2 * dd + 2;
        case PositivityClass::two_positive: return dd * dd - dd;
        case PositivityClass::schwarz: return dd * dd - (dd + 1) / 2;
        case PositivityClass::positive: return dd * dd - 1;
    }
    throw InputError("steady_state_bound: unknown class");
}

SteadyStateAudit audit_steady_states(const Superoperator& s, PositivityClass c, const ToleranceConfig& tol) {
    if (s.norm() == 0.0) throw InputError("trivial generator: the bound assumes a nonzero generator");
    SteadyStateAudit out;
    out.m0 = numerical_kernel(s.matrix(), tol).dim;
    out.bound = steady_state_bound(c, s.dim());
    out.bound_floor = out.bound.numerator() / out.bound.denominator();
    out.within_bound = static_cast<long long>(out.m0) <= out.bound_floor;
    out.saturated = static_cast<long long>(out.m0) == out.bound_floor;
    return out;
}

}  // namespace rateaudit
