// bounds.hpp: Universal rate constraints and steady-state count bounds

#pragma once

#include <string>

#include <boost/rational.hpp>

#include "rateaudit/generator.hpp"
#include "rateaudit/matcore.hpp"

namespace rateaudit {

using Rational = boost::rational<long long>;

enum class PositivityClass { positive, schwarz, two_positive, cp };

const char* to_string(PositivityClass c);
// Accepts cp | 2p | two_positive | schwarz | positive; throws InputError otherwise.
PositivityClass parse_positivity_class(const std::string& s);

// 1 (positive), 2/(d+1) (Schwarz), 1/d (2-positive and CP).
Rational rate_constant(PositivityClass c, long long d);

struct AuditReport {
    long long d = 0;
    PositivityClass cls = PositivityClass::cp;
    Rational c_d{1};
    double gamma_max = 0.0;
    double rate_sum = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool satisfied = false;
    bool saturated = false;
};

AuditReport audit_rates(const RateReport& report, PositivityClass c, long long d);

// CP d²−2d+2, 2-positive d²−d, Schwarz d²−(d+1)/2, positive d²−1.
Rational steady_state_bound(PositivityClass c, long long d);

struct SteadyStateAudit {
    std::size_t m0 = 0;
    Rational bound{0};
    long long bound_floor = 0;
    bool within_bound = false;
    bool saturated = false;
};

// Throws InputError("trivial generator") when 𝔏 = 0.
SteadyStateAudit audit_steady_states(const Superoperator& s, PositivityClass c, const ToleranceConfig& tol = {});

}  // namespace rateaudit
