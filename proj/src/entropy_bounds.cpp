// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/entropy_bounds.hpp"

#include <cmath>

#include "cutstack/errors.hpp"

namespace cutstack {

double binary_entropy(double x) {
    require(x >= 0.0 && x <= 1.0, ErrorKind::domain, "binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double ball_volume_log2(long m, double p) {
    require(m >= 1, ErrorKind::contract, "ball_volume_log2: m must be >= 1");
    require(p >= 0.0, ErrorKind::domain, "ball_volume_log2: negative radius");
    require(p <= 0.5, ErrorKind::domain, "ball_volume_log2: bound invalid for p > 1/2");
    return static_cast<double>(m) * binary_entropy(p);
}

namespace {

void check_common(const BoundParams& p) {
    require(p.m >= 1, ErrorKind::contract, "bound: m must be >= 1");
    require(p.d > 0 && p.d <= 1, ErrorKind::contract, "bound: d must be in (0,1]");
    require(p.epsilon >= 0, ErrorKind::contract, "bound: epsilon must be >= 0");
    require(p.theta >= 0 && p.theta <= 1, ErrorKind::contract, "bound: theta must be in [0,1]");
    require(p.eta >= 0, ErrorKind::contract, "bound: eta must be >= 0");
}

double bound_log2(const BoundParams& p, const Rational& radius, const Rational& mass_scale) {
    if (mass_scale <= 0) return kVacuousBound;
    const Rational arg = 2 * radius / p.d + Rational(1, p.m);
    require(arg <= Rational(1, 2), ErrorKind::bound_inapplicable,
            "bound: entropy argument 2(eps+eta)/d + 1/m exceeds 1/2");
    const double h = binary_entropy(rat_to_double(arg));
    return std::log2(rat_to_double(mass_scale)) + static_cast<double>(p.m) * (1.0 - h);
}

}  // namespace

double lemma1_bound_log2(const BoundParams& p) {
    check_common(p);
    if (p.theta >= 1) return kVacuousBound;
    require(p.epsilon / p.d + Rational(1, p.m) < Rational(1, 2), ErrorKind::bound_inapplicable,
            "lemma1_bound: requires eps/d + 1/m < 1/2");
    return bound_log2(p, p.epsilon, 1 - p.theta);
}

double lemma2_bound_log2(const BoundParams& p) {
    check_common(p);
    if (p.theta + p.eta >= 1) return kVacuousBound;
    require(p.epsilon / p.d + Rational(1, p.m) < Rational(1, 2), ErrorKind::bound_inapplicable,
            "lemma2_bound: requires eps/d + 1/m < 1/2");
    return bound_log2(p, p.epsilon + p.eta, 1 - p.theta - p.eta);
}

}  // namespace cutstack
