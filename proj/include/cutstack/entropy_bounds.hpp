// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <limits>

#include "cutstack/rational.hpp"

namespace cutstack {

// H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
// Domain error outside [0, 1]. Evaluation tolerance <= 1e-12.
double binary_entropy(double x);

// m * H(p): log2 of the 2^(mH(p)) volume bound for a radius-p Hamming ball
// on {0,1}^m. Valid only for p <= 1/2; domain error beyond.
double ball_volume_log2(long m, double p);

// Parameters feeding the covering lower bounds. Distances and radii are
// exact rationals; only the entropy evaluation is floating point.
struct BoundParams {
    long m = 1;            // number of generator blocks
    Rational d = 1;        // distance between the two generator words, in (0, 1]
    Rational epsilon = 0;  // covering radius, >= 0
    Rational theta = 0;    // uncovered mass allowance, in [0, 1]
    Rational eta = 0;      // perturbation radius, >= 0
};

// Sentinel for a vacuous bound (zero required coverage): log2 value -inf.
inline constexpr double kVacuousBound = -std::numeric_limits<double>::infinity();
inline bool is_vacuous_bound(double b) { return b == kVacuousBound; }

// log2 of (1-theta) * 2^(m(1 - H(2eps/d + 1/m))).
//
// Raises bound_inapplicable when eps/d + 1/m >= 1/2, and also when the
// entropy argument 2eps/d + 1/m exceeds 1/2 (the ball volume bound inside
// the formula is invalid there; see verify's grid report). theta = 1 gives
// the vacuous sentinel.
double lemma1_bound_log2(const BoundParams& p);

// log2 of (1-theta-eta) * 2^(m(1 - H(2(eps+eta)/d + 1/m))).
// theta + eta >= 1 gives the vacuous sentinel; entropy argument > 1/2 is
// bound_inapplicable. eta = 0 degenerates to lemma1_bound_log2.
double lemma2_bound_log2(const BoundParams& p);

}  // namespace cutstack
