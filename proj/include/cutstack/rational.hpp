// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "cutstack/errors.hpp"

namespace cutstack {

// Exact arithmetic for interval widths and name masses. Repeated cutting
// produces denominators far beyond 64 bits (prop61 halvings alone reach
// 2^(2^s+s) scale), so everything measure-valued is a bigint rational.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

// log2 of a positive bigint; exact for powers of two, otherwise ~1 ulp.
inline double bigint_log2(const BigInt& v) {
    require(v > 0, ErrorKind::domain, "bigint_log2: nonpositive argument");
    const long bits = static_cast<long>(boost::multiprecision::msb(v));  // floor(log2 v)
    if (bits <= 960) return std::log2(v.convert_to<double>());
    // Scale down so the double conversion cannot overflow.
    const long shift = bits - 960;
    const BigInt scaled = v >> shift;
    return static_cast<double>(shift) + std::log2(scaled.convert_to<double>());
}

// log2 of a positive rational, safe for huge numerators/denominators.
inline double rat_log2(const Rational& r) {
    require(r > 0, ErrorKind::domain, "rat_log2: nonpositive argument");
    return bigint_log2(rat_num(r)) - bigint_log2(rat_den(r));
}

// Parses "num/den" or a plain integer. Used by snapshot and config files.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        require(den != 0, ErrorKind::parse, "rational with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        raise(ErrorKind::parse, "malformed rational: '" + text + "'");
    }
}

// Canonical "num/den" form ("num" alone when den == 1).
inline std::string rational_to_string(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) s += "/" + rat_den(r).str();
    return s;
}

// 2^e as an exact rational (e may be negative).
inline Rational exact_pow2(long e) {
    BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
    return e < 0 ? Rational(1, p) : Rational(p);
}

// Smallest integer >= num/den, for den > 0.
inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
    require(den > 0, ErrorKind::domain, "ceil_div: nonpositive denominator");
    BigInt q = num / den;
    if (q * den < num) ++q;
    return q;
}

}  // namespace cutstack
