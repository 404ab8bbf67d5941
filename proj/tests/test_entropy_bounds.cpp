// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cutstack/entropy_bounds.hpp"

using namespace cutstack;

namespace {
// Test-local entropy evaluation, written independently of the library path.
double h_oracle(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -(x * std::log(x) + (1.0 - x) * std::log(1.0 - x)) / std::log(2.0);
}
}  // namespace

TEST_CASE("binary entropy: endpoints, maximum, known value") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    // H(1/4): direct evaluation, and strictly below 7/8.
    CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK(binary_entropy(0.25) < 7.0 / 8.0);
    CHECK_THROWS_AS(binary_entropy(-0.01), Error);
    CHECK_THROWS_AS(binary_entropy(1.01), Error);
}

TEST_CASE("binary entropy: symmetry and strict concavity on sampled triples") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const double x = u(rng);
        CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-12));
        CHECK(binary_entropy(x) == doctest::Approx(h_oracle(x)).epsilon(1e-12));
        const double y = u(rng);
        if (std::abs(x - y) > 1e-6) {
            const double mid = binary_entropy((x + y) / 2);
            CHECK(mid > (binary_entropy(x) + binary_entropy(y)) / 2 - 1e-12);
        }
        CHECK(binary_entropy(x) <= 1.0 + 1e-15);
    }
}

TEST_CASE("ball volume log2") {
    CHECK(ball_volume_log2(8, 0.5) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(ball_volume_log2(10, 0.0) == 0.0);
    CHECK(ball_volume_log2(8, 0.25) == doctest::Approx(8 * h_oracle(0.25)).epsilon(1e-12));
    CHECK_THROWS_AS(ball_volume_log2(8, 0.6), Error);
}

TEST_CASE("lemma1 bound: worked values") {
    // m=4, d=1, eps=1/10, theta=0: 4 (1 - H(0.45))
    BoundParams p{4, Rational(1), Rational(1, 10), Rational(0), Rational(0)};
    CHECK(lemma1_bound_log2(p) == doctest::Approx(4.0 * (1.0 - h_oracle(0.45))).epsilon(1e-12));
    CHECK(std::exp2(lemma1_bound_log2(p)) > 1.0);  // S >= 2 after integer rounding

    // m=8, d=1/2, eps=1/16, theta=0: 8 (1 - H(3/8))
    BoundParams q{8, Rational(1, 2), Rational(1, 16), Rational(0), Rational(0)};
    CHECK(lemma1_bound_log2(q) == doctest::Approx(8.0 * (1.0 - h_oracle(0.375))).epsilon(1e-12));
    CHECK(lemma1_bound_log2(q) == doctest::Approx(0.3645279).epsilon(1e-6));

    // theta = 1: vacuous
    BoundParams v{4, Rational(1), Rational(1, 10), Rational(1), Rational(0)};
    CHECK(is_vacuous_bound(lemma1_bound_log2(v)));
}

TEST_CASE("lemma1 bound: applicability errors") {
    // eps/d + 1/m >= 1/2
    BoundParams p{2, Rational(1), Rational(1, 10), Rational(0), Rational(0)};
    CHECK_THROWS_AS(lemma1_bound_log2(p), Error);
    // hypothesis holds but the volume argument 2eps/d + 1/m exceeds 1/2
    BoundParams q{8, Rational(2, 3), Rational(1, 5), Rational(0), Rational(0)};
    CHECK(q.epsilon / q.d + Rational(1, q.m) < Rational(1, 2));
    CHECK_THROWS_AS(lemma1_bound_log2(q), Error);
    try {
        lemma1_bound_log2(q);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::bound_inapplicable);
    }
}

TEST_CASE("lemma2 bound: degeneration, worked value, vacuous signal") {
    // eta = 0 collapses to lemma1.
    BoundParams p{4, Rational(1), Rational(1, 10), Rational(0), Rational(0)};
    CHECK(lemma2_bound_log2(p) == lemma1_bound_log2(p));

    // m=8, d=1, eps=1/10, eta=1/20, theta=1/10:
    // log2(0.85) + 8 (1 - H(0.425)). (The exact value, recomputed; the
    // formula is the authority.)
    BoundParams q{8, Rational(1), Rational(1, 10), Rational(1, 10), Rational(1, 20)};
    const double expected = std::log2(0.85) + 8.0 * (1.0 - h_oracle(0.425));
    CHECK(lemma2_bound_log2(q) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(lemma2_bound_log2(q) == doctest::Approx(-0.1041312).epsilon(1e-5));

    // theta + eta >= 1: vacuous signal, not an error.
    BoundParams v{8, Rational(1), Rational(1, 10), Rational(1, 10), Rational(9, 10)};
    CHECK(is_vacuous_bound(lemma2_bound_log2(v)));

    // theta = 0, eta = 9/10: theta + eta < 1, but the entropy argument
    // 2(eps+eta)/d + 1/m = 2.125 is far outside the volume bound's domain.
    BoundParams w{8, Rational(1), Rational(1, 10), Rational(0), Rational(9, 10)};
    CHECK_THROWS_AS(lemma2_bound_log2(w), Error);
}

TEST_CASE("bound parameter validation") {
    BoundParams bad{0, Rational(1), Rational(1, 10), Rational(0), Rational(0)};
    CHECK_THROWS_AS(lemma1_bound_log2(bad), Error);
    BoundParams bad_d{4, Rational(0), Rational(1, 10), Rational(0), Rational(0)};
    CHECK_THROWS_AS(lemma1_bound_log2(bad_d), Error);
    BoundParams bad_eps{4, Rational(1), Rational(-1, 10), Rational(0), Rational(0)};
    CHECK_THROWS_AS(lemma1_bound_log2(bad_eps), Error);
}
