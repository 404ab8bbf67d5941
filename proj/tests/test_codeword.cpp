// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cutstack/codeword.hpp"

using namespace cutstack;

namespace {

// Independent distance oracle: plain symbol loop, no packing.
long naive_diff(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
    long d = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) ++d;
    return d;
}

std::vector<uint8_t> random_word(std::mt19937_64& rng, size_t n, uint32_t r) {
    std::vector<uint8_t> w(n);
    for (auto& s : w) s = static_cast<uint8_t>(rng() % r);
    return w;
}

}  // namespace

TEST_CASE("normalized hamming: stated examples") {
    auto w = [](const char* s) { return Codeword::from_string(s, 2); };
    CHECK(normalized_hamming(w("0101"), w("0101")) == Rational(0));
    CHECK(normalized_hamming(w("00"), w("11")) == Rational(1));
    CHECK(normalized_hamming(w("0011"), w("0001")) == Rational(1, 4));
}

TEST_CASE("distance kernel matches the naive oracle, binary and byte-packed") {
    std::mt19937_64 rng(12345);
    for (uint32_t r : {2u, 3u, 5u, 17u, 250u}) {
        for (size_t n : {size_t{1}, size_t{7}, size_t{63}, size_t{64}, size_t{65}, size_t{200}}) {
            for (int rep = 0; rep < 20; ++rep) {
                const auto a = random_word(rng, n, r);
                const auto b = random_word(rng, n, r);
                const Codeword ca(a, r), cb(b, r);
                CHECK(Codeword::diff_count(ca, cb) == naive_diff(a, b));
                CHECK(normalized_hamming(ca, cb) ==
                      Rational(naive_diff(a, b), static_cast<long>(n)));
            }
        }
    }
}

TEST_CASE("length or alphabet mismatch is a contract violation") {
    const Codeword a = Codeword::from_string("010", 2);
    const Codeword b = Codeword::from_string("01", 2);
    const Codeword c = Codeword::from_string("010", 3);
    CHECK_THROWS_AS(normalized_hamming(a, b), Error);
    CHECK_THROWS_AS(normalized_hamming(a, c), Error);
}

TEST_CASE("metric properties on random triples") {
    std::mt19937_64 rng(777);
    for (int rep = 0; rep < 200; ++rep) {
        const size_t n = 1 + rng() % 40;
        const uint32_t r = 2 + rng() % 4;
        const Codeword x(random_word(rng, n, r), r);
        const Codeword y(random_word(rng, n, r), r);
        const Codeword z(random_word(rng, n, r), r);
        const Rational dxy = normalized_hamming(x, y);
        const Rational dyx = normalized_hamming(y, x);
        CHECK(dxy == dyx);
        CHECK((dxy == 0) == (x == y));
        CHECK(normalized_hamming(x, z) <= dxy + normalized_hamming(y, z));
    }
}

TEST_CASE("doubling property: u in B_eps(v) implies B_eps(v) within B_2eps(u)") {
    // Exhaustive over all binary words for small n; the covering arguments
    // lean on exactly this containment.
    for (uint32_t n : {3u, 5u, 8u, 12u}) {
        std::mt19937_64 rng(n);
        const Rational eps(1 + static_cast<long>(rng() % n), n);  // in (0, 1]
        const uint64_t vbits = rng() & ((uint64_t{1} << n) - 1);
        std::vector<uint8_t> vsym(n);
        for (uint32_t i = 0; i < n; ++i) vsym[i] = (vbits >> i) & 1;
        const Codeword v(vsym, 2);

        std::vector<Codeword> ball;
        for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
            std::vector<uint8_t> sym(n);
            for (uint32_t i = 0; i < n; ++i) sym[i] = (bits >> i) & 1;
            const Codeword w(sym, 2);
            if (normalized_hamming(v, w) < eps) ball.push_back(w);
        }
        for (const auto& u : ball)
            for (const auto& w : ball) CHECK(normalized_hamming(u, w) < 2 * eps);
    }
}

TEST_CASE("lexicographic order and hashing") {
    const Codeword a = Codeword::from_string("0011", 2);
    const Codeword b = Codeword::from_string("0100", 2);
    CHECK(a < b);
    CHECK(!(b < a));
    CHECK(a.hash() != b.hash());  // distinct packed content
    CHECK(Codeword::from_string("0011", 2).hash() == a.hash());
    CHECK(a.to_string() == "0011");
    CHECK(a.symbols() == std::vector<uint8_t>{0, 0, 1, 1});
}

TEST_CASE("strict ball membership threshold") {
    // u/n < eps with exact rationals.
    CHECK(strict_ball_max_diff(10, Rational(1, 10)) == 0);    // 1/10 not < 1/10
    CHECK(strict_ball_max_diff(10, Rational(11, 100)) == 1);  // 1/10 < 11/100
    CHECK(strict_ball_max_diff(10, Rational(0)) == -1);
    CHECK(strict_ball_max_diff(10, Rational(1, 100)) == 0);  // only exact matches
    CHECK(strict_ball_max_diff(4, Rational(3, 5)) == 2);     // 2/4 < 3/5, 3/4 not
    CHECK(strict_ball_max_diff(4, Rational(2)) == 4);        // everything
}

TEST_CASE("symbols out of alphabet rejected") {
    std::vector<uint8_t> bad{0, 2};
    CHECK_THROWS_AS(Codeword(std::span<const uint8_t>(bad), 2), Error);
    CHECK_THROWS_AS(Codeword::from_string("012", 2), Error);
}
