// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cutstack/tower.hpp"

using namespace cutstack;

namespace {

std::string column_word(const Column& c) {
    std::string s;
    for (uint8_t v : c.levels) s += static_cast<char>('0' + v);
    return s;
}

Tower two_unit_columns() {
    return make_initial_tower({{"0", Rational(1, 2)}, {"1", Rational(1, 2)}});
}

}  // namespace

TEST_CASE("cut: measure conservation and exact splits") {
    Tower t = make_initial_tower({{"010", Rational(1, 3)}});
    CHECK(t.total_measure() == 1);
    Tower c3 = cut(t, 0, 3);
    CHECK(c3.columns.size() == 3);
    for (const auto& c : c3.columns) {
        CHECK(c.width == Rational(1, 9));
        CHECK(column_word(c) == "010");
    }
    CHECK(c3.total_measure() == 1);

    CHECK(cut(t, 0, 1).columns.size() == 1);  // identity
    Tower t7 = make_initial_tower({{"0", Rational(1, 7)}});
    Tower c2 = cut(t7, 0, 2);
    CHECK(c2.columns[0].width == Rational(1, 14));
    CHECK(c2.columns[1].width == Rational(1, 14));
    CHECK_THROWS_AS(cut(t, 0, 0), Error);
    CHECK_THROWS_AS(cut(t, 5, 2), Error);
}

TEST_CASE("stack: concatenation order and width contract") {
    Tower t = make_initial_tower({{"01", Rational(1, 8)}, {"01", Rational(1, 8)}});
    Tower s = stack(t, {0, 1});
    CHECK(s.columns.size() == 1);
    CHECK(column_word(s.columns[0]) == "0101");
    CHECK(s.columns[0].width == Rational(1, 8));

    Tower u = make_initial_tower({{"0", Rational(1, 6)}, {"1", Rational(1, 6)}});
    Tower rev = stack(u, {1, 0});
    CHECK(column_word(rev.columns[0]) == "10");

    CHECK(column_word(stack(u, {0}).columns[0]) == "0");  // single-column stack

    Tower bad = make_initial_tower({{"0", Rational(1, 6)}, {"1", Rational(1, 7)}});
    CHECK_THROWS_AS(stack(bad, {0, 1}), Error);
}

TEST_CASE("add_spacers: bookkeeping and labels") {
    Tower t = make_initial_tower({{"00", Rational(1, 4)}});
    Tower s = add_spacers(t, 0, 2);
    CHECK(s.columns[0].height() == 4);
    CHECK(column_word(s.columns[0]) == "0011");
    CHECK(s.total_measure() == t.total_measure() + 2 * Rational(1, 4));
    CHECK(column_word(add_spacers(t, 0, 0).columns[0]) == "00");

    Tower alt = make_initial_tower({{"00", Rational(1, 4)}}, 3, 2);
    CHECK(column_word(add_spacers(alt, 0, 1).columns[0]) == "002");  // configurable spacer
}

TEST_CASE("stage_two_word: heights and the two stated words") {
    // h=2, k=3: two columns of height k(h+1) = 9.
    Tower t = make_initial_tower({{"01", Rational(1, 2)}});
    Tower s = stage_two_word(t, 3);
    REQUIRE(s.columns.size() == 2);
    CHECK(s.columns[0].height() == 9);
    CHECK(s.columns[1].height() == 9);
    CHECK(column_word(s.columns[0]) == "010101111");        // W^3 s^3
    CHECK(column_word(s.columns[1]) == "011011011");        // (W s)^3
    CHECK(s.columns[0].width == s.columns[1].width);
    // Spacer count k per half of width w/(2k): added measure 2k w/(2k) = w.
    CHECK(s.total_measure() == t.total_measure() + Rational(1, 2));

    // h=1, k=1: two columns of height 2.
    Tower u = stage_two_word(make_initial_tower({{"0", Rational(1)}}), 1);
    CHECK(u.columns[0].height() == 2);
    CHECK(u.columns[1].height() == 2);

    // C2's word for h=2 word "ab", k=2: a b s a b s.
    Tower ab = make_initial_tower({{"01", Rational(1, 2)}});
    Tower v = stage_two_word(ab, 2);
    CHECK(column_word(v.columns[1]) == "011011");
}

TEST_CASE("stage_ics: counting law, heights, uniform widths, conservation") {
    Tower t = make_initial_tower({{"000", Rational(1, 6)}, {"111", Rational(1, 6)}});
    Tower s = stage_ics(t, 3);
    CHECK(s.columns.size() == 256);  // 2^(2^3)
    for (const auto& c : s.columns) {
        CHECK(c.height() == 24);  // 2^3 * 3
        CHECK(c.width == s.columns[0].width);
    }
    CHECK(s.total_measure() == 1);

    // One round on two distinct height-1 columns: all 4 ordered words.
    Tower u = stage_ics(two_unit_columns(), 1);
    REQUIRE(u.columns.size() == 4);
    CHECK(column_word(u.columns[0]) == "00");
    CHECK(column_word(u.columns[1]) == "01");
    CHECK(column_word(u.columns[2]) == "10");
    CHECK(column_word(u.columns[3]) == "11");
    CHECK(u.total_measure() == 1);

    Tower bad = make_initial_tower({{"0", Rational(1, 2)}, {"11", Rational(1, 4)}});
    CHECK_THROWS_AS(stage_ics(bad, 1), Error);
    Tower badw = make_initial_tower({{"0", Rational(1, 3)}, {"1", Rational(2, 3)}});
    CHECK_THROWS_AS(stage_ics(badw, 1), Error);
}

TEST_CASE("stage_weak_mixing: 2h+1 law and word shape") {
    Tower t = make_initial_tower({{"01101", Rational(1, 5)}});
    Tower s = stage_weak_mixing(t);
    CHECK(s.columns.size() == 1);
    CHECK(s.columns[0].height() == 11);

    // left word then right word then spacer
    Tower ab = make_initial_tower({{"01", Rational(1, 2)}});
    CHECK(column_word(stage_weak_mixing(ab).columns[0]) == "01011");
    // measure grows by exactly one spacer level per column
    CHECK(stage_weak_mixing(ab).total_measure() == 1 + Rational(1, 4));

    Tower multi = stage_ics(two_unit_columns(), 1);
    CHECK(stage_weak_mixing(multi).columns.size() == 4);  // column count unchanged
}

TEST_CASE("stage_rigidity: r h law and conservation") {
    Tower t = make_initial_tower({{"0110", Rational(1, 4)}});
    Tower s = stage_rigidity(t, 3);
    CHECK(s.columns[0].height() == 12);
    CHECK(column_word(s.columns[0]) == "011001100110");
    CHECK(s.total_measure() == 1);
    CHECK_THROWS_AS(stage_rigidity(t, 1), Error);
}

TEST_CASE("family-F height recursion, executed exactly") {
    // ics(s0) gives h1 = 2^s0; each [wm, rigidity(r_k), ics(s_k)] block gives
    // h_{k+1} = 2^{s_k} r_k (2 h_k + 1).
    const long s0 = 1;
    const std::vector<long> s{1, 1, 1}, r{2, 3, 4};
    Tower t = stage_ics(two_unit_columns(), s0);
    BigInt h = BigInt(1) << s0;
    CHECK(t.uniform_height() == h.convert_to<long>());
    for (size_t k = 0; k < s.size(); ++k) {
        t = stage_weak_mixing(t);
        t = stage_rigidity(t, r[k]);
        t = stage_ics(t, s[k]);
        h = (BigInt(1) << s[k]) * r[k] * (2 * h + 1);
        CHECK(t.uniform_height() == h.convert_to<long>());
    }
}

TEST_CASE("stage_swap: widths, counts, conservation") {
    // Stage n: C1 width n/(n+1), C2 width 1/(n+1); families exit with
    // (n+1)/(n+2) and 1/(n+2).
    for (long n : {1L, 2L, 3L, 5L}) {
        Tower t = make_initial_tower(
            {{"01", Rational(n, 2 * (n + 1))}, {"10", Rational(1, 2 * (n + 1))}});
        const SwapResult sw = stage_swap(t, n);
        CHECK(sw.tower.columns.size() == static_cast<size_t>(2 * (n + 2) + 2));
        CHECK(sw.family1.size() == static_cast<size_t>(2 * (n + 2)));
        CHECK(sw.family2.size() == 2);
        Rational f1 = 0, f2 = 0;
        for (size_t i : sw.family1) f1 += sw.tower.columns[i].width;
        for (size_t i : sw.family2) f2 += sw.tower.columns[i].width;
        const Rational total = t.total_measure();
        CHECK(f1 * 2 / total == Rational(n + 1, n + 2));  // heights are 2
        CHECK(f2 * 2 / total == Rational(1, n + 2));
        CHECK(sw.tower.total_measure() == total);
    }
    // n_stage = 0: C1 cut into 4.
    Tower t0 = make_initial_tower({{"0", Rational(1, 2)}, {"1", Rational(1, 2)}});
    CHECK(stage_swap(t0, 0).family1.size() == 4);

    Tower bad = make_initial_tower({{"0", Rational(1, 2)}, {"11", Rational(1, 4)}});
    CHECK_THROWS_AS(stage_swap(bad, 1), Error);
}

TEST_CASE("name_distribution: stated examples") {
    // Single column word 010, width 1/3, n=2: {01: 1/3, 10: 1/3}, neglected 1/3.
    Tower t = make_initial_tower({{"010", Rational(1, 3)}});
    WeightedNames names = name_distribution(t, 2);
    names.check_valid();
    REQUIRE(names.entries.size() == 2);
    CHECK(names.entries[0].first.to_string() == "01");
    CHECK(names.entries[0].second == Rational(1, 3));
    CHECK(names.entries[1].first.to_string() == "10");
    CHECK(names.entries[1].second == Rational(1, 3));
    CHECK(names.neglected_mass == Rational(1, 3));

    // n = h: one name per column, neglected (h-1)/h.
    WeightedNames full = name_distribution(t, 3);
    CHECK(full.entries.size() == 1);
    CHECK(full.neglected_mass == Rational(2, 3));

    // After one ics round on columns 0 and 1: four names of 1/8, neglected 1/2.
    Tower ics = stage_ics(two_unit_columns(), 1);
    WeightedNames four = name_distribution(ics, 2);
    four.check_valid();
    REQUIRE(four.entries.size() == 4);
    for (const auto& [w, m] : four.entries) CHECK(m == Rational(1, 8));
    CHECK(four.neglected_mass == Rational(1, 2));

    CHECK_THROWS_AS(name_distribution(t, 4), Error);
}

TEST_CASE("name_distribution masses always sum to one with neglected") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<std::pair<std::string, Rational>> cols;
        const int ncols = 1 + static_cast<int>(rng() % 4);
        for (int c = 0; c < ncols; ++c) {
            std::string word;
            const int h = 2 + static_cast<int>(rng() % 9);
            for (int i = 0; i < h; ++i) word += static_cast<char>('0' + (rng() & 1));
            cols.emplace_back(word, Rational(1 + static_cast<long>(rng() % 5),
                                             3 + static_cast<long>(rng() % 40)));
        }
        Tower t = make_initial_tower(cols);
        const long n = 1 + static_cast<long>(rng() % t.min_height());
        WeightedNames names = name_distribution(t, n);
        names.check_valid();  // includes the sum-to-one identity
    }
}

TEST_CASE("measure_overlap: full column, out-of-range shift, rigidity copies") {
    Tower t = make_initial_tower({{"01100110", Rational(1, 8)}});
    LevelSet all;
    for (uint32_t i = 0; i < 8; ++i) all.entries.emplace_back(0, i);

    const OverlapResult o = measure_overlap(t, all, 3);
    CHECK(o.overlap == Rational(5, 8));  // (H-h)/H of mu(A), mu(A) = 1
    CHECK(o.undefined_mass == Rational(3, 8));

    const OverlapResult far = measure_overlap(t, all, 8);
    CHECK(far.overlap == 0);
    CHECK(far.undefined_mass == 1);

    // Rigidity alignment: single old level, r subcopies.
    Tower pre = make_initial_tower({{"0110", Rational(1, 4)}});
    for (long r : {2L, 3L, 5L}) {
        Tower post = stage_rigidity(pre, r);
        LevelSet a;
        a.entries.emplace_back(0, 1);
        LevelSet img = rigidity_image(a, 4, r);
        CHECK(img.entries.size() == static_cast<size_t>(r));
        const Rational mu = level_set_measure(pre, a);
        const OverlapResult ov = measure_overlap(post, img, 4);
        CHECK(ov.overlap == Rational(r - 1, r) * mu);
    }
}

TEST_CASE("measure conservation across every stage, exact") {
    Tower t = make_initial_tower({{"0110", Rational(1, 8)}, {"1001", Rational(1, 8)}});
    const Rational m0 = t.total_measure();
    CHECK(cut(t, 0, 7).total_measure() == m0);
    CHECK(stage_ics(t, 2).total_measure() == m0);
    CHECK(stage_rigidity(t, 5).total_measure() == m0);
    // weak mixing adds half a column width per column as a spacer level
    Rational spacer_gain = 0;
    for (const auto& c : t.columns) spacer_gain += c.width / 2;
    CHECK(stage_weak_mixing(t).total_measure() == m0 + spacer_gain);
}
