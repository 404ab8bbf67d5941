// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cutstack/scenarios.hpp"
#include "cutstack/verify.hpp"

using namespace cutstack;

namespace {
LemmaInstance make_inst(const char* w1, const char* w2, long m, Rational eps, Rational theta,
                        Rational eta = 0, uint64_t seed = 1) {
    return LemmaInstance{Codeword::from_string(w1, 2), Codeword::from_string(w2, 2),
                         m,       eps,
                         theta,   eta,
                         seed};
}
}  // namespace

TEST_CASE("verify_lemma1: worked instances") {
    // w1=01, w2=10, m=4, eps=0.1, theta=0: d = 1, bound 4(1-H(0.45)) ~ 1.02.
    const LemmaReport r = verify_lemma1(make_inst("01", "10", 4, Rational(1, 10), 0));
    CHECK(r.verdict == LemmaVerdict::pass);
    CHECK(r.method == "oracle-exhaustive");
    CHECK(r.observed_S >= 2);
    CHECK(std::exp2(r.bound_log2) == doctest::Approx(1.02024).epsilon(2e-4));

    // theta = 1: vacuous.
    const LemmaReport v = verify_lemma1(make_inst("01", "10", 4, Rational(1, 10), 1));
    CHECK(v.verdict == LemmaVerdict::vacuous);

    // Vanishing eps: balls hold exact matches only, S = 2^m, bound < 2^m.
    // (A literal eps = 0 ball is empty under the strict d < eps convention.)
    const LemmaReport z = verify_lemma1(make_inst("01", "10", 4, Rational(1, 1000), 0));
    CHECK(z.verdict == LemmaVerdict::pass);
    CHECK(z.observed_S == 16);
    CHECK(z.bound_log2 < 4.0);
}

TEST_CASE("verify_lemma1: inapplicable when the volume argument passes 1/2") {
    // d = 2/3, eps = 1/5, m = 8: precondition 0.425 < 0.5 holds but
    // 2eps/d + 1/m = 0.725 > 1/2.
    const LemmaReport r = verify_lemma1(make_inst("000", "011", 8, Rational(1, 5), 0));
    CHECK(r.verdict == LemmaVerdict::inapplicable);
}

TEST_CASE("verify_lemma1: conservative fallback beyond the oracle cap") {
    VerifyCaps caps;
    caps.oracle_words = 1 << 10;  // force the fallback for m*len = 16
    const LemmaReport r = verify_lemma1(make_inst("01", "10", 8, Rational(1, 20), 0), caps);
    CHECK(r.method == "restricted-2eps");
    CHECK(r.conservative);
    CHECK(r.verdict == LemmaVerdict::pass);
}

TEST_CASE("verify_lemma2: identity perturbation reduces to lemma1") {
    const LemmaReport l1 = verify_lemma1(make_inst("01", "10", 4, Rational(1, 10), 0));
    const LemmaReport l2 = verify_lemma2(make_inst("01", "10", 4, Rational(1, 10), 0, 0));
    CHECK(l2.verdict == LemmaVerdict::pass);
    CHECK(l2.observed_S == l1.observed_S);
    CHECK(l2.bound_log2 == doctest::Approx(l1.bound_log2));
}

TEST_CASE("verify_lemma2: seeded perturbation, replayable, bound respected") {
    const auto inst = make_inst("0110", "1001", 5, Rational(1, 20), Rational(1, 10),
                                Rational(1, 10), 20250809);
    const LemmaReport a = verify_lemma2(inst);
    const LemmaReport b = verify_lemma2(inst);
    CHECK(a.verdict == LemmaVerdict::pass);
    CHECK(a.observed_S == b.observed_S);  // same seed, same outcome
    CHECK(a.instance == b.instance);

    // Larger eta with theta summing to 1: vacuous.
    const auto vac = make_inst("01", "10", 4, Rational(1, 20), Rational(1, 2), Rational(1, 2));
    CHECK(verify_lemma2(vac).verdict == LemmaVerdict::vacuous);
}

TEST_CASE("lemma grid: small slice has zero violations") {
    VerifyCaps caps;
    caps.max_len = 2;
    caps.max_m = 5;
    const GridSummary g = lemma1_grid({Rational(1, 20), Rational(1, 10)}, {Rational(0)}, caps);
    CHECK(g.failures == 0);
    CHECK(g.passes > 0);
    CHECK(g.reports.size() ==
          static_cast<size_t>((1 + 6) * 5 * 2 * 1));  // pairs(len1)+pairs(len2), m, eps, theta
    // Deterministic: replaying yields identical verdicts.
    const GridSummary g2 = lemma1_grid({Rational(1, 20), Rational(1, 10)}, {Rational(0)}, caps);
    REQUIRE(g2.reports.size() == g.reports.size());
    for (size_t i = 0; i < g.reports.size(); ++i) {
        CHECK(g.reports[i].verdict == g2.reports[i].verdict);
        CHECK(g.reports[i].observed_S == g2.reports[i].observed_S);
    }
}

TEST_CASE("lemma grid: threaded run merges deterministically") {
    VerifyCaps caps;
    caps.max_len = 2;
    caps.max_m = 4;
    const GridSummary a = lemma1_grid({Rational(1, 10)}, {Rational(0)}, caps, 1);
    const GridSummary b = lemma1_grid({Rational(1, 10)}, {Rational(0)}, caps, 3);
    REQUIRE(a.reports.size() == b.reports.size());
    for (size_t i = 0; i < a.reports.size(); ++i) {
        CHECK(a.reports[i].instance == b.reports[i].instance);
        CHECK(a.reports[i].observed_S == b.reports[i].observed_S);
    }
}

TEST_CASE("verify_ham4_ham5: equal partitions and a one-level difference") {
    // Tall columns keep the undefined top mass well under eta for the
    // window check (undefined offsets count against it).
    Tower base = make_initial_tower({{"01100110", Rational(1, 16)}, {"10011001", Rational(1, 16)}});
    Tower t = cut_stack_each(base, 8);  // two columns of height 64
    const LevelPartition p = partition_from_labels(t);

    // Q = P: every distance is 0.
    const Ham45Report same = verify_ham4_ham5(t, p, p, Rational(1, 4), 16);
    CHECK(same.D == 0);
    CHECK(same.global_hypothesis_met);
    for (const auto& row : same.rows) {
        CHECK(row.base_holds);
        CHECK(row.window_holds);
        CHECK(row.base_good == row.base_total);
    }

    // Q differs on one level: D = 2 * (level width)/total.
    LevelPartition q = p;
    q.cls[0][5] = static_cast<uint8_t>(1 - q.cls[0][5]);
    const Ham45Report one = verify_ham4_ham5(t, p, q, Rational(1, 2), 16);
    CHECK(one.D == 2 * t.columns[0].width / t.total_measure());
    CHECK(one.global_hypothesis_met);  // D = 1/64 < 1/4
    for (const auto& row : one.rows) {
        CHECK(row.base_holds);
        CHECK(row.window_holds);
    }

    // eta too small for the hypothesis: reported, not failed.
    const Ham45Report miss = verify_ham4_ham5(t, p, q, Rational(1, 10));
    CHECK_FALSE(miss.global_hypothesis_met);
}

TEST_CASE("verify_ham4_ham5 on the prop32 level-approximation setup") {
    const auto sc = scenario_prop32(8, 2, 4);
    const ExecResult exec = run_schedule(sc.initial, sc.schedule);
    const Tower& t = exec.tower;
    const LevelPartition p = partition_from_labels(t);
    // Q: flip a handful of levels, keeping D below eta^2 for eta = 1/2.
    LevelPartition q = p;
    q.cls[0][3] = static_cast<uint8_t>(1 - q.cls[0][3]);
    q.cls[0][40] = static_cast<uint8_t>(1 - q.cls[0][40]);
    const Rational eta(1, 2);
    const Ham45Report rep = verify_ham4_ham5(t, p, q, eta, 16);
    CHECK(rep.global_hypothesis_met);
    for (const auto& row : rep.rows) {
        CHECK(row.base_holds);
        CHECK(row.window_holds);
    }
}

TEST_CASE("verify_rigidity: exact equality at the aligned copies") {
    Tower pre = stage_ics(make_initial_tower({{"0", Rational(1, 2)}, {"1", Rational(1, 2)}}), 2);
    pre = stage_weak_mixing(pre);  // 16 columns, height 9
    for (long r : {2L, 3L, 5L}) {
        const RigidityReport rep = verify_rigidity(pre, r, 50, 42);
        CHECK(rep.violations == 0);
        CHECK(rep.min_ratio == Rational(r - 1, r));  // exact alignment
    }
}

TEST_CASE("lemma reports serialize to CSV") {
    const LemmaReport r = verify_lemma1(make_inst("01", "10", 3, Rational(1, 20), 0));
    const std::string csv = lemma_reports_to_csv({r}, "test");
    CHECK(csv.find("instance,d,bound_log2") != std::string::npos);
    CHECK(csv.find("oracle-exhaustive") != std::string::npos);
}
