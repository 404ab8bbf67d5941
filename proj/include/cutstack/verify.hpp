// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutstack/codeword.hpp"
#include "cutstack/covers.hpp"
#include "cutstack/entropy_bounds.hpp"
#include "cutstack/tower.hpp"

namespace cutstack {

// One small generator-pair instance for the covering lemmas. The oracle side
// never shares a code path with the bound it checks.
struct LemmaInstance {
    Codeword w1, w2;        // equal-length binary generators, d(w1,w2) > 0
    long m = 1;             // number of blocks; concatenations have length m*len
    Rational epsilon = 0;
    Rational theta = 0;
    Rational eta = 0;       // lemma 2 only
    uint64_t seed = 1;      // lemma 2 perturbation; recorded for replay
};

enum class LemmaVerdict { pass, fail, vacuous, inapplicable, skipped_precondition };
std::string lemma_verdict_name(LemmaVerdict v);

struct LemmaReport {
    std::string instance;   // replayable description
    Rational d;             // generator distance
    double bound_log2 = 0;  // the closed-form lower bound (log2)
    long observed_S = 0;    // exhaustive minimum (or conservative fallback)
    std::string method;     // "oracle-exhaustive" or "restricted-2eps"
    bool conservative = false;  // fallback path: observed is itself a lower bound
    LemmaVerdict verdict = LemmaVerdict::pass;
    double margin_log2 = 0;  // log2(observed) - bound
};

struct VerifyCaps {
    long oracle_words = 1 << 20;  // exhaustive centers cap: 2^(m*len) <= this
    long max_len = 4;
    long max_m = 8;
};

// All 2^m block concatenations, minimum eps-ball partial cover (target
// 1-theta), compared against the closed-form bound: the covering bound check.
LemmaReport verify_lemma1(const LemmaInstance& inst, const VerifyCaps& caps = {});

// Same with a seeded eta-perturbation of the concatenation map, against the
// perturbed bound.
LemmaReport verify_lemma2(const LemmaInstance& inst, const VerifyCaps& caps = {});

// Full small-instance grid: every unordered generator pair of length <=
// max_len with d > 0, m <= max_m, the given eps and theta grids. Instances
// failing eps/d + 1/m < 1/2 report skipped_precondition; an entropy argument
// beyond 1/2 reports inapplicable.
struct GridSummary {
    std::vector<LemmaReport> reports;
    long passes = 0, failures = 0, vacuous = 0, inapplicable = 0, skipped = 0;
};
GridSummary lemma1_grid(const std::vector<Rational>& eps_grid,
                        const std::vector<Rational>& theta_grid, const VerifyCaps& caps = {},
                        unsigned threads = 1);

std::string lemma_reports_to_csv(const std::vector<LemmaReport>& reports,
                                 const std::string& header_comment);

// --- partition comparison (the two name-distance lemmas) ---------------------

// Class label per (column, level).
struct LevelPartition {
    std::vector<std::vector<uint8_t>> cls;  // [column][level]
    uint32_t classes = 2;
};
LevelPartition partition_from_labels(const Tower& t);  // classes = level symbols

struct Ham45Row {
    long n = 0;
    // base-aligned check (tower bases): hypothesis restricted to first n levels
    Rational base_hyp_lhs, base_hyp_rhs;
    bool base_hypothesis_met = false;
    Rational base_good, base_total;
    bool base_holds = false;  // good >= (1-eta) * base mass
    // window check (every defined offset), global hypothesis D < eta^2
    Rational window_good, window_defined;
    bool window_holds = false;  // good > 1 - eta, undefined counted against
};

struct Ham45Report {
    Rational D;  // sum of mu(p_i symdiff q_i), exact
    bool global_hypothesis_met = false;
    std::vector<Ham45Row> rows;
};

// Compares P-names and Q-names level-by-level for each valid n (capped).
Ham45Report verify_ham4_ham5(const Tower& t, const LevelPartition& p, const LevelPartition& q,
                             const Rational& eta, long n_cap = 512);

// --- rigidity -----------------------------------------------------------------

struct RigidityReport {
    long samples = 0;
    long violations = 0;
    Rational min_ratio;  // min over samples of overlap / mu(A)
    uint64_t seed = 0;
};

// Applies stage_rigidity(r) to the tower, maps `samples` seeded random
// pre-stage level sets through it, and checks overlap >= ((r-1)/r) mu(A)
// exactly at shift = pre-stage height.
RigidityReport verify_rigidity(const Tower& pre, long r, long samples, uint64_t seed);

}  // namespace cutstack
