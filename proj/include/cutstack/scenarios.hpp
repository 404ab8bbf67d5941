// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutstack/covers.hpp"
#include "cutstack/entropy_bounds.hpp"
#include "cutstack/rates.hpp"
#include "cutstack/tower.hpp"

namespace cutstack {

// --- stage schedules --------------------------------------------------------

enum class StageKind { two_word, ics, weak_mixing, rigidity, cut_stack, swap };
std::string stage_kind_name(StageKind k);

struct StageDesc {
    StageKind kind = StageKind::ics;
    long k = 0;  // two_word / cut_stack subcolumn count; swap's k_n
    long s = 0;  // ics rounds; swap's s_n
    long r = 0;  // rigidity subcolumn count
    long n = 0;  // swap stage index (1-based in the prop61 construction)
};

struct StageSchedule {
    std::vector<StageDesc> stages;
    std::string provenance;
};

std::string schedule_to_json(const StageSchedule& schedule);
StageSchedule schedule_from_json(const std::string& text);

// Desk-scale execution caps. The paper's parameters grow super-exponentially;
// every cap hit is flagged in the result, never silently absorbed.
struct ExecCaps {
    long max_columns = 4096;  // ics stops before a round would exceed this
    long max_repeat = 65536;  // prop61 cut-in-half repetitions
};

struct StageSummary {
    size_t index = 0;
    std::string desc;
    size_t columns = 0;
    long height = 0;  // min column height after the stage
    Rational measure;
    bool capped = false;
    // swap stages: column count of the right family before its re-stacking
    long pre_stack_columns = 0;
};

struct ExecResult {
    Tower tower;
    std::vector<Tower> snapshots;  // tower after each stage
    std::vector<StageSummary> stages;
    bool any_cap_hit = false;
};

ExecResult run_schedule(const Tower& initial, const StageSchedule& schedule,
                        const ExecCaps& caps = {});

// --- block-process name distribution ----------------------------------------

// Exact name distribution of the virtual tower obtained by s rounds of
// independent cutting and stacking on two equal-width generator columns:
// all 2^(2^s) block patterns at uniform width, height H = 2^s * len(w).
// Materialization-free; entries are (offset phase, spanned block pattern)
// windows with exact rational masses. Resource error when the entry count
// Sum_phi 2^(blocks(phi)) exceeds entry_cap.
WeightedNames ics_block_names(const std::vector<uint8_t>& w1, const std::vector<uint8_t>& w2,
                              uint32_t alphabet, long s, long n, long entry_cap = (1L << 22));

// --- paper scenarios ---------------------------------------------------------

// Thue-Morse prefix; the default aperiodic base word for scenario columns.
std::string thue_morse_word(long length);

struct Prop32Scenario {
    StageSchedule schedule;
    Tower initial;           // one column of height h, word base_word
    long h = 0, k1 = 0, k2 = 0;
    long n = 0;              // designed name length k1*h
    long claim_S_at_most = 0;  // h
    Rational eta_supported;  // smallest eta with k2 > 2/eta, i.e. 2/k2
};
Prop32Scenario scenario_prop32(long h, long k1, long k2, const std::string& base_word = "");

struct Prop43Caps {
    long r_max = 40;          // search cap for the designed block exponent
    long s_exec_max = 5;      // materialized ics rounds requested
    long rho_max = 5;         // measurement block exponent cap
    long entry_cap = 1 << 22; // block-process entry cap
};

struct Prop43Scenario {
    StageSchedule schedule;  // two_word(k) then ics(s_exec)
    Tower initial;
    long h = 0, k = 0, ell = 0;  // ell = k(h+1)
    std::vector<uint8_t> word_c1, word_c2;  // the two generator column words
    Rational d;              // normalized Hamming distance between them
    double beta_log2 = 0;    // log2 beta = 1/(8 k (h+1))
    long r_star = 0;         // minimal r with beta^n > 2 a_n(t) at n = 2^r * ell
    long n_star = 0;
    double ineq_lhs_log2 = 0, ineq_rhs_log2 = 0;  // the designed inequality, log2 both sides
    Rational eta;
    long s_star = 0;   // minimal s > r_star with 2^(r_star - s) < eta^2
    long s_exec = 0;   // materialized rounds after caps
    bool s_capped = false;
    long rho_meas = 0;  // measurement point: n_meas = 2^rho_meas * ell
    long n_meas = 0;
    double t = 0;
    Rational epsilon, delta;
    RateFamily rate;
};
Prop43Scenario scenario_prop43(long h, long k, const RateFamily& rate, double t,
                               const Rational& eps, const Rational& delta, const Rational& eta,
                               const Prop43Caps& caps = {}, const std::string& base_word = "");

struct Prop43Measurement {
    long n = 0;
    long distinct_names = 0;
    CoverResult cover;     // S at (epsilon, delta) on the block-process names
    double a_n_log2 = 0;   // log2 a_{n_meas}(t)
    bool s_exceeds_rate = false;  // computed S > a_{n_meas}(t)
};
Prop43Measurement measure_prop43(const Prop43Scenario& sc);

// --- family F (three-stage construction) -------------------------------------

struct FamilyFRow {
    long k = 0;
    long r_k = 0;
    double t_k = 0;
    long s_k = 0;
    BigInt h_k;      // height entering block k (h_0 = 1)
    long sigma_k = 0;
    double alpha_k = 0;
    double beta_k = 0;  // 2^alpha_k
    // chosen s_k's defining inequality at n = 2^{s_k}, log2 both sides
    double ineq_lhs_log2 = 0, ineq_rhs_log2 = 0;
    // the "sufficiently large k" separation H(2eps + 2^-sigma_k) < H(3eps),
    // checked and reported, never solved for
    bool separation_ok = false;
};

struct FamilyFScenario {
    StageSchedule schedule;  // ics(s_0), then per k >= 1: wm, rigidity(r_k), ics(s_k)
    Tower initial;           // two height-1 columns 0 and 1, widths 1/2
    std::vector<FamilyFRow> rows;  // k = 0..K-1
    std::vector<BigInt> heights;   // h_0..h_K per the recursion
    Rational eps;
};

// Minimal s <= s_cap with beta_k^n > k a_n(t_k) at n = 2^s and at sampled
// larger n. k = 0 is vacuous and returns s_min. alpha_k = log2 beta_k.
long solve_sk(double alpha_k, long k, const RateFamily& rate, double t_k, long s_min = 1,
              long s_cap = 64);

// r_seq must provide indices 0..K (alpha_k needs r_{k+1}); t_seq indices 0..K-1.
FamilyFScenario scenario_family_F(const Rational& eps, const std::vector<long>& r_seq,
                                  const std::vector<double>& t_seq, long K,
                                  const RateFamily& rate, long s_min = 1, long s_cap = 64);

std::string family_f_to_csv(const FamilyFScenario& f, const std::string& header_comment);

// --- prop61 (swap construction) ----------------------------------------------

struct Prop61Scenario {
    StageSchedule schedule;  // swap(n=1..stages) composite blocks
    Tower initial;           // two columns of height h1, width 1/2 each
    std::vector<BigInt> predicted_heights;  // h_1..h_{stages+1}
    // family widths after stage n: ((n+1)/(n+2), 1/(n+2))
    std::vector<std::pair<Rational, Rational>> predicted_widths;
};
Prop61Scenario scenario_prop61(const std::vector<long>& k_seq, const std::vector<long>& s_seq,
                               long stages, long h1, const std::string& base_word = "");

}  // namespace cutstack
