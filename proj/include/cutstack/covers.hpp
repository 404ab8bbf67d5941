// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <string>
#include <vector>

#include "cutstack/names.hpp"
#include "cutstack/tower.hpp"

namespace cutstack {

enum class CoverMethod { exact_restricted, greedy, oracle_exhaustive };
std::string cover_method_name(CoverMethod m);

struct CoverResult {
    std::vector<Codeword> centers;
    Rational covered_mass = 0;
    long count = 0;
    CoverMethod method = CoverMethod::greedy;
    Rational radius = 0;          // the epsilon used
    Rational target = 0;          // required covered mass
    bool target_reduced = false;  // target was lowered to the defined mass
    // Exactness certificate: when a budgeted search could not close, count
    // holds the greedy upper bound and proven_lb the counting lower bound
    // ceil(target / max single-ball mass); otherwise proven_lb == count.
    bool exact = true;
    long proven_lb = 0;
};

struct CoverCaps {
    long exact_candidates = 4096;      // distinct-name cap for branch and bound
    long oracle_words = 1 << 20;       // r^n cap for the exhaustive oracle
    long long search_nodes = 50000000; // branch-and-bound node budget
};

// Greedy partial cover with centers restricted to the observed names.
// Picks the candidate covering maximal uncovered mass until >= 1-delta;
// ties broken by lexicographically smallest codeword. Ball membership is
// strict: d(name, center) < eps, exact rationals.
// Infeasible error when neglected mass > delta.
CoverResult greedy_cover(const WeightedNames& names, const Rational& eps, const Rational& delta);

// Minimum-cardinality cover among observed-name centers, branch and bound
// seeded by the greedy solution, pruning on remaining-mass / best-ball-mass.
// Resource error when the candidate cap is exceeded (fall back to greedy).
CoverResult exact_cover_restricted(const WeightedNames& names, const Rational& eps,
                                   const Rational& delta, const CoverCaps& caps = {});

// True minimum over all r^n candidate centers; test oracle only.
// Resource error when r^n exceeds the word cap.
CoverResult exact_cover_oracle(const WeightedNames& names, const Rational& eps,
                               const Rational& delta, const CoverCaps& caps = {});

// Internal variant with an explicit mass target; covering_curve uses it for
// flagged rows where 1-delta is unreachable. Exposed for tests.
CoverResult greedy_cover_target(const WeightedNames& names, const Rational& eps,
                                const Rational& target);
CoverResult exact_cover_restricted_target(const WeightedNames& names, const Rational& eps,
                                          const Rational& target, const CoverCaps& caps = {});
CoverResult exact_cover_oracle_target(const WeightedNames& names, const Rational& eps,
                                      const Rational& target, const CoverCaps& caps = {});

// Budget-tolerant variants: instead of raising a resource error when the
// branch-and-bound node budget runs out, return the incumbent (greedy-seeded)
// cover with exact=false and a proven counting lower bound. Some covering
// instances are exact covering-code computations where closing the gap is
// hopeless; a certified interval is still enough to check the lemma bounds.
CoverResult exact_cover_oracle_or_bounds(const WeightedNames& names, const Rational& eps,
                                         const Rational& target, const CoverCaps& caps = {});
CoverResult exact_cover_restricted_or_bounds(const WeightedNames& names, const Rational& eps,
                                             const Rational& target, const CoverCaps& caps = {});

// One S_P(T, n, eps, delta) measurement row.
struct CoverRow {
    long n = 0;
    Rational epsilon, delta;
    long S = 0;
    CoverMethod method = CoverMethod::greedy;
    Rational neglected = 0;
    bool flagged = false;         // neglected > delta/2 at this n
    bool target_reduced = false;  // cover target lowered to the defined mass
    size_t stage_index = 0;       // schedule stage the tower was taken from
    double runtime_ms = 0.0;
};

// Empirical covering curve over an n-grid. For each n the first stage tower
// with min height >= max(2n, n+1) and neglected <= delta/2 is used; if none
// qualifies the last stage is used and the row flagged. S comes from
// exact_cover_restricted when the distinct names fit the cap, greedy
// otherwise. timings=false writes runtime_ms = 0 for byte-stable output.
//
// When neglected mass exceeds delta at some n, the row's target is reduced
// to the defined mass and marked target_reduced — unless reduce_infeasible
// is false, in which case the infeasible error propagates.
std::vector<CoverRow> covering_curve(const std::vector<Tower>& stages,
                                     const std::vector<long>& n_grid, const Rational& eps,
                                     const Rational& delta, const CoverCaps& caps = {},
                                     bool timings = false, bool reduce_infeasible = true);

std::string cover_rows_to_csv(const std::vector<CoverRow>& rows, const std::string& header_comment);

}  // namespace cutstack
