// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/covers.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <unordered_map>

#include "cutstack/errors.hpp"

namespace cutstack {

std::string cover_method_name(CoverMethod m) {
    switch (m) {
        case CoverMethod::exact_restricted: return "exact-restricted";
        case CoverMethod::greedy: return "greedy";
        case CoverMethod::oracle_exhaustive: return "oracle-exhaustive";
    }
    return "?";
}

namespace {

using Mask = std::vector<uint64_t>;

struct MaskHash {
    size_t operator()(const Mask& m) const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t w : m) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

// Cover instance with masses scaled to a common denominator, so coverage
// comparisons are exact integer arithmetic.
struct Instance {
    const WeightedNames* names = nullptr;
    size_t n_entries = 0;
    size_t mask_words = 0;
    std::vector<BigInt> mass;  // scaled entry masses
    BigInt denom = 1;          // common denominator
    BigInt target = 0;         // required scaled coverage
    Rational target_rat = 0;
    long max_diff = -1;   // strict ball radius in positions
    bool uniform = false;  // all entry masses equal: gains are popcounts

    BigInt mask_mass(const Mask& m) const {
        if (uniform) {
            long bits = 0;
            for (uint64_t w : m) bits += std::popcount(w);
            return mass[0] * bits;
        }
        BigInt s = 0;
        for (size_t w = 0; w < mask_words; ++w) {
            uint64_t bits = m[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                s += mass[w * 64 + static_cast<size_t>(b)];
            }
        }
        return s;
    }
    BigInt uncovered_gain(const Mask& cand, const Mask& covered) const {
        if (uniform) {
            long bits = 0;
            for (size_t w = 0; w < mask_words; ++w)
                bits += std::popcount(cand[w] & ~covered[w]);
            return mass[0] * bits;
        }
        BigInt s = 0;
        for (size_t w = 0; w < mask_words; ++w) {
            uint64_t bits = cand[w] & ~covered[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                s += mass[w * 64 + static_cast<size_t>(b)];
            }
        }
        return s;
    }
};

Instance make_instance(const WeightedNames& names, const Rational& eps, const Rational& target) {
    require(!names.entries.empty(), ErrorKind::contract, "cover: empty name distribution");
    Instance inst;
    inst.names = &names;
    inst.n_entries = names.entries.size();
    inst.mask_words = (inst.n_entries + 63) / 64;
    inst.max_diff = strict_ball_max_diff(names.entries[0].first.size(), eps);
    inst.target_rat = target;

    BigInt d = 1;
    for (const auto& [w, m] : names.entries) d = boost::multiprecision::lcm(d, rat_den(m));
    inst.denom = d;
    inst.mass.reserve(inst.n_entries);
    for (const auto& [w, m] : names.entries) inst.mass.push_back(rat_num(m) * (d / rat_den(m)));
    inst.uniform = std::all_of(inst.mass.begin(), inst.mass.end(),
                               [&](const BigInt& v) { return v == inst.mass[0]; });
    const Rational scaled = target * d;
    inst.target = ceil_div(rat_num(scaled), rat_den(scaled));
    if (inst.target < 0) inst.target = 0;
    return inst;
}

// A deduplicated candidate ball: coverage mask plus the lexicographically
// smallest word producing it.
struct Candidate {
    Mask mask;
    Codeword center;
    BigInt total_mass;
};

Mask ball_mask(const Instance& inst, const Codeword& center) {
    Mask m(inst.mask_words, 0);
    if (inst.max_diff < 0) return m;
    const auto& entries = inst.names->entries;
    for (size_t i = 0; i < inst.n_entries; ++i) {
        if (Codeword::diff_count(entries[i].first, center) <= static_cast<uint32_t>(inst.max_diff))
            m[i >> 6] |= (uint64_t{1} << (i & 63));
    }
    return m;
}

std::vector<Candidate> dedupe_candidates(const Instance& inst, std::vector<Candidate> raw) {
    std::unordered_map<Mask, size_t, MaskHash> seen;
    std::vector<Candidate> out;
    for (auto& c : raw) {
        bool empty = true;
        for (uint64_t w : c.mask)
            if (w) { empty = false; break; }
        if (empty) continue;
        auto [it, inserted] = seen.try_emplace(c.mask, out.size());
        if (inserted) {
            out.push_back(std::move(c));
        } else if (c.center < out[it->second].center) {
            out[it->second].center = std::move(c.center);
        }
    }
    for (auto& c : out) c.total_mass = inst.mask_mass(c.mask);
    // Deterministic strong-first order for greedy and branch and bound.
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.total_mass != b.total_mass) return a.total_mass > b.total_mass;
        return a.center < b.center;
    });
    return out;
}

// Remove candidates whose coverage is a subset of another's. Quadratic; only
// applied to small candidate sets.
void dominance_prune(std::vector<Candidate>& cands) {
    if (cands.size() > 1500) return;
    std::vector<bool> dead(cands.size(), false);
    for (size_t i = 0; i < cands.size(); ++i) {
        if (dead[i]) continue;
        for (size_t j = i + 1; j < cands.size(); ++j) {  // sorted: j cannot dominate i strictly
            if (dead[j]) continue;
            bool subset = true;
            for (size_t w = 0; w < cands[j].mask.size(); ++w)
                if (cands[j].mask[w] & ~cands[i].mask[w]) { subset = false; break; }
            if (subset) dead[j] = true;
        }
    }
    std::vector<Candidate> kept;
    for (size_t i = 0; i < cands.size(); ++i)
        if (!dead[i]) kept.push_back(std::move(cands[i]));
    cands = std::move(kept);
}

struct GreedyOutcome {
    std::vector<size_t> picked;
    BigInt covered = 0;
};

// Lazy greedy: cached gains only shrink as coverage grows, so a stale max
// only needs revalidation, not a full rescan.
GreedyOutcome run_greedy(const Instance& inst, const std::vector<Candidate>& cands) {
    GreedyOutcome out;
    if (inst.target <= 0) return out;
    Mask covered(inst.mask_words, 0);
    std::vector<BigInt> gain;
    gain.reserve(cands.size());
    for (const auto& c : cands) gain.push_back(c.total_mass);
    std::vector<bool> used(cands.size(), false);
    std::vector<bool> fresh(cands.size(), true);

    while (out.covered < inst.target) {
        long best = -1;
        for (size_t pass = 0; pass < cands.size() + 1; ++pass) {
            best = -1;
            for (size_t i = 0; i < cands.size(); ++i) {
                if (used[i] || gain[i] == 0) continue;
                if (best < 0 || gain[i] > gain[static_cast<size_t>(best)] ||
                    (gain[i] == gain[static_cast<size_t>(best)] &&
                     cands[i].center < cands[static_cast<size_t>(best)].center))
                    best = static_cast<long>(i);
            }
            if (best < 0) break;
            if (fresh[static_cast<size_t>(best)]) break;
            gain[static_cast<size_t>(best)] =
                inst.uncovered_gain(cands[static_cast<size_t>(best)].mask, covered);
            fresh[static_cast<size_t>(best)] = true;
        }
        if (best < 0) break;  // nothing adds coverage
        const size_t b = static_cast<size_t>(best);
        out.covered += gain[b];
        out.picked.push_back(b);
        used[b] = true;
        for (size_t w = 0; w < inst.mask_words; ++w) covered[w] |= cands[b].mask[w];
        for (size_t i = 0; i < cands.size(); ++i)
            if (!used[i]) fresh[i] = false;
    }
    return out;
}

struct ExactSearch {
    const Instance& inst;
    const std::vector<Candidate>& cands;
    long long node_budget;
    std::vector<BigInt> suffix_best;  // max ball mass among cands[i..]
    std::vector<size_t> best_picked;
    BigInt best_covered = 0;
    size_t best_count = 0;
    long long nodes = 0;

    ExactSearch(const Instance& in, const std::vector<Candidate>& c, long long budget)
        : inst(in), cands(c), node_budget(budget) {
        suffix_best.resize(cands.size() + 1, 0);
        for (size_t i = cands.size(); i-- > 0;)
            suffix_best[i] = std::max(suffix_best[i + 1], cands[i].total_mass);
    }

    // Include/exclude DFS over the sorted candidates; recursion depth is the
    // number of included balls, so at most the incumbent count.
    void dfs(size_t idx, Mask& covered, const BigInt& covered_mass, std::vector<size_t>& picked) {
        if (covered_mass >= inst.target) {
            if (picked.size() < best_count) {
                best_count = picked.size();
                best_picked = picked;
                best_covered = covered_mass;
            }
            return;
        }
        const BigInt remaining = inst.target - covered_mass;
        for (size_t i = idx; i < cands.size(); ++i) {
            if (++nodes > node_budget)
                raise(ErrorKind::resource, "exact cover: node budget exceeded");
            if (picked.size() + 1 >= best_count) return;
            if (suffix_best[i] == 0) return;
            const BigInt lb = ceil_div(remaining, suffix_best[i]);
            if (picked.size() + lb.convert_to<size_t>() >= best_count) return;

            const BigInt gain = inst.uncovered_gain(cands[i].mask, covered);
            if (gain == 0) continue;
            Mask saved = covered;
            for (size_t w = 0; w < inst.mask_words; ++w) covered[w] |= cands[i].mask[w];
            picked.push_back(i);
            dfs(i + 1, covered, covered_mass + gain, picked);
            picked.pop_back();
            covered = std::move(saved);
        }
    }
};

CoverResult finish_result(const Instance& inst, const std::vector<Candidate>& cands,
                          const std::vector<size_t>& picked, const BigInt& covered,
                          CoverMethod method, const Rational& eps) {
    CoverResult res;
    res.method = method;
    res.radius = eps;
    res.target = inst.target_rat;
    res.count = static_cast<long>(picked.size());
    res.proven_lb = res.count;
    res.covered_mass = Rational(covered, inst.denom);
    std::vector<Codeword> centers;
    centers.reserve(picked.size());
    for (size_t i : picked) centers.push_back(cands[i].center);
    std::sort(centers.begin(), centers.end());
    res.centers = std::move(centers);
    return res;
}

Rational feasibility_target(const WeightedNames& names, const Rational& delta) {
    require(delta > 0 && delta < 1, ErrorKind::contract, "cover: delta must be in (0,1)");
    require(names.neglected_mass <= delta, ErrorKind::infeasible,
            "cover: neglected mass " + rational_to_string(names.neglected_mass) +
                " exceeds delta " + rational_to_string(delta) +
                "; even full coverage of observed names cannot certify 1-delta");
    return 1 - delta;
}

std::vector<Candidate> restricted_candidates(const Instance& inst) {
    // Ball masks take n_entries^2 bits; beyond this an instance needs the
    // singleton fast path (eps < 1/n) to be tractable anyway.
    require(inst.n_entries <= 20000, ErrorKind::resource,
            "cover: too many distinct names for ball-mask search at this epsilon");
    std::vector<Candidate> raw;
    raw.reserve(inst.n_entries);
    for (const auto& [w, m] : inst.names->entries) {
        (void)m;
        raw.push_back(Candidate{ball_mask(inst, w), w, 0});
    }
    return dedupe_candidates(inst, std::move(raw));
}

// eps <= 1/n: every ball holds exactly its center, so the optimum is the
// shortest mass-descending prefix. Exact for restricted and oracle alike
// (off-support centers cover nothing).
CoverResult solve_singleton(const WeightedNames& names, const Instance& inst, const Rational& eps,
                            CoverMethod method) {
    std::vector<size_t> order(inst.n_entries);
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (inst.mass[a] != inst.mass[b]) return inst.mass[a] > inst.mass[b];
        return names.entries[a].first < names.entries[b].first;
    });
    BigInt covered = 0;
    std::vector<size_t> picked;
    for (size_t i : order) {
        if (covered >= inst.target) break;
        covered += inst.mass[i];
        picked.push_back(i);
    }
    require(covered >= inst.target, ErrorKind::infeasible,
            "cover: observed names cannot reach the requested coverage");
    CoverResult res;
    res.method = method;
    res.radius = eps;
    res.target = inst.target_rat;
    res.count = static_cast<long>(picked.size());
    res.proven_lb = res.count;  // prefix-by-mass is optimal for singleton balls
    res.covered_mass = Rational(covered, inst.denom);
    for (size_t i : picked) res.centers.push_back(names.entries[i].first);
    std::sort(res.centers.begin(), res.centers.end());
    return res;
}

CoverResult solve_greedy(const WeightedNames& names, const Rational& eps, const Rational& target) {
    Instance inst = make_instance(names, eps, target);
    require(inst.max_diff >= 0 || inst.target <= 0, ErrorKind::infeasible,
            "cover: epsilon <= 0 admits no ball members");
    if (inst.max_diff == 0) return solve_singleton(names, inst, eps, CoverMethod::greedy);
    auto cands = restricted_candidates(inst);
    auto g = run_greedy(inst, cands);
    require(g.covered >= inst.target, ErrorKind::infeasible,
            "greedy cover: observed names cannot reach the requested coverage");
    return finish_result(inst, cands, g.picked, g.covered, CoverMethod::greedy, eps);
}

CoverResult solve_exact(const WeightedNames& names, const Rational& eps, const Rational& target,
                        const CoverCaps& caps, bool oracle, bool allow_interval = false) {
    Instance inst = make_instance(names, eps, target);
    require(inst.max_diff >= 0 || inst.target <= 0, ErrorKind::infeasible,
            "cover: epsilon <= 0 admits no ball members");
    if (inst.max_diff == 0)
        return solve_singleton(
            names, inst, eps,
            oracle ? CoverMethod::oracle_exhaustive : CoverMethod::exact_restricted);

    std::vector<Candidate> cands;
    if (oracle) {
        const uint32_t r = names.entries[0].first.alphabet();
        const uint32_t n = names.entries[0].first.size();
        double words = 1.0;
        for (uint32_t i = 0; i < n; ++i) words *= r;
        require(words <= static_cast<double>(caps.oracle_words), ErrorKind::resource,
                "oracle cover: r^n exceeds the word cap");
        // Dedupe masks on the fly; only distinct coverage sets are kept.
        std::vector<Candidate> raw;
        if (r == 2 && n <= 62) {
            // Packed enumeration: entries and centers as plain bit patterns.
            std::vector<uint64_t> packed(inst.n_entries);
            for (size_t i = 0; i < inst.n_entries; ++i) {
                uint64_t bits = 0;
                const Codeword& e = names.entries[i].first;
                for (uint32_t j = 0; j < n; ++j) bits |= uint64_t{e.symbol(j)} << j;
                packed[i] = bits;
            }
            // Symbol-lexicographic order on little-endian bit patterns: the
            // lowest differing bit decides.
            auto lex_less = [](uint64_t a, uint64_t b) {
                const uint64_t diff = a ^ b;
                if (!diff) return false;
                return ((a >> std::countr_zero(diff)) & 1) == 0;
            };
            const int max_diff = static_cast<int>(inst.max_diff);
            std::unordered_map<Mask, uint64_t, MaskHash> seen;
            for (uint64_t center = 0; center < (uint64_t{1} << n); ++center) {
                Mask mask(inst.mask_words, 0);
                bool empty = true;
                for (size_t i = 0; i < inst.n_entries; ++i) {
                    if (std::popcount(packed[i] ^ center) <= max_diff) {
                        mask[i >> 6] |= (uint64_t{1} << (i & 63));
                        empty = false;
                    }
                }
                if (empty) continue;
                auto [it, inserted] = seen.try_emplace(std::move(mask), center);
                if (!inserted && lex_less(center, it->second)) it->second = center;
            }
            raw.reserve(seen.size());
            std::vector<uint8_t> sym(n);
            for (auto& [mask, center] : seen) {
                for (uint32_t j = 0; j < n; ++j) sym[j] = (center >> j) & 1;
                raw.push_back(Candidate{mask, Codeword(sym, 2), 0});
            }
        } else {
            std::unordered_map<Mask, Codeword, MaskHash> seen;
            std::vector<uint8_t> sym(n, 0);
            while (true) {
                Codeword w(sym, r);
                Mask mask = ball_mask(inst, w);
                bool empty = true;
                for (uint64_t word : mask)
                    if (word) { empty = false; break; }
                if (!empty) {
                    auto [it, inserted] = seen.try_emplace(std::move(mask), w);
                    if (!inserted && w < it->second) it->second = std::move(w);
                }
                uint32_t i = 0;
                for (; i < n; ++i) {
                    if (++sym[i] < r) break;
                    sym[i] = 0;
                }
                if (i == n) break;
            }
            raw.reserve(seen.size());
            for (auto& [mask, center] : seen) raw.push_back(Candidate{mask, center, 0});
        }
        cands = dedupe_candidates(inst, std::move(raw));
    } else {
        require(static_cast<long>(names.entries.size()) <= caps.exact_candidates,
                ErrorKind::resource,
                "exact cover: distinct names exceed the candidate cap; fall back to greedy");
        cands = restricted_candidates(inst);
    }
    dominance_prune(cands);

    auto g = run_greedy(inst, cands);
    require(g.covered >= inst.target, ErrorKind::infeasible,
            "exact cover: observed names cannot reach the requested coverage");

    ExactSearch search(inst, cands, caps.search_nodes);
    search.best_count = g.picked.size();
    search.best_picked = g.picked;
    search.best_covered = g.covered;
    Mask covered(inst.mask_words, 0);
    std::vector<size_t> picked;
    BigInt zero = 0;
    bool closed = true;
    try {
        search.dfs(0, covered, zero, picked);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::resource || !allow_interval) throw;
        closed = false;
    }

    CoverResult res = finish_result(
        inst, cands, search.best_picked, search.best_covered,
        oracle ? CoverMethod::oracle_exhaustive : CoverMethod::exact_restricted, eps);
    if (closed) {
        res.proven_lb = res.count;
    } else {
        res.exact = false;
        res.proven_lb = static_cast<long>(
            ceil_div(inst.target, cands.front().total_mass).convert_to<long>());
    }
    return res;
}

}  // namespace

CoverResult greedy_cover(const WeightedNames& names, const Rational& eps, const Rational& delta) {
    return solve_greedy(names, eps, feasibility_target(names, delta));
}

CoverResult greedy_cover_target(const WeightedNames& names, const Rational& eps,
                                const Rational& target) {
    return solve_greedy(names, eps, target);
}

CoverResult exact_cover_restricted(const WeightedNames& names, const Rational& eps,
                                   const Rational& delta, const CoverCaps& caps) {
    return solve_exact(names, eps, feasibility_target(names, delta), caps, false);
}

CoverResult exact_cover_restricted_target(const WeightedNames& names, const Rational& eps,
                                          const Rational& target, const CoverCaps& caps) {
    return solve_exact(names, eps, target, caps, false);
}

CoverResult exact_cover_oracle(const WeightedNames& names, const Rational& eps,
                               const Rational& delta, const CoverCaps& caps) {
    return solve_exact(names, eps, feasibility_target(names, delta), caps, true);
}

CoverResult exact_cover_oracle_target(const WeightedNames& names, const Rational& eps,
                                      const Rational& target, const CoverCaps& caps) {
    return solve_exact(names, eps, target, caps, true);
}

CoverResult exact_cover_oracle_or_bounds(const WeightedNames& names, const Rational& eps,
                                         const Rational& target, const CoverCaps& caps) {
    return solve_exact(names, eps, target, caps, true, true);
}

CoverResult exact_cover_restricted_or_bounds(const WeightedNames& names, const Rational& eps,
                                             const Rational& target, const CoverCaps& caps) {
    return solve_exact(names, eps, target, caps, false, true);
}

std::vector<CoverRow> covering_curve(const std::vector<Tower>& stages,
                                     const std::vector<long>& n_grid, const Rational& eps,
                                     const Rational& delta, const CoverCaps& caps, bool timings,
                                     bool reduce_infeasible) {
    require(!stages.empty(), ErrorKind::contract, "covering_curve: no stage towers");
    require(delta > 0 && delta < 1, ErrorKind::contract, "covering_curve: delta must be in (0,1)");
    std::vector<CoverRow> rows;
    for (long n : n_grid) {
        // First stage tall enough that windows are defined and the top-level
        // loss is within delta/2; otherwise the deepest stage, flagged.
        size_t pick = stages.size() - 1;
        for (size_t i = 0; i < stages.size(); ++i) {
            const Tower& t = stages[i];
            if (t.min_height() < std::max(2 * n, n + 1)) continue;
            const Rational neglected = (t.total_measure() == 0)
                                           ? Rational(0)
                                           : Rational(n - 1) *
                                                 [&] {
                                                     Rational w = 0;
                                                     for (const auto& c : t.columns) w += c.width;
                                                     return w;
                                                 }() /
                                                 t.total_measure();
            if (neglected <= delta / 2) {
                pick = i;
                break;
            }
        }
        const Tower& t = stages[pick];
        require(n <= t.min_height(), ErrorKind::contract,
                "covering_curve: n exceeds every stage tower's height");

        const auto t0 = std::chrono::steady_clock::now();
        WeightedNames names = name_distribution(t, n);

        CoverRow row;
        row.n = n;
        row.epsilon = eps;
        row.delta = delta;
        row.neglected = names.neglected_mass;
        row.stage_index = pick;
        row.flagged = names.neglected_mass > delta / 2;

        Rational target = 1 - delta;
        const Rational defined = 1 - names.neglected_mass;
        if (defined < target) {
            require(reduce_infeasible, ErrorKind::infeasible,
                    "covering_curve: neglected mass " + rational_to_string(names.neglected_mass) +
                        " exceeds delta at n=" + std::to_string(n) + " (strict mode)");
            target = defined;
            row.target_reduced = true;
        }
        CoverResult res;
        if (static_cast<long>(names.entries.size()) <= caps.exact_candidates) {
            try {
                res = exact_cover_restricted_target(names, eps, target, caps);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::resource) throw;
                res = greedy_cover_target(names, eps, target);
            }
        } else {
            res = greedy_cover_target(names, eps, target);
        }
        row.S = res.count;
        row.method = res.method;
        if (timings) {
            const auto t1 = std::chrono::steady_clock::now();
            row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string cover_rows_to_csv(const std::vector<CoverRow>& rows,
                              const std::string& header_comment) {
    std::string out;
    if (!header_comment.empty()) out += "# " + header_comment + "\n";
    out += "n,epsilon,delta,S,method,neglected_mass,flagged,target_reduced,stage,runtime_ms\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3f", r.runtime_ms);
        out += std::to_string(r.n) + "," + rational_to_string(r.epsilon) + "," +
               rational_to_string(r.delta) + "," + std::to_string(r.S) + "," +
               cover_method_name(r.method) + "," + rational_to_string(r.neglected) + "," +
               (r.flagged ? "1" : "0") + "," + (r.target_reduced ? "1" : "0") + "," +
               std::to_string(r.stage_index) + "," + buf + "\n";
    }
    return out;
}

}  // namespace cutstack
