// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/scenarios.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>
#include <map>

namespace cutstack {

std::string stage_kind_name(StageKind k) {
    switch (k) {
        case StageKind::two_word: return "two_word";
        case StageKind::ics: return "ics";
        case StageKind::weak_mixing: return "weak_mixing";
        case StageKind::rigidity: return "rigidity";
        case StageKind::cut_stack: return "cut_stack";
        case StageKind::swap: return "swap";
    }
    return "?";
}

namespace {

StageKind stage_kind_from_name(const std::string& name) {
    if (name == "two_word") return StageKind::two_word;
    if (name == "ics") return StageKind::ics;
    if (name == "weak_mixing") return StageKind::weak_mixing;
    if (name == "rigidity") return StageKind::rigidity;
    if (name == "cut_stack") return StageKind::cut_stack;
    if (name == "swap") return StageKind::swap;
    raise(ErrorKind::parse, "unknown stage kind '" + name + "'");
}

}  // namespace

std::string schedule_to_json(const StageSchedule& schedule) {
    nlohmann::ordered_json j;
    j["provenance"] = schedule.provenance;
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto& st : schedule.stages) {
        nlohmann::ordered_json js;
        js["stage"] = stage_kind_name(st.kind);
        switch (st.kind) {
            case StageKind::two_word:
            case StageKind::cut_stack: js["k"] = st.k; break;
            case StageKind::ics: js["s"] = st.s; break;
            case StageKind::rigidity: js["r"] = st.r; break;
            case StageKind::weak_mixing: break;
            case StageKind::swap:
                js["n"] = st.n;
                js["k"] = st.k;
                js["s"] = st.s;
                break;
        }
        j["stages"].push_back(std::move(js));
    }
    return j.dump(2) + "\n";
}

StageSchedule schedule_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::parse, std::string("schedule: ") + e.what());
    }
    try {
        StageSchedule out;
        out.provenance = j.value("provenance", "");
        for (const auto& js : j.at("stages")) {
            StageDesc st;
            st.kind = stage_kind_from_name(js.at("stage").get<std::string>());
            st.k = js.value("k", 0L);
            st.s = js.value("s", 0L);
            st.r = js.value("r", 0L);
            st.n = js.value("n", 0L);
            out.stages.push_back(st);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::parse, std::string("schedule: ") + e.what());
    }
}

namespace {

// Merge identical-word columns (widths summed) when that leaves the widths
// uniform, i.e. every word class has the same multiplicity. Keeps 2^(2^s)
// manageable when generator words coincide without breaking the ics
// equal-width contract.
bool merge_uniform_columns(Tower& t, std::string* log_note) {
    std::map<std::vector<uint8_t>, std::pair<Rational, size_t>> groups;
    for (const auto& c : t.columns) {
        auto& g = groups[c.levels];
        g.first += c.width;
        g.second += 1;
    }
    if (groups.size() == t.columns.size()) return false;
    const size_t mult = groups.begin()->second.second;
    for (const auto& [w, g] : groups)
        if (g.second != mult) return false;  // uneven classes: keep unmerged
    std::vector<Column> merged;
    merged.reserve(groups.size());
    for (auto& [word, g] : groups) merged.push_back(Column{word, g.first});
    if (log_note)
        *log_note = "merged " + std::to_string(t.columns.size()) + " columns into " +
                    std::to_string(merged.size()) + " distinct words";
    t.columns = std::move(merged);
    return true;
}

// Capped ics execution: one round at a time, stopping before a round would
// exceed the column cap. merge=false keeps identical-word columns separate
// (prop61's family pipeline stacks all of them, so the count matters).
long run_ics_capped(Tower& t, long s, const ExecCaps& caps, bool* capped,
                    std::vector<std::string>* notes, bool merge = true) {
    long done = 0;
    for (long round = 0; round < s; ++round) {
        const long cols = static_cast<long>(t.columns.size());
        if (cols > caps.max_columns / cols) {  // cols^2 > cap without overflow
            *capped = true;
            break;
        }
        t = stage_ics(t, 1);
        std::string note;
        if (merge && merge_uniform_columns(t, &note) && notes) notes->push_back(note);
        ++done;
    }
    return done;
}

Tower single_column_tower(const Tower& like, Column c) {
    Tower t = like;
    t.columns = {std::move(c)};
    return t;
}

// Prop61 composite stage: exact swap bookkeeping, then the per-family
// substages with each family rebuilt from its principal word (the proof is
// an outline; mass bookkeeping is exact, word content idealized).
Tower run_swap_block(const Tower& t, const StageDesc& st, const ExecCaps& caps,
                     StageSummary& summary) {
    require(t.columns.size() == 2, ErrorKind::contract,
            "swap stage: tower must enter with exactly two columns");
    const long h = t.columns[0].height();
    require(t.columns[1].height() == h, ErrorKind::contract,
            "swap stage: columns must have equal heights");
    const long kn = st.k, sn = st.s;
    require(kn >= 1 && sn >= 1, ErrorKind::contract, "swap stage: k_n and s_n must be >= 1");

    const std::vector<uint8_t> word_u = t.columns[0].levels;
    const std::vector<uint8_t> word_v = t.columns[1].levels;

    SwapResult sw = stage_swap(t, st.n);
    Rational f1w = 0, f2w = 0;
    for (size_t i : sw.family1) f1w += sw.tower.columns[i].width;
    for (size_t i : sw.family2) f2w += sw.tower.columns[i].width;

    // Right family: cut in half; first half A-treated (V^k then k spacers),
    // second half B-treated ((V s)^k); then ics and a stack into one column.
    Tower right = single_column_tower(t, Column{word_v, f2w});
    right = stage_two_word(right, kn);
    bool capped = false;
    std::vector<std::string> notes;
    const long done = run_ics_capped(right, sn, caps, &capped, &notes, /*merge=*/false);
    summary.pre_stack_columns = static_cast<long>(right.columns.size());
    if (capped) summary.capped = true;
    std::vector<size_t> order(right.columns.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    right = stack(right, order);

    // Left family: cut into k_n and stack, k_n spacers on top, then
    // cut-in-half-and-stack until heights equalize: 2^{s_n} + s_n halvings
    // (height factor 2^(2^{s_n} + s_n)), capped.
    Tower left = single_column_tower(t, Column{word_u, f1w});
    left = cut_stack_each(left, kn);
    left = add_spacers(left, 0, kn);
    long halvings = (1L << sn) + sn;
    if (capped) {
        // ics was truncated; equalize against what the right side really got
        halvings = (1L << done) + done;
    }
    if (halvings > caps.max_repeat) {
        halvings = caps.max_repeat;
        summary.capped = true;
    }
    for (long i = 0; i < halvings; ++i) left = cut_stack_each(left, 2);

    Tower out = t;
    out.columns = {left.columns[0], right.columns[0]};
    return out;
}

}  // namespace

ExecResult run_schedule(const Tower& initial, const StageSchedule& schedule,
                        const ExecCaps& caps) {
    initial.check_valid();
    ExecResult res;
    res.tower = initial;
    char buf[160];
    for (size_t i = 0; i < schedule.stages.size(); ++i) {
        const StageDesc& st = schedule.stages[i];
        StageSummary summary;
        summary.index = i;
        try {
            switch (st.kind) {
                case StageKind::two_word:
                    res.tower = stage_two_word(res.tower, st.k);
                    break;
                case StageKind::ics: {
                    bool capped = false;
                    std::vector<std::string> notes;
                    const long done = run_ics_capped(res.tower, st.s, caps, &capped, &notes);
                    summary.capped = capped;
                    if (capped) {
                        std::snprintf(buf, sizeof buf,
                                      "ics capped at %ld of %ld rounds (column cap %ld)", done,
                                      st.s, caps.max_columns);
                        res.tower.stage_log.push_back(buf);
                    }
                    for (const auto& n : notes) res.tower.stage_log.push_back("ics: " + n);
                    break;
                }
                case StageKind::weak_mixing:
                    res.tower = stage_weak_mixing(res.tower);
                    break;
                case StageKind::rigidity:
                    res.tower = stage_rigidity(res.tower, st.r);
                    break;
                case StageKind::cut_stack:
                    res.tower = cut_stack_each(res.tower, st.k);
                    break;
                case StageKind::swap:
                    res.tower = run_swap_block(res.tower, st, caps, summary);
                    break;
            }
        } catch (const Error& e) {
            raise(e.kind(), "stage " + std::to_string(i) + " (" + stage_kind_name(st.kind) +
                                "): " + e.what());
        }
        std::snprintf(buf, sizeof buf, "%s k=%ld s=%ld r=%ld n=%ld -> %zu columns, height %ld",
                      stage_kind_name(st.kind).c_str(), st.k, st.s, st.r, st.n,
                      res.tower.columns.size(), res.tower.min_height());
        res.tower.stage_log.push_back(buf);
        summary.desc = buf;
        summary.columns = res.tower.columns.size();
        summary.height = res.tower.min_height();
        summary.measure = res.tower.total_measure();
        res.any_cap_hit = res.any_cap_hit || summary.capped;
        res.stages.push_back(summary);
        res.snapshots.push_back(res.tower);
    }
    return res;
}

// --- block-process names ------------------------------------------------------

WeightedNames ics_block_names(const std::vector<uint8_t>& w1, const std::vector<uint8_t>& w2,
                              uint32_t alphabet, long s, long n, long entry_cap) {
    const long ell = static_cast<long>(w1.size());
    require(ell >= 1 && w2.size() == w1.size(), ErrorKind::contract,
            "ics_block_names: generator words must be nonempty and equal length");
    require(s >= 1, ErrorKind::contract, "ics_block_names: s must be >= 1");
    require(n >= 1, ErrorKind::contract, "ics_block_names: n must be >= 1");
    const BigInt height = BigInt(ell) << static_cast<unsigned>(s);  // H = 2^s * ell
    require(BigInt(n) <= height, ErrorKind::contract, "ics_block_names: n exceeds tower height");

    // Entry count check: sum over phases of 2^(blocks spanned).
    double entries_est = 0;
    for (long phi = 0; phi < ell; ++phi) {
        const long blocks = (phi + n - 1) / ell + 1;
        require(blocks <= 62, ErrorKind::resource, "ics_block_names: window spans too many blocks");
        entries_est += std::pow(2.0, static_cast<double>(blocks));
    }
    require(entries_est <= static_cast<double>(entry_cap), ErrorKind::resource,
            "ics_block_names: entry count exceeds cap");

    NamesBuilder builder;
    std::vector<uint8_t> word(static_cast<size_t>(n));
    for (long phi = 0; phi < ell; ++phi) {
        // Offsets j = q*ell + phi, 0 <= j <= H-n.
        const BigInt top = height - n - phi;
        if (top < 0) continue;
        const BigInt q_count = top / ell + 1;
        const long blocks = (phi + n - 1) / ell + 1;
        const Rational mass(q_count, (BigInt(1) << static_cast<unsigned>(blocks)) * height);
        for (uint64_t p = 0; p < (uint64_t{1} << blocks); ++p) {
            for (long i = 0; i < n; ++i) {
                const long b = (phi + i) / ell;
                const long off = (phi + i) % ell;
                word[static_cast<size_t>(i)] =
                    ((p >> b) & 1) ? w2[static_cast<size_t>(off)] : w1[static_cast<size_t>(off)];
            }
            builder.add(Codeword(word, alphabet), mass);
        }
    }
    return builder.finalize(Rational(n - 1, height));
}

// --- scenarios ----------------------------------------------------------------

std::string thue_morse_word(long length) {
    require(length >= 1, ErrorKind::contract, "thue_morse_word: length must be >= 1");
    std::string out;
    out.reserve(static_cast<size_t>(length));
    for (long i = 0; i < length; ++i)
        out += (std::popcount(static_cast<uint64_t>(i)) & 1) ? '1' : '0';
    return out;
}

Prop32Scenario scenario_prop32(long h, long k1, long k2, const std::string& base_word) {
    require(h >= 1 && k1 >= 1 && k2 >= 1, ErrorKind::contract,
            "scenario_prop32: h, k1, k2 must be >= 1");
    Prop32Scenario sc;
    sc.h = h;
    sc.k1 = k1;
    sc.k2 = k2;
    sc.n = k1 * h;
    sc.claim_S_at_most = h;
    sc.eta_supported = Rational(2, k2);
    const std::string word = base_word.empty() ? thue_morse_word(h) : base_word;
    require(static_cast<long>(word.size()) == h, ErrorKind::contract,
            "scenario_prop32: base word length must equal h");
    sc.initial = make_initial_tower({{word, Rational(1, h)}});
    sc.schedule.provenance =
        "prop32 rank-one cut-stack: h=" + std::to_string(h) + " k1=" + std::to_string(k1) +
        " k2=" + std::to_string(k2) + " n=" + std::to_string(sc.n) +
        " claim S<=h, supports eta>" + rational_to_string(sc.eta_supported);
    sc.schedule.stages.push_back(StageDesc{StageKind::cut_stack, k1 * k2, 0, 0, 0});
    return sc;
}

Prop43Scenario scenario_prop43(long h, long k, const RateFamily& rate, double t,
                               const Rational& eps, const Rational& delta, const Rational& eta,
                               const Prop43Caps& caps, const std::string& base_word) {
    require(h >= 1, ErrorKind::contract, "scenario_prop43: h must be >= 1");
    require(k >= 4 && k % 2 == 0, ErrorKind::contract,
            "scenario_prop43: k must be even and >= 4");
    require(eta > 0 && eta < 1, ErrorKind::contract, "scenario_prop43: eta must be in (0,1)");

    Prop43Scenario sc;
    sc.h = h;
    sc.k = k;
    sc.ell = k * (h + 1);
    sc.t = t;
    sc.epsilon = eps;
    sc.delta = delta;
    sc.eta = eta;
    sc.rate = rate;

    const std::string word = base_word.empty() ? thue_morse_word(h) : base_word;
    require(static_cast<long>(word.size()) == h, ErrorKind::contract,
            "scenario_prop43: base word length must equal h");
    sc.initial = make_initial_tower({{word, Rational(1, h)}});

    // The two stage-produced generator words: W^k s^k and (W s)^k.
    {
        Tower two = stage_two_word(sc.initial, k);
        sc.word_c1 = two.columns[0].levels;
        sc.word_c2 = two.columns[1].levels;
        sc.d = normalized_hamming(Codeword(sc.word_c1, 2), Codeword(sc.word_c2, 2));
        require(sc.d > 0, ErrorKind::contract, "scenario_prop43: generator words coincide");
    }

    // beta = 2^(1/(8 k (h+1))); smallest r with beta^n > 2 a_n(t) at n = 2^r ell.
    sc.beta_log2 = 1.0 / (8.0 * static_cast<double>(sc.ell));
    long r = -1;
    for (long cand = 0; cand <= caps.r_max; ++cand) {
        const long n = sc.ell << cand;
        const double lhs = static_cast<double>(n) * sc.beta_log2;  // = 2^cand / 8
        const double rhs = 1.0 + rate.log2_value(n, t);
        if (lhs > rhs) {
            r = cand;
            sc.ineq_lhs_log2 = lhs;
            sc.ineq_rhs_log2 = rhs;
            break;
        }
    }
    require(r >= 0, ErrorKind::param_search,
            "scenario_prop43: no r <= cap satisfies beta^n > 2 a_n(t); rate grows too fast");
    sc.r_star = r;
    sc.n_star = sc.ell << r;

    // s > r with 2^(r-s) < eta^2.
    long s = r + 1;
    while (exact_pow2(r - s) >= eta * eta) ++s;
    sc.s_star = s;

    // Materialized rounds: requested cap, also limited by the column cap in
    // run_schedule; flag when the paper's s cannot be realized.
    sc.s_exec = std::min(sc.s_star, caps.s_exec_max);
    sc.s_capped = sc.s_exec < sc.s_star;
    sc.schedule.provenance = "prop43 two-word + ics: h=" + std::to_string(h) +
                             " k=" + std::to_string(k) + " beta=2^(1/" +
                             std::to_string(8 * sc.ell) + ") r*=" + std::to_string(sc.r_star) +
                             " n*=" + std::to_string(sc.n_star) + " s*=" + std::to_string(sc.s_star);
    sc.schedule.stages.push_back(StageDesc{StageKind::two_word, k, 0, 0, 0});
    sc.schedule.stages.push_back(StageDesc{StageKind::ics, 0, sc.s_exec, 0, 0});

    // Measurement point: smallest rho with an estimated name count safely
    // above a_n(t) and entries within the cap. Estimate: phase-0 patterns
    // alone give 2^m distinct names of near-uniform mass (m = 2^rho blocks),
    // so log2 S ~ m + log2(ell) - 2.
    long rho = -1;
    for (long cand = 1; cand <= caps.rho_max; ++cand) {
        const long m = 1L << cand;
        if (m + 1 > 61) break;
        const long n = m * sc.ell;
        const double est = static_cast<double>(m) + std::log2(static_cast<double>(sc.ell)) - 2.0;
        double entries = 0;
        for (long phi = 0; phi < sc.ell; ++phi)
            entries += std::pow(2.0, static_cast<double>((phi + n - 1) / sc.ell + 1));
        if (entries > static_cast<double>(caps.entry_cap)) break;
        if (est > rate.log2_value(n, t) + 1.0) {
            rho = cand;
            break;
        }
    }
    require(rho >= 0, ErrorKind::param_search,
            "scenario_prop43: no measurement point with estimated S > a_n(t) fits the entry cap");
    sc.rho_meas = rho;
    sc.n_meas = sc.ell << rho;
    return sc;
}

Prop43Measurement measure_prop43(const Prop43Scenario& sc) {
    Prop43Measurement m;
    m.n = sc.n_meas;
    // Virtual height uses the paper's s*, so the neglected mass matches the
    // construction the parameters were solved for.
    WeightedNames names =
        ics_block_names(sc.word_c1, sc.word_c2, 2, sc.s_star, sc.n_meas, 1L << 23);
    m.distinct_names = static_cast<long>(names.entries.size());
    m.cover = greedy_cover(names, sc.epsilon, sc.delta);
    m.a_n_log2 = sc.rate.log2_value(sc.n_meas, sc.t);
    m.s_exceeds_rate = std::log2(static_cast<double>(m.cover.count)) > m.a_n_log2;
    return m;
}

// --- family F ------------------------------------------------------------------

long solve_sk(double alpha_k, long k, const RateFamily& rate, double t_k, long s_min,
              long s_cap) {
    require(alpha_k > 0, ErrorKind::contract, "solve_sk: alpha_k must be positive");
    require(s_min >= 1, ErrorKind::contract, "solve_sk: s_min must be >= 1");
    if (k == 0) return s_min;  // right side is log2(0) = -inf: vacuous
    const double logk = std::log2(static_cast<double>(k));
    for (long s = s_min; s <= s_cap; ++s) {
        bool ok = true;
        // At n = 2^s and sampled larger n (subexponential rates keep the gap).
        for (long mult = 0; mult <= 4 && ok; ++mult) {
            const long n = 1L << std::min(s + mult, 62L);
            ok = static_cast<double>(n) * alpha_k > logk + rate.log2_value(n, t_k);
        }
        if (ok) return s;
    }
    raise(ErrorKind::param_search, "solve_sk: no s <= cap satisfies beta_k^n > k a_n(t_k)");
}

FamilyFScenario scenario_family_F(const Rational& eps, const std::vector<long>& r_seq,
                                  const std::vector<double>& t_seq, long K,
                                  const RateFamily& rate, long s_min, long s_cap) {
    require(eps > 0 && eps <= Rational(1, 100), ErrorKind::contract,
            "scenario_family_F: eps must be in (0, 1/100]");
    require(K >= 1, ErrorKind::contract, "scenario_family_F: K must be >= 1");
    require(static_cast<long>(r_seq.size()) >= K + 1, ErrorKind::contract,
            "scenario_family_F: r_seq must cover indices 0..K");
    require(static_cast<long>(t_seq.size()) >= K, ErrorKind::contract,
            "scenario_family_F: t_seq must cover indices 0..K-1");
    for (long r : r_seq)
        require(r >= 2, ErrorKind::contract, "scenario_family_F: r_k must be >= 2");

    FamilyFScenario f;
    f.eps = eps;
    f.initial = make_initial_tower({{"0", Rational(1, 2)}, {"1", Rational(1, 2)}});
    const double h3e = binary_entropy(3.0 * rat_to_double(eps));

    BigInt h = 1;  // h_0
    long sigma = 0;
    f.heights.push_back(h);
    for (long k = 0; k < K; ++k) {
        FamilyFRow row;
        row.k = k;
        row.r_k = r_seq[static_cast<size_t>(k)];
        row.t_k = t_seq[static_cast<size_t>(k)];
        row.h_k = h;
        row.sigma_k = sigma;
        row.alpha_k = std::exp2(static_cast<double>(sigma)) * (1.0 - h3e) /
                      (32.0 * static_cast<double>(r_seq[static_cast<size_t>(k + 1)]) *
                       static_cast<double>(row.r_k) * h.convert_to<double>());
        row.beta_k = std::exp2(row.alpha_k);
        row.s_k = solve_sk(row.alpha_k, k, rate, row.t_k, s_min, s_cap);
        {
            const long n = 1L << row.s_k;
            row.ineq_lhs_log2 = static_cast<double>(n) * row.alpha_k;
            row.ineq_rhs_log2 = (k == 0) ? -std::numeric_limits<double>::infinity()
                                          : std::log2(static_cast<double>(k)) +
                                                rate.log2_value(n, row.t_k);
        }
        row.separation_ok =
            binary_entropy(std::min(1.0, 2.0 * rat_to_double(eps) +
                                              std::exp2(-static_cast<double>(sigma)))) < h3e;
        f.rows.push_back(row);

        // Stage block and the height recursion: h_1 = 2^{s_0} (initial ics
        // alone), then h_{k+1} = 2^{s_k} r_k (2 h_k + 1).
        if (k == 0) {
            f.schedule.stages.push_back(StageDesc{StageKind::ics, 0, row.s_k, 0, 0});
            h = BigInt(1) << static_cast<unsigned>(row.s_k);
        } else {
            f.schedule.stages.push_back(StageDesc{StageKind::weak_mixing, 0, 0, 0, 0});
            f.schedule.stages.push_back(StageDesc{StageKind::rigidity, 0, 0, row.r_k, 0});
            f.schedule.stages.push_back(StageDesc{StageKind::ics, 0, row.s_k, 0, 0});
            h = (BigInt(1) << static_cast<unsigned>(row.s_k)) * row.r_k * (2 * h + 1);
        }
        sigma += row.s_k;
        f.heights.push_back(h);
    }
    f.schedule.provenance = "family F: eps=" + rational_to_string(eps) +
                            " K=" + std::to_string(K) + " rate=" + rate.describe();
    return f;
}

std::string family_f_to_csv(const FamilyFScenario& f, const std::string& header_comment) {
    std::string out;
    if (!header_comment.empty()) out += "# " + header_comment + "\n";
    out += "k,r_k,t_k,s_k,h_k,sigma_k,alpha_k,beta_k,ineq_lhs_log2,ineq_rhs_log2,separation_ok\n";
    char buf[256];
    for (const auto& r : f.rows) {
        std::snprintf(buf, sizeof buf, "%ld,%ld,%.6g,%ld,%s,%ld,%.12g,%.12g,%.6g,%.6g,%d", r.k,
                      r.r_k, r.t_k, r.s_k, r.h_k.str().c_str(), r.sigma_k, r.alpha_k, r.beta_k,
                      r.ineq_lhs_log2, r.ineq_rhs_log2, r.separation_ok ? 1 : 0);
        out += buf;
        out += "\n";
    }
    return out;
}

// --- prop61 ----------------------------------------------------------------------

Prop61Scenario scenario_prop61(const std::vector<long>& k_seq, const std::vector<long>& s_seq,
                               long stages, long h1, const std::string& base_word) {
    require(stages >= 1, ErrorKind::contract, "scenario_prop61: stages must be >= 1");
    require(static_cast<long>(k_seq.size()) >= stages &&
                static_cast<long>(s_seq.size()) >= stages,
            ErrorKind::contract, "scenario_prop61: k_seq and s_seq must cover every stage");
    require(h1 >= 1, ErrorKind::contract, "scenario_prop61: h1 must be >= 1");

    Prop61Scenario sc;
    const std::string word = base_word.empty() ? thue_morse_word(h1) : base_word;
    require(static_cast<long>(word.size()) == h1, ErrorKind::contract,
            "scenario_prop61: base word length must equal h1");
    // One column of height h1 divided into two equal halves.
    sc.initial = make_initial_tower({{word, Rational(1, 2 * h1)}, {word, Rational(1, 2 * h1)}});

    BigInt h = h1;
    sc.predicted_heights.push_back(h);
    for (long n = 1; n <= stages; ++n) {
        const long kn = k_seq[static_cast<size_t>(n - 1)];
        const long sn = s_seq[static_cast<size_t>(n - 1)];
        require(kn >= 1 && sn >= 1, ErrorKind::contract,
                "scenario_prop61: k_n and s_n must be >= 1");
        sc.schedule.stages.push_back(StageDesc{StageKind::swap, kn, sn, 0, n});
        // h_{n+1} = 2^(2^{s_n}) 2^{s_n} k_n (h_n + 1)
        h = (BigInt(1) << static_cast<unsigned>(1L << sn)) *
            (BigInt(1) << static_cast<unsigned>(sn)) * kn * (h + 1);
        sc.predicted_heights.push_back(h);
        sc.predicted_widths.emplace_back(Rational(n + 1, n + 2), Rational(1, n + 2));
    }
    sc.schedule.provenance = "prop61 swap construction: " + std::to_string(stages) + " stages";
    return sc;
}

}  // namespace cutstack
