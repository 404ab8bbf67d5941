// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
//
// Command-line front end: build towers from stage schedules, run covering /
// slow-entropy / entropy-rate measurements and lemma verification, emit CSV
// and optional SVG artifacts. One command per process; exit codes:
// 0 ok, 2 config/parse, 3 infeasible, 4 resource cap, 1 anything else.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cutstack/covers.hpp"
#include "cutstack/rates.hpp"
#include "cutstack/scenarios.hpp"
#include "cutstack/slow_entropy.hpp"
#include "cutstack/snapshot.hpp"
#include "cutstack/svg.hpp"
#include "cutstack/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cutstack;

namespace {

struct Ctx {
    json cfg;
    std::string cfg_text;
    std::string out_dir;
    uint64_t seed = 1;
    bool svg = false;
    bool timings = false;
    unsigned threads = 1;
    std::string stamp;  // "config_hash=... seed=..." embedded in every output
};

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_file(const Ctx& ctx, const std::string& name, const std::string& content) {
    fs::create_directories(ctx.out_dir);
    const fs::path path = fs::path(ctx.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::parse, "cannot write " + path.string());
    out << content;
    std::cout << "wrote " << path.string() << "\n";
}

Rational cfg_rational(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return parse_rational(fallback);
    if (j.at(key).is_number_integer()) return Rational(j.at(key).get<long>());
    return parse_rational(j.at(key).get<std::string>());
}

Tower initial_from_config(const json& cfg) {
    require(cfg.contains("initial"), ErrorKind::parse, "config: missing \"initial\" tower");
    const json& ji = cfg.at("initial");
    Tower t;
    t.alphabet_size = ji.value("alphabet_size", 2u);
    t.spacer_symbol = static_cast<uint8_t>(ji.value("spacer_symbol", 1));
    for (const auto& jc : ji.at("columns")) {
        Column c;
        const std::string word = jc.at("levels").get<std::string>();
        for (char ch : word)
            c.levels.push_back(Codeword::from_string(std::string(1, ch), t.alphabet_size).symbol(0));
        c.width = parse_rational(jc.at("width").get<std::string>());
        t.columns.push_back(std::move(c));
    }
    t.check_valid();
    return t;
}

StageSchedule schedule_from_config(const json& cfg) {
    if (cfg.contains("schedule_file")) {
        std::ifstream in(cfg.at("schedule_file").get<std::string>());
        require(in.good(), ErrorKind::parse,
                "config: cannot open schedule_file " +
                    cfg.at("schedule_file").get<std::string>());
        std::stringstream ss;
        ss << in.rdbuf();
        return schedule_from_json(ss.str());
    }
    require(cfg.contains("schedule"), ErrorKind::parse, "config: missing \"schedule\"");
    return schedule_from_json(cfg.at("schedule").dump());
}

ExecCaps caps_from_config(const json& cfg) {
    ExecCaps caps;
    if (cfg.contains("caps")) {
        caps.max_columns = cfg.at("caps").value("max_columns", caps.max_columns);
        caps.max_repeat = cfg.at("caps").value("max_repeat", caps.max_repeat);
    }
    return caps;
}

CoverCaps cover_caps_from_config(const json& cfg) {
    CoverCaps caps;
    if (cfg.contains("caps")) {
        caps.exact_candidates = cfg.at("caps").value("exact_candidates", caps.exact_candidates);
        caps.oracle_words = cfg.at("caps").value("oracle_words", caps.oracle_words);
    }
    return caps;
}

RateFamily rate_from_config(const json& cfg) {
    if (!cfg.contains("rate")) return RateFamily::polynomial();
    const json& jr = cfg.at("rate");
    const std::string kind = jr.value("kind", "poly");
    if (kind == "poly") return RateFamily::polynomial();
    if (kind == "exp2") return RateFamily::exp_sublinear(base_seq_from_name(jr.value("base", "sqrt")));
    if (kind == "tabulated") {
        std::vector<std::pair<long, double>> rows;
        for (const auto& r : jr.at("rows")) rows.emplace_back(r.at(0).get<long>(), r.at(1).get<double>());
        return RateFamily::tabulated(std::move(rows));
    }
    raise(ErrorKind::parse, "config: unknown rate kind '" + kind + "'");
}

std::vector<long> n_grid_from_config(const json& cfg) {
    require(cfg.contains("n_grid"), ErrorKind::parse, "config: missing \"n_grid\"");
    std::vector<long> grid = cfg.at("n_grid").get<std::vector<long>>();
    require(!grid.empty(), ErrorKind::parse, "config: n_grid must be nonempty");
    return grid;
}

std::vector<CoverRow> run_cover(const Ctx& ctx) {
    const Tower initial = initial_from_config(ctx.cfg);
    const StageSchedule schedule = schedule_from_config(ctx.cfg);
    const ExecResult exec = run_schedule(initial, schedule, caps_from_config(ctx.cfg));
    std::vector<Tower> stages = exec.snapshots;
    if (stages.empty()) stages.push_back(exec.tower);
    const Rational eps = cfg_rational(ctx.cfg, "epsilon", "1/10");
    const Rational delta = cfg_rational(ctx.cfg, "delta", "1/10");
    require(eps > 0 && eps < 1 && delta > 0 && delta < 1, ErrorKind::parse,
            "config: epsilon and delta must lie in (0,1)");
    const bool strict = ctx.cfg.value("strict_cover", false);
    return covering_curve(stages, n_grid_from_config(ctx.cfg), eps, delta,
                          cover_caps_from_config(ctx.cfg), ctx.timings, !strict);
}

// --- subcommands -------------------------------------------------------------

void cmd_build(const Ctx& ctx) {
    const Tower initial = initial_from_config(ctx.cfg);
    const StageSchedule schedule = schedule_from_config(ctx.cfg);
    const ExecResult exec = run_schedule(initial, schedule, caps_from_config(ctx.cfg));
    write_file(ctx, "tower.json", snapshot_to_string(exec.tower));
    std::string csv = "# cutstack build " + ctx.stamp + "\n";
    csv += "stage,desc,columns,height,measure,capped,pre_stack_columns\n";
    for (const auto& s : exec.stages) {
        csv += std::to_string(s.index) + ",\"" + s.desc + "\"," + std::to_string(s.columns) + "," +
               std::to_string(s.height) + "," + rational_to_string(s.measure) + "," +
               (s.capped ? "1" : "0") + "," + std::to_string(s.pre_stack_columns) + "\n";
    }
    write_file(ctx, "stages.csv", csv);
    if (exec.any_cap_hit) std::cout << "note: at least one stage hit a desk-scale cap\n";
}

void cmd_cover(const Ctx& ctx) {
    const auto rows = run_cover(ctx);
    write_file(ctx, "cover.csv", cover_rows_to_csv(rows, "cutstack cover " + ctx.stamp));
}

void cmd_slowent(const Ctx& ctx) {
    const auto rows = run_cover(ctx);
    const RateFamily rate = rate_from_config(ctx.cfg);
    std::vector<double> t_grid = ctx.cfg.value("t_grid", std::vector<double>{1.0, 2.0});
    const CurveReport report = slow_entropy_curves(rows, rate, t_grid);
    write_file(ctx, "cover.csv", cover_rows_to_csv(rows, "cutstack slowent " + ctx.stamp));
    write_file(ctx, "slowent.csv",
               curve_report_to_csv(report, "cutstack slowent rate=" + rate.describe() + " " + ctx.stamp));
    if (ctx.svg) {
        std::vector<SvgSeries> series;
        for (double t : t_grid) {
            SvgSeries s;
            s.label = "t=" + std::to_string(t);
            for (const auto& r : report.rows)
                if (r.t == t) s.points.emplace_back(static_cast<double>(r.n), r.ratio_log2);
            series.push_back(std::move(s));
        }
        write_file(ctx, "slowent.svg",
                   svg_line_chart(series, "S / a_n(t), log2", "n", "log2 ratio"));
    }
}

void cmd_blume(const Ctx& ctx) {
    const Tower initial = initial_from_config(ctx.cfg);
    const StageSchedule schedule = schedule_from_config(ctx.cfg);
    const ExecResult exec = run_schedule(initial, schedule, caps_from_config(ctx.cfg));
    std::vector<Tower> stages = exec.snapshots;
    if (stages.empty()) stages.push_back(exec.tower);
    const BaseSeq base = base_seq_from_name(ctx.cfg.value("blume_base", "sqrt"));
    const CurveReport report = blume_curve(stages, base, n_grid_from_config(ctx.cfg));
    write_file(ctx, "blume.csv",
               curve_report_to_csv(report, "cutstack blume a_n=" + base_seq_name(base) + " " + ctx.stamp));
    if (ctx.svg) {
        SvgSeries s;
        s.label = "H(P_n)/a_n";
        for (const auto& r : report.rows) s.points.emplace_back(static_cast<double>(r.n), r.ratio);
        write_file(ctx, "blume.svg", svg_line_chart({s}, "entropy growth vs a_n", "n", "ratio"));
    }
}

void cmd_verify(const Ctx& ctx) {
    VerifyCaps caps;
    std::vector<Rational> eps_grid = {Rational(1, 20), Rational(1, 10), Rational(1, 5)};
    std::vector<Rational> theta_grid = {Rational(0), Rational(1, 10)};
    if (ctx.cfg.contains("verify")) {
        const json& jv = ctx.cfg.at("verify");
        caps.max_len = jv.value("max_len", caps.max_len);
        caps.max_m = jv.value("max_m", caps.max_m);
        caps.oracle_words = jv.value("oracle_words", caps.oracle_words);
        if (jv.contains("eps_grid")) {
            eps_grid.clear();
            for (const auto& e : jv.at("eps_grid")) eps_grid.push_back(parse_rational(e.get<std::string>()));
        }
        if (jv.contains("theta_grid")) {
            theta_grid.clear();
            for (const auto& e : jv.at("theta_grid")) theta_grid.push_back(parse_rational(e.get<std::string>()));
        }
    }
    const GridSummary summary = lemma1_grid(eps_grid, theta_grid, caps, ctx.threads);
    write_file(ctx, "verify.csv",
               lemma_reports_to_csv(summary.reports, "cutstack verify " + ctx.stamp));
    std::cout << "lemma1 grid: " << summary.passes << " pass, " << summary.failures << " fail, "
              << summary.vacuous << " vacuous, " << summary.inapplicable << " inapplicable, "
              << summary.skipped << " skipped (precondition)\n";
    require(summary.failures == 0, ErrorKind::contract, "verify: grid reported violations");
}

void cmd_scenario(const Ctx& ctx) {
    require(ctx.cfg.contains("scenario"), ErrorKind::parse, "config: missing \"scenario\"");
    const json& js = ctx.cfg.at("scenario");
    const std::string name = js.value("name", "");
    char buf[512];
    if (name == "prop32") {
        const auto sc = scenario_prop32(js.value("h", 10L), js.value("k1", 2L), js.value("k2", 6L),
                                        js.value("base_word", std::string()));
        write_file(ctx, "schedule.json", schedule_to_json(sc.schedule));
        write_file(ctx, "initial.json", snapshot_to_string(sc.initial));
        std::snprintf(buf, sizeof buf, "h,k1,k2,n,claim_S_at_most,eta_supported\n%ld,%ld,%ld,%ld,%ld,%s\n",
                      sc.h, sc.k1, sc.k2, sc.n, sc.claim_S_at_most,
                      rational_to_string(sc.eta_supported).c_str());
        write_file(ctx, "scenario.csv", "# cutstack scenario prop32 " + ctx.stamp + "\n" + buf);
    } else if (name == "prop43") {
        Prop43Caps caps;
        caps.s_exec_max = js.value("s_exec_max", caps.s_exec_max);
        const auto sc = scenario_prop43(
            js.value("h", 2L), js.value("k", 4L), rate_from_config(ctx.cfg), js.value("t", 2.0),
            cfg_rational(js, "epsilon", "1/256"), cfg_rational(js, "delta", "1/10"),
            cfg_rational(js, "eta", "1/100"), caps, js.value("base_word", std::string()));
        const auto meas = measure_prop43(sc);
        write_file(ctx, "schedule.json", schedule_to_json(sc.schedule));
        write_file(ctx, "initial.json", snapshot_to_string(sc.initial));
        std::string csv = "# cutstack scenario prop43 " + ctx.stamp + "\n";
        csv += "h,k,ell,d,beta_log2,r_star,n_star,ineq_lhs_log2,ineq_rhs_log2,s_star,s_exec,"
               "s_capped,n_meas,distinct_names,S,a_n_log2,S_exceeds_rate\n";
        std::snprintf(buf, sizeof buf,
                      "%ld,%ld,%ld,%s,%.12g,%ld,%ld,%.6g,%.6g,%ld,%ld,%d,%ld,%ld,%ld,%.6g,%d\n",
                      sc.h, sc.k, sc.ell, rational_to_string(sc.d).c_str(), sc.beta_log2,
                      sc.r_star, sc.n_star, sc.ineq_lhs_log2, sc.ineq_rhs_log2, sc.s_star,
                      sc.s_exec, sc.s_capped ? 1 : 0, meas.n, meas.distinct_names,
                      meas.cover.count, meas.a_n_log2, meas.s_exceeds_rate ? 1 : 0);
        write_file(ctx, "scenario.csv", csv + buf);
    } else if (name == "family_f") {
        const long K = js.value("K", 3L);
        std::vector<long> r_seq;
        std::vector<double> t_seq;
        if (js.contains("r_seq")) r_seq = js.at("r_seq").get<std::vector<long>>();
        else for (long k = 0; k <= K; ++k) r_seq.push_back(k + 2);
        if (js.contains("t_seq")) t_seq = js.at("t_seq").get<std::vector<double>>();
        else for (long k = 0; k < K; ++k) t_seq.push_back(static_cast<double>(k + 1));
        const auto sc = scenario_family_F(cfg_rational(js, "eps", "1/100"), r_seq, t_seq, K,
                                          rate_from_config(ctx.cfg), js.value("s_min", 1L),
                                          js.value("s_cap", 64L));
        write_file(ctx, "schedule.json", schedule_to_json(sc.schedule));
        write_file(ctx, "initial.json", snapshot_to_string(sc.initial));
        write_file(ctx, "scenario.csv", family_f_to_csv(sc, "cutstack scenario family_f " + ctx.stamp));
    } else if (name == "prop61") {
        const long stages = js.value("stages", 2L);
        std::vector<long> k_seq = js.value("k_seq", std::vector<long>{});
        std::vector<long> s_seq = js.value("s_seq", std::vector<long>{});
        if (k_seq.empty()) k_seq.assign(static_cast<size_t>(stages), 1);
        if (s_seq.empty()) s_seq.assign(static_cast<size_t>(stages), 1);
        const auto sc = scenario_prop61(k_seq, s_seq, stages, js.value("h1", 1L),
                                        js.value("base_word", std::string()));
        write_file(ctx, "schedule.json", schedule_to_json(sc.schedule));
        write_file(ctx, "initial.json", snapshot_to_string(sc.initial));
        std::string csv = "# cutstack scenario prop61 " + ctx.stamp + "\n";
        csv += "stage,k_n,s_n,predicted_height,family1_width,family2_width\n";
        for (long n = 1; n <= stages; ++n) {
            csv += std::to_string(n) + "," + std::to_string(k_seq[static_cast<size_t>(n - 1)]) +
                   "," + std::to_string(s_seq[static_cast<size_t>(n - 1)]) + "," +
                   sc.predicted_heights[static_cast<size_t>(n)].str() + "," +
                   rational_to_string(sc.predicted_widths[static_cast<size_t>(n - 1)].first) + "," +
                   rational_to_string(sc.predicted_widths[static_cast<size_t>(n - 1)].second) + "\n";
        }
        write_file(ctx, "scenario.csv", csv);
    } else {
        raise(ErrorKind::parse, "config: unknown scenario '" + name + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cutting-and-stacking construction simulator and slow-entropy toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    Ctx ctx;
    const char* env_out = std::getenv("CUTSTACK_OUT");
    ctx.out_dir = env_out ? env_out : ".";

    app.add_option("-c,--config", config_path, "JSON config file")->required();
    app.add_option("-o,--out", ctx.out_dir, "output directory (default $CUTSTACK_OUT or .)");
    app.add_option("--seed", ctx.seed, "seed override");
    app.add_option("--threads", ctx.threads, "worker threads for grid verification");
    app.add_flag("--svg", ctx.svg, "also emit SVG charts");
    app.add_flag("--timings", ctx.timings,
                 "record wall-clock runtime_ms (breaks byte-identical reruns)");

    auto* build = app.add_subcommand("build", "execute a stage schedule, write tower snapshot");
    auto* cover = app.add_subcommand("cover", "empirical covering numbers S_P(T,n,eps,delta)");
    auto* slowent = app.add_subcommand("slowent", "covering numbers against a rate family");
    auto* blume = app.add_subcommand("blume", "entropy growth H(P_n) against a base sequence");
    auto* verify = app.add_subcommand("verify", "brute-force covering-bound grid");
    auto* scenario = app.add_subcommand("scenario", "generate a named construction recipe");

    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(config_path);
        require(in.good(), ErrorKind::parse, "cannot open config: " + config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        ctx.cfg_text = ss.str();
        try {
            ctx.cfg = json::parse(ctx.cfg_text);
        } catch (const json::parse_error& e) {
            raise(ErrorKind::parse, std::string("config: ") + e.what());
        }
        if (ctx.cfg.contains("seed") && !app.count("--seed")) ctx.seed = ctx.cfg.at("seed").get<uint64_t>();
        char stamp[64];
        std::snprintf(stamp, sizeof stamp, "config_hash=%016llx seed=%llu",
                      static_cast<unsigned long long>(fnv1a64(ctx.cfg_text)),
                      static_cast<unsigned long long>(ctx.seed));
        ctx.stamp = stamp;

        if (build->parsed()) cmd_build(ctx);
        else if (cover->parsed()) cmd_cover(ctx);
        else if (slowent->parsed()) cmd_slowent(ctx);
        else if (blume->parsed()) cmd_blume(ctx);
        else if (verify->parsed()) cmd_verify(ctx);
        else if (scenario->parsed()) cmd_scenario(ctx);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::parse: return 2;
            case ErrorKind::infeasible: return 3;
            case ErrorKind::resource: return 4;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
