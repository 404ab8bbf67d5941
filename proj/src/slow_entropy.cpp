// Licensed under the terms of the Apache 2.0 license. See LICENSE in the project root.
#include "cutstack/slow_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "cutstack/errors.hpp"

namespace cutstack {

std::string trend_name(Trend t) {
    switch (t) {
        case Trend::rising: return "rising";
        case Trend::flat: return "flat";
        case Trend::falling: return "falling";
    }
    return "?";
}

namespace {

constexpr double kTrendDeadBand = 0.01;

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0) return 0;
    return (n * sxy - sx * sy) / den;
}

Trend classify(const std::vector<long>& ns, const std::vector<double>& log_ratios) {
    if (ns.size() < 2) return Trend::flat;
    const size_t start = ns.size() / 2;
    std::vector<double> x, y;
    for (size_t i = start; i < ns.size(); ++i) {
        x.push_back(static_cast<double>(i));
        y.push_back(log_ratios[i]);
    }
    if (x.size() < 2) return Trend::flat;
    const double slope = ls_slope(x, y);
    if (slope > kTrendDeadBand) return Trend::rising;
    if (slope < -kTrendDeadBand) return Trend::falling;
    return Trend::flat;
}

constexpr const char* kTrendNote =
    "trend = sign of least-squares slope of log2(ratio) over the top half of the n-grid "
    "(dead band 0.01); empirical trend on the computed range, not a limit";

}  // namespace

CurveReport slow_entropy_curves(const std::vector<CoverRow>& cover_table, const RateFamily& rate,
                                const std::vector<double>& t_grid) {
    CurveReport report;
    report.note = kTrendNote;
    for (double t : t_grid) {
        std::vector<long> ns;
        std::vector<double> log_ratios;
        for (const auto& row : cover_table) {
            CurveRow r;
            r.n = row.n;
            r.t = t;
            r.value = static_cast<double>(row.S);
            r.rate_log2 = rate.log2_value(row.n, t);
            r.rate = std::exp2(r.rate_log2);
            r.ratio_log2 = std::log2(r.value) - r.rate_log2;
            r.ratio = r.value / r.rate;
            report.rows.push_back(r);
            ns.push_back(row.n);
            log_ratios.push_back(r.ratio_log2);
        }
        report.trends.emplace_back(t, classify(ns, log_ratios));
    }
    return report;
}

double blume_entropy(const WeightedNames& names) {
    require(!names.entries.empty(), ErrorKind::contract, "blume_entropy: empty distribution");
    const Rational defined = names.defined_mass();
    require(defined > 0, ErrorKind::contract, "blume_entropy: zero defined mass");
    if (names.neglected_mass > Rational(1, 100))
        std::cerr << "[cutstack] blume_entropy: neglected mass "
                  << rational_to_string(names.neglected_mass)
                  << " exceeds 1%; entropy computed on the defined part only\n";
    double h = 0;
    for (const auto& [w, m] : names.entries) {
        (void)w;
        const double p = rat_to_double(m / defined);
        if (p > 0) h -= p * std::log2(p);
    }
    return h;
}

CurveReport blume_curve(const std::vector<Tower>& stages, BaseSeq a,
                        const std::vector<long>& n_grid) {
    require(!stages.empty(), ErrorKind::contract, "blume_curve: no stage towers");
    CurveReport report;
    report.note = kTrendNote;
    std::vector<long> ns;
    std::vector<double> log_ratios;
    for (long n : n_grid) {
        size_t pick = stages.size() - 1;
        for (size_t i = 0; i < stages.size(); ++i) {
            if (stages[i].min_height() >= std::max(2 * n, n + 1)) {
                pick = i;
                break;
            }
        }
        require(n <= stages[pick].min_height(), ErrorKind::contract,
                "blume_curve: n exceeds every stage tower's height");
        const WeightedNames names = name_distribution(stages[pick], n);
        CurveRow r;
        r.n = n;
        r.t = 1.0;
        r.value = blume_entropy(names);
        r.rate = base_seq_value(a, n);
        r.rate_log2 = std::log2(r.rate);
        r.ratio = r.value / r.rate;
        r.ratio_log2 = std::log2(r.value) - r.rate_log2;
        report.rows.push_back(r);
        ns.push_back(n);
        log_ratios.push_back(r.ratio_log2);
    }
    report.trends.emplace_back(1.0, classify(ns, log_ratios));
    return report;
}

Prop62Report prop62_check(const WeightedNames& names, double a_n, double t) {
    require(!names.entries.empty(), ErrorKind::contract, "prop62_check: empty distribution");
    require(a_n > 0 && t > 0, ErrorKind::domain, "prop62_check: a_n and t must be positive");
    Prop62Report rep;
    rep.t_an = t * a_n;
    rep.entropy = blume_entropy(names);

    const Rational defined = names.defined_mass();
    const double threshold_log2 = -rep.t_an;  // masses below 2^(-t a_n) form V_n
    Rational mu_vn = 0;
    long vprime = 0;
    for (const auto& [w, m] : names.entries) {
        (void)w;
        const double mass_log2 = rat_log2(m / defined);
        if (mass_log2 < threshold_log2) mu_vn += m / defined;
        else ++vprime;
    }
    rep.mu_vn = rat_to_double(mu_vn);
    rep.vprime_count = vprime;

    rep.ineq1_lhs = rep.entropy;
    rep.ineq1_rhs = rep.t_an * rep.mu_vn +
                    static_cast<double>(vprime) * rep.t_an * std::exp2(-rep.t_an);
    rep.ineq1_holds = rep.ineq1_lhs >= rep.ineq1_rhs - 1e-9;

    rep.ineq2_lhs = rep.mu_vn;
    rep.ineq2_rhs = rep.entropy / rep.t_an;
    rep.ineq2_holds = rep.ineq2_lhs <= rep.ineq2_rhs + 1e-9;
    return rep;
}

std::string curve_report_to_csv(const CurveReport& report, const std::string& header_comment) {
    std::string out;
    if (!header_comment.empty()) out += "# " + header_comment + "\n";
    out += "# " + report.note + "\n";
    out += "n,t,value,rate,ratio,trend\n";
    char buf[256];
    for (const auto& r : report.rows) {
        Trend trend = Trend::flat;
        for (const auto& [t, tr] : report.trends)
            if (t == r.t) trend = tr;
        std::snprintf(buf, sizeof buf, "%ld,%.6g,%.12g,%.12g,%.12g,%s", r.n, r.t, r.value, r.rate,
                      r.ratio, trend_name(trend).c_str());
        out += buf;
        out += "\n";
    }
    return out;
}

}  // namespace cutstack
